//! Ladder-operator assembly against direct two-dimensional quadrature.
use harmonium::cli::oracle_report;
use harmonium::fermion::quadrature_rdo_element;
use harmonium::model::ModelParams;

fn main() -> harmonium::Result<()> {
    for n in [1, 2, 3] {
        for c in [0.0, 1.44140625, 15.0, 80.0] {
            let p = ModelParams::from_coupling(n, c)?;
            let r = oracle_report(&p, 21, None)?;
            println!(
                "N = {n}, ND/mw2 = {c:>9.5}: max |assembled - quadrature| = {:.2e} at {:?} ({} points)",
                r.max_deviation, r.worst_element, r.npoints
            );
        }
    }
    let p = ModelParams::from_l_ratio(3, 0.8)?;
    let a = quadrature_rdo_element(&p, 1, 1, 40)?;
    let b = quadrature_rdo_element(&p, 1, 1, 80)?;
    println!("<1|rho|1> = {a:.15} (40 points), {b:.15} (80 points)");
    Ok(())
}
