//! The occupation jump at the Fermi level shrinks with the coupling but survives.
use harmonium::model::ModelParams;
use harmonium::numerics::{BigReal, Precision, Real};
use harmonium::pipeline::fermion_run;
use harmonium::spectrum::fermi_gap;

fn main() -> harmonium::Result<()> {
    let n = 5;
    let prec = Precision::new(256)?;
    for l in [1.0, 0.8, 0.5, 1.0 / 3.0] {
        let p = ModelParams::from_l_ratio(n, l)?;
        let run = fermion_run::<BigReal>(&p, 160, prec)?;
        let s = &run.spectrum;
        let top: Vec<String> = s.occupations[..n + 2].iter().map(|x| format!("{:.5}", x.to_f64())).collect();
        println!("l+/l- = {l:.4}  gap = {:.6}  lambda_0.. = {}", fermi_gap(s, n)?, top.join(" "));
    }
    Ok(())
}
