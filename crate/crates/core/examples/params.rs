//! Derived constants for the couplings used throughout: l+/l- = 4/5, 1/2, 1/3.
use harmonium::cli::params_report;
use harmonium::model::{effective_oscillator_from_lengths, ModelParams};

fn main() -> harmonium::Result<()> {
    println!("{:>2} {:>8} {:>10} {:>10} {:>10} {:>10} {:>10}", "N", "l+/l-", "ND/mw2", "L_N", "bhO", "q", "bhO(len)");
    for n in [2, 3, 5] {
        for l in [0.8, 0.5, 1.0 / 3.0] {
            let p = ModelParams::from_l_ratio(n, l)?;
            let r = params_report(&p)?;
            let (_, beta) = effective_oscillator_from_lengths(&p);
            println!(
                "{n:>2} {l:>8.4} {:>10.4} {:>10.6} {:>10.6} {:>10.3e} {:>10.6}",
                r.coupling_ratio,
                r.length,
                r.beta_hbar_omega.unwrap_or(f64::INFINITY),
                r.q,
                beta.unwrap_or(f64::INFINITY)
            );
        }
    }
    Ok(())
}
