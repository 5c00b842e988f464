//! Asymptotic laws of the fermionic spectrum: Boltzmann tail, Gaussian and exponential orbital decay.
//!
//! `cargo run --release --example decay_laws -- N m_max bits`
use harmonium::fermion::h_coefficients;
use harmonium::model::{effective_oscillator, ModelParams};
use harmonium::numerics::{BigReal, Precision};
use harmonium::pipeline::fermion_run;
use harmonium::spectrum::{alpha_candidates, decay_report};

fn main() -> harmonium::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n: usize = args.first().map_or(3, |s| s.parse().expect("N"));
    let m_max: usize = args.get(1).map_or(200, |s| s.parse().expect("m_max"));
    let bits: u32 = args.get(2).map_or(256, |s| s.parse().expect("bits"));

    let p = ModelParams::from_l_ratio(n, 0.8)?;
    let beta = effective_oscillator(&p)?.beta_homega;
    let run = fermion_run::<BigReal>(&p, m_max, Precision::new(bits)?)?;
    let h = h_coefficients(&p)?;
    let ks: Vec<usize> = [30, 100, 250].into_iter().filter(|&k| k < m_max / 2).collect();
    let rep = decay_report(&run.spectrum, n, &ks, Some(&h))?;

    println!("beta hbar Omega = {beta:.6}");
    for &(k, v) in rep.boltzmann_estimates.iter().filter(|(k, _)| k % 25 == 0) {
        println!("  Boltzmann estimate k = {k:>3}: {v:.5}");
    }
    let g_ref = beta / (4.0 * (n as f64 - 1.0));
    for (k, pl) in &rep.gaussian_plateaus {
        if let Some(pl) = pl {
            println!(
                "  Gaussian k = {k:>3}: tail mean {:.4}, extrapolated {:.4}, expected {g_ref:.4}",
                pl.tail_mean, pl.extrapolated
            );
        }
    }
    for (k, pl) in &rep.exp_plateaus {
        if let Some(pl) = pl {
            println!("  exponential k = {k:>3}: tail mean {:.4}, extrapolated {:.4}", pl.tail_mean, pl.extrapolated);
        }
    }
    let alpha = rep.alpha.expect("alpha");
    println!("  alpha = {:.5} {:+.2e}i", alpha.re, alpha.im);
    let re: Vec<String> = alpha_candidates(&h)?.iter().map(|a| format!("{:.4}", a.re)).collect();
    println!("  all roots (Re): {}", re.join(" "));
    Ok(())
}
