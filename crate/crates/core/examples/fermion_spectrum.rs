//! Natural occupations of the fermionic one-particle density operator.
//!
//! `cargo run --release --example fermion_spectrum -- N l_ratio m_max bits`
use harmonium::numerics::{BigReal, Precision, Real};
use harmonium::model::ModelParams;
use harmonium::pipeline::fermion_run;

fn main() -> harmonium::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n: usize = args.first().map_or(5, |s| s.parse().expect("N"));
    let l: f64 = args.get(1).map_or(0.8, |s| s.parse().expect("l+/l-"));
    let m_max: usize = args.get(2).map_or(120, |s| s.parse().expect("m_max"));
    let bits: u32 = args.get(3).map_or(256, |s| s.parse().expect("bits"));

    let p = ModelParams::from_l_ratio(n, l)?;
    let run = fermion_run::<BigReal>(&p, m_max, Precision::new(bits)?)?;
    let s = &run.spectrum;
    println!(
        "N = {n}, l+/l- = {l}, m_max = {m_max}, {bits} bits: assembly {:?}, diagonalization {:?}",
        run.assembly_time, run.diagonalization_time
    );
    println!("trace {:.3e} off N", (s.trace().to_f64() - n as f64).abs());
    for k in (0..s.len()).filter(|&k| k < n + 4 || k % 20 == 0) {
        let lam = &s.occupations[k];
        let lg = if lam.is_zero() { f64::NEG_INFINITY } else { lam.log10().to_f64() };
        println!("{k:>4} {:>5} dominant {:>4}  log10 lambda = {lg:>12.6}", s.parities[k].as_str(), s.dominant[k]);
    }
    Ok(())
}
