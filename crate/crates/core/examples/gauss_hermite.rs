//! Gauss-Hermite rules at double and 256-bit precision integrate Gaussian moments exactly.
use harmonium::numerics::{gauss_hermite, BigReal, Precision, Real};

fn main() -> harmonium::Result<()> {
    for n in [10, 100, 300] {
        let rule = gauss_hermite::<f64>(n, Precision::DOUBLE)?;
        let m0 = rule.integrate(|_| 1.0);
        let m2 = rule.integrate(|x| x * x);
        println!("{n:>3} points, f64: sum w = {:.3e} off sqrt(pi), sum w x^2 = {:.3e} off sqrt(pi)/2",
            m0 - std::f64::consts::PI.sqrt(), m2 - std::f64::consts::PI.sqrt() / 2.0);
    }
    let prec = Precision::new(256)?;
    let rule = gauss_hermite::<BigReal>(60, prec)?;
    let m10 = rule.integrate(|x| x.powi(10));
    // int x^10 e^{-x^2} = 945 sqrt(pi) / 32
    let exact = BigReal::from_i64(945, prec) * &BigReal::pi(prec).sqrt() / &BigReal::from_i64(32, prec);
    println!("60 points, 256 bits: x^10 moment error {:.3e}", (m10 - &exact).abs().to_f64());
    Ok(())
}
