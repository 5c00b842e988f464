//! Exact prefactor polynomial F_N(x, y) of the fermionic kernel.
use harmonium::fermion::{build_fermion_polynomial, FermionPolynomial};
use harmonium::model::ModelParams;
use harmonium::numerics::Precision;
use rug::Rational;

fn main() -> harmonium::Result<()> {
    let n: usize = std::env::args().nth(1).map_or(3, |s| s.parse().expect("N"));
    let p = ModelParams::from_l_ratio(n, 0.8)?;
    let poly = build_fermion_polynomial(&p)?;
    println!("N = {n}, degree {}, common factor sqrt(sigma/pi), sigma = {}", poly.degree(), poly.sigma());
    for (nu, row) in poly.rational_coefficients().iter().enumerate() {
        for (mu, c) in row.iter().enumerate() {
            println!("  c[{nu}][{mu}] (x^{} y^{mu}) = {:.10e}", 2 * nu - mu, c.to_f64());
        }
    }

    // free case from rational inputs: A = 1, B = 0
    let free = FermionPolynomial::from_exponent(&Rational::from(1), &Rational::new(), 3)?;
    let c = free.coeffs::<f64>(Precision::DOUBLE);
    println!("free N=3: x^2y^2 {:.6}, x^2 {:.6}, xy {:.6}, 1 {:.6}", c[2][2], c[1][0], c[1][1], c[0][0]);
    println!("{}", free.to_json(Precision::new(64)?));
    Ok(())
}
