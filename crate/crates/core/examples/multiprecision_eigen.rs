//! Cyclic Jacobi at 256 bits resolves eigenvalues spread over hundreds of decades.
use harmonium::numerics::{jacobi_eigh, BigReal, Precision, Real, SymmetricMatrix};

fn main() -> harmonium::Result<()> {
    let prec = Precision::new(256)?;
    let n = 12;
    // D^{1/2} K D^{1/2} with graded D spanning 1e-0 .. 1e-220
    let d: Vec<BigReal> = (0..n).map(|i| BigReal::from_i64(10, prec).powi(-20 * i as i32)).collect();
    let m = SymmetricMatrix::from_fn(n, prec, |i, j| {
        let k = if i == j { BigReal::from_i64(2, prec) } else { BigReal::from_f64(0.5f64.powi((j - i) as i32), prec) };
        k * &(d[i].clone() * &d[j]).sqrt()
    });
    let eig = jacobi_eigh(&m)?;
    println!("{} sweeps", eig.sweeps);
    let mut v: Vec<f64> = eig.values.iter().map(|x| x.log10().to_f64()).collect();
    v.sort_by(|a, b| b.total_cmp(a));
    for (i, x) in v.iter().enumerate() {
        println!("log10 lambda_{i:<2} = {x:>10.4}");
    }
    Ok(())
}
