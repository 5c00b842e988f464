//! Truncated Mehler sums converge geometrically to the closed-form bosonic kernel.
use harmonium::boson::{boson_kernel, mehler_check};
use harmonium::model::ModelParams;

fn main() -> harmonium::Result<()> {
    let points = [(0.0, 0.0), (0.3, -0.7), (1.1, 0.9), (-2.0, 1.5)];
    for l in [0.8, 0.5, 1.0 / 3.0] {
        let p = ModelParams::from_l_ratio(3, l)?;
        println!("l+/l- = {l:.4}");
        for &(x, y) in &points {
            let k = boson_kernel(&p, x, y)?;
            let res: Vec<String> = [1, 5, 20, 60]
                .iter()
                .map(|&t| mehler_check(&p, x, y, t).map(|r| format!("{r:.1e}")))
                .collect::<harmonium::Result<_>>()?;
            println!("  rho({x:>4}, {y:>4}) = {k:.6e}  residual at 1/5/20/60 terms: {}", res.join(" "));
        }
    }
    Ok(())
}
