//! Bosonic occupations follow a Boltzmann law; checked here against a Hermite-basis diagonalization.
use harmonium::boson::{boson_kernel, boson_spectrum};
use harmonium::model::{effective_oscillator, ModelParams};
use harmonium::numerics::{gauss_hermite, hermite_function, jacobi_eigh, Precision, SymmetricMatrix};

fn main() -> harmonium::Result<()> {
    let p = ModelParams::from_l_ratio(3, 0.8)?;
    let spec = boson_spectrum(&p, 200)?;
    println!("q = {:.6e}", spec.q);
    for k in [0, 1, 2, 5, 10, 50, 100, 200] {
        println!("lambda_{k:<3} = {:.6e}  log10 = {:.4}", spec.occupations[k], spec.log10(k));
    }

    // discretize the kernel in the effective Hermite basis
    let osc = effective_oscillator(&p)?;
    let rule = gauss_hermite::<f64>(80, Precision::DOUBLE)?;
    let dim = 12;
    let l = osc.length;
    let (nodes, weights) = (rule.nodes(), rule.weights());
    let mut phi = vec![vec![0.0; nodes.len()]; dim];
    for (i, x) in nodes.iter().enumerate() {
        for (m, row) in phi.iter_mut().enumerate() {
            row[i] = hermite_function(m, &l, x) * (x * x).exp() * weights[i];
        }
    }
    let mut mat = SymmetricMatrix::<f64>::zeros(dim, Precision::DOUBLE);
    for m in 0..dim {
        for n in m..dim {
            let mut acc = 0.0;
            for (i, x) in nodes.iter().enumerate() {
                for (j, y) in nodes.iter().enumerate() {
                    acc += phi[m][i] * boson_kernel(&p, *x, *y)? * phi[n][j];
                }
            }
            mat.set(m, n, acc);
        }
    }
    let eig = jacobi_eigh(&mat)?;
    let mut vals = eig.values.clone();
    vals.sort_by(|a, b| b.total_cmp(a));
    for (k, v) in vals.iter().take(4).enumerate() {
        println!("diagonalized {k}: {v:.12e}  closed form {:.12e}", spec.occupations[k]);
    }
    Ok(())
}
