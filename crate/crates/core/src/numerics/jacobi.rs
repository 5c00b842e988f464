//! Cyclic Jacobi eigensolver for symmetric matrices.
//!
//! A pair `(p, q)` is rotated only while `|a_pq| > tol * sqrt(|a_pp a_qq|)`.
//! This relative threshold is what lets the solver resolve eigenvalues many
//! hundreds of decades below the largest one on graded matrices, where an
//! absolute threshold on the off-diagonal norm would stop far too early.

use super::matrix::SymmetricMatrix;
use super::real::Real;
use crate::error::{Error, Result};

/// Full sweeps allowed before giving up.
pub const MAX_SWEEPS: usize = 30;

/// Eigenvalues (unsorted) and the matching orthonormal eigenvectors.
#[derive(Clone, Debug)]
pub struct Eigen<T> {
    pub values: Vec<T>,
    /// `vectors[k]` belongs to `values[k]`.
    pub vectors: Vec<Vec<T>>,
    pub sweeps: usize,
}

fn pair_mut<T>(v: &mut [T], a: usize, b: usize) -> (&mut T, &mut T) {
    debug_assert_ne!(a, b);
    if a < b {
        let (lo, hi) = v.split_at_mut(b);
        (&mut lo[a], &mut hi[0])
    } else {
        let (lo, hi) = v.split_at_mut(a);
        (&mut hi[0], &mut lo[b])
    }
}

#[inline]
fn packed(dim: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i * (2 * dim - i + 1) / 2 + (j - i)
}

/// Diagonalizes `mat` by cyclic Jacobi rotations in fixed row order.
pub fn jacobi_eigh<T: Real>(mat: &SymmetricMatrix<T>) -> Result<Eigen<T>> {
    let n = mat.dim();
    let prec = mat.precision();
    for i in 0..n {
        for j in i..n {
            if !mat.get(i, j).is_finite() {
                return Err(Error::Domain(format!("non-finite matrix entry at ({i}, {j})")));
            }
        }
    }
    let mut a = mat.clone();
    let mut v: Vec<T> = (0..n * n)
        .map(|k| if k / n == k % n { T::one(prec) } else { T::zero(prec) })
        .collect();

    let tol = T::from_f64(2f64.powi(prec.tolerance_log2(4)), prec);
    let tol_sq = tol.clone() * &tol;
    // beyond this |theta| the small-angle form t = 1/(2 theta) is exact to working precision
    let theta_big = T::from_f64(2f64.powi(prec.bits() as i32 / 2 + 2), prec);
    let one = T::one(prec);
    let two = T::from_i64(2, prec);

    let mut sweeps = 0;
    loop {
        if sweeps == MAX_SWEEPS {
            return Err(Error::Convergence(format!(
                "Jacobi eigensolver did not converge in {MAX_SWEEPS} sweeps (dim {n})"
            )));
        }
        sweeps += 1;
        let mut rotations = 0usize;
        for p in 0..n {
            for q in p + 1..n {
                let data = a.packed_mut();
                let apq = data[packed(n, p, q)].clone();
                if apq.is_zero() {
                    continue;
                }
                let app = data[packed(n, p, p)].clone();
                let aqq = data[packed(n, q, q)].clone();
                let apq_sq = apq.clone() * &apq;
                if apq_sq <= tol_sq.clone() * &(app.clone() * &aqq).abs() {
                    continue;
                }
                rotations += 1;
                let theta = (aqq.clone() - &app) / &(two.clone() * &apq);
                let t = if theta.abs() > theta_big {
                    one.clone() / &(two.clone() * &theta)
                } else {
                    let r = one.clone() / &(theta.abs() + &(theta.clone() * &theta + &one).sqrt());
                    if theta.is_sign_negative() {
                        -r
                    } else {
                        r
                    }
                };
                let c = one.clone() / &(t.clone() * &t + &one).sqrt();
                let s = t.clone() * &c;
                let shift = t * &apq;
                data[packed(n, p, p)] = app - &shift;
                data[packed(n, q, q)] = aqq + &shift;
                data[packed(n, p, q)] = T::zero(prec);
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let (x, y) = pair_mut(data, packed(n, k, p), packed(n, k, q));
                    if x.is_zero() && y.is_zero() {
                        continue;
                    }
                    T::rotate(x, y, &c, &s);
                }
                for k in 0..n {
                    let (x, y) = pair_mut(&mut v, k * n + p, k * n + q);
                    if x.is_zero() && y.is_zero() {
                        continue;
                    }
                    T::rotate(x, y, &c, &s);
                }
            }
        }
        if rotations == 0 {
            break;
        }
    }

    let values = a.diagonal();
    let vectors = (0..n).map(|k| (0..n).map(|r| v[r * n + k].clone()).collect()).collect();
    Ok(Eigen { values, vectors, sweeps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::real::{BigReal, Precision};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_symmetric<T: Real>(n: usize, prec: Precision, seed: u64) -> SymmetricMatrix<T> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        SymmetricMatrix::from_fn(n, prec, |_, _| T::from_f64(rng.gen_range(-1.0..1.0), prec))
    }

    /// `||A - V diag(w) V^T||_F / ||A||_F` and the orthonormality defect.
    fn residuals<T: Real>(mat: &SymmetricMatrix<T>, e: &Eigen<T>) -> (f64, f64) {
        let n = mat.dim();
        let prec = mat.precision();
        let mut rec = T::zero(prec);
        let mut orth = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let mut s = T::zero(prec);
                let mut g = T::zero(prec);
                for k in 0..n {
                    s += &(e.vectors[k][i].clone() * &e.vectors[k][j] * &e.values[k]);
                    g += &(e.vectors[i][k].clone() * &e.vectors[j][k]);
                }
                let d = mat.get(i, j).clone() - &s;
                rec += &(d.clone() * &d);
                let target = if i == j { 1.0 } else { 0.0 };
                orth = orth.max((g.to_f64() - target).abs());
            }
        }
        ((rec.sqrt() / &mat.frobenius_norm()).to_f64(), orth)
    }

    #[test]
    fn diagonal_input_is_returned_unchanged() {
        let m = SymmetricMatrix::<f64>::from_fn(3, Precision::DOUBLE, |i, j| {
            if i == j {
                [3.0, 1.0, 2.0][i]
            } else {
                0.0
            }
        });
        let e = jacobi_eigh(&m).unwrap();
        assert_eq!(e.values, vec![3.0, 1.0, 2.0]);
        for k in 0..3 {
            for r in 0..3 {
                assert_eq!(e.vectors[k][r], if r == k { 1.0 } else { 0.0 });
            }
        }
    }

    #[test]
    fn two_by_two_swap() {
        let m = SymmetricMatrix::<f64>::from_fn(2, Precision::DOUBLE, |i, j| if i == j { 0.0 } else { 1.0 });
        let e = jacobi_eigh(&m).unwrap();
        let mut w = e.values.clone();
        w.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((w[0] + 1.0).abs() < 1e-15 && (w[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn random_reconstruction_double() {
        let m = random_symmetric::<f64>(20, Precision::DOUBLE, 7);
        let e = jacobi_eigh(&m).unwrap();
        let (rec, orth) = residuals(&m, &e);
        assert!(rec < 1e-12, "reconstruction {rec}");
        assert!(orth < 1e-13, "orthonormality {orth}");
    }

    #[test]
    fn random_reconstruction_multiprecision() {
        for (bits, n) in [(128u32, 30usize), (256, 50)] {
            let prec = Precision::new(bits).unwrap();
            let m = random_symmetric::<BigReal>(n, prec, bits as u64);
            let e = jacobi_eigh(&m).unwrap();
            let (rec, orth) = residuals(&m, &e);
            let bound = 2f64.powi(-(bits as i32) + 10);
            assert!(rec < bound, "{bits} bits: reconstruction {rec:e} vs {bound:e}");
            assert!(orth < 2f64.powi(-(bits as i32) + 8) * n as f64, "{bits} bits: orth {orth:e}");
        }
    }

    #[test]
    fn graded_matrix_small_eigenvalues_are_relatively_accurate() {
        // D M D with D spanning 300 decades; eigenvalues track the grading
        let prec = Precision::new(256).unwrap();
        let n = 12;
        let d: Vec<BigReal> = (0..n)
            .map(|i| BigReal::from_f64(-(60.0 * i as f64), prec).exp())
            .collect();
        let m = SymmetricMatrix::from_fn(n, prec, |i, j| {
            let core = if i == j { 1.0 } else { 0.1 / (1.0 + (i as f64 - j as f64).abs()) };
            BigReal::from_f64(core, prec) * &d[i] * &d[j]
        });
        let e = jacobi_eigh(&m).unwrap();
        let mut w: Vec<_> = e.values.iter().map(|x| x.ln().to_f64()).collect();
        w.sort_by(|a, b| b.partial_cmp(a).unwrap());
        for (i, lw) in w.iter().enumerate() {
            // eigenvalue i is within a few percent of d_i^2
            assert!((lw + 120.0 * i as f64).abs() < 0.05, "i={i}: ln lambda = {lw}");
        }
        // rerun at double precision agrees to high relative accuracy
        let hi = Precision::new(512).unwrap();
        let m2 = m.map(hi, |x| BigReal::from_float(rug::Float::with_val(512, x.as_float())));
        let e2 = jacobi_eigh(&m2).unwrap();
        let mut a: Vec<_> = e.values.clone();
        let mut b: Vec<_> = e2.values.clone();
        a.sort_by(|x, y| y.total_cmp_real(x));
        b.sort_by(|x, y| y.total_cmp_real(x));
        for (x, y) in a.iter().zip(&b) {
            let rel = ((BigReal::from_float(rug::Float::with_val(512, x.as_float())) - y) / y).abs();
            assert!(rel.to_f64() < 2f64.powi(-256 + 16), "rel {}", rel.to_f64());
        }
    }

    #[test]
    fn rejects_non_finite_entries() {
        let m = SymmetricMatrix::<f64>::from_fn(2, Precision::DOUBLE, |i, _| if i == 0 { f64::NAN } else { 1.0 });
        assert!(matches!(jacobi_eigh(&m), Err(Error::Domain(_))));
    }
}
