//! Gauss-Hermite quadrature for integrals of the form `f(u) exp(-u^2)` over the real line.

use super::real::{Precision, Real};
use crate::error::{Error, Result};

/// Nodes and weights of an `npoints` Gauss-Hermite rule, nodes ascending.
#[derive(Clone, Debug)]
pub struct QuadratureRule<T = f64> {
    nodes: Vec<T>,
    weights: Vec<T>,
}

impl<T: Real> QuadratureRule<T> {
    pub fn npoints(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    /// `sum_i w_i f(x_i)`.
    pub fn integrate<F: FnMut(&T) -> T>(&self, mut f: F) -> T {
        let mut acc = self.nodes[0].int(0);
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc.add_mul(w, &f(x));
        }
        acc
    }
}

const MAX_NEWTON: usize = 100;
const MAX_POINTS: usize = 500;

/// Orthonormal `p_n(z)` and `p_{n-1}(z)` (with the `pi^{-1/4}` factor, no Gaussian).
fn orthonormal_pair<T: Real>(n: usize, z: &T) -> (T, T) {
    let quarter_pi = T::pi(z.precision()).sqrt().sqrt();
    let mut p1 = z.int(1) / &quarter_pi;
    let mut p2 = z.int(0);
    for j in 0..n {
        let p3 = p2;
        p2 = p1;
        let jj = z.int(j as i64);
        let j1 = z.int(j as i64 + 1);
        let a = (z.int(2) / &j1).sqrt();
        let b = (jj / &j1).sqrt();
        p1 = a * z * &p2 - b * &p3;
    }
    (p1, p2)
}

/// Non-negative roots in f64, largest first: Golub-Welsch eigenvalues polished by Newton steps.
fn double_roots(n: usize) -> Result<Vec<f64>> {
    let mut jm = nalgebra::DMatrix::<f64>::zeros(n, n);
    for k in 1..n {
        let b = (k as f64 / 2.0).sqrt();
        jm[(k - 1, k)] = b;
        jm[(k, k - 1)] = b;
    }
    let mut eig: Vec<f64> = jm.symmetric_eigenvalues().iter().copied().filter(|&z| z > -1e-8).collect();
    eig.sort_by(|a, b| b.total_cmp(a));
    eig.truncate((n + 1) / 2);
    let nf = n as f64;
    let mut roots = Vec::with_capacity(eig.len());
    for (i, mut z) in eig.into_iter().enumerate() {
        let mut converged = false;
        for _ in 0..MAX_NEWTON {
            let (p1, p2) = orthonormal_pair(n, &z);
            let z1 = z;
            z = z1 - p1 / ((2.0 * nf).sqrt() * p2);
            if (z - z1).abs() <= 4.0 * f64::EPSILON * z.abs().max(1.0) {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::Convergence(format!(
                "Gauss-Hermite root {i} of {n} did not converge"
            )));
        }
        roots.push(z);
    }
    Ok(roots)
}

/// Gauss-Hermite rule with `npoints` nodes at the requested precision.
///
/// Roots are located in double precision and then polished by Newton steps
/// in `T`. In f64 the outermost weights of rules above roughly 360 points
/// drop below the smallest normal double and flush to zero.
pub fn gauss_hermite<T: Real>(npoints: usize, prec: Precision) -> Result<QuadratureRule<T>> {
    if npoints == 0 || npoints > MAX_POINTS {
        return Err(Error::Domain(format!(
            "Gauss-Hermite rule needs 1..={MAX_POINTS} points, got {npoints}"
        )));
    }
    let seeds = double_roots(npoints)?;
    let two_n = T::from_i64(2 * npoints as i64, prec).sqrt();
    let tol = T::from_f64(2f64.powi(prec.tolerance_log2(6)), prec);
    let mut half: Vec<(T, T)> = Vec::with_capacity(seeds.len());
    for seed in seeds {
        let mut z = T::from_f64(seed, prec);
        let mut converged = false;
        for _ in 0..MAX_NEWTON {
            let (p1, p2) = orthonormal_pair(npoints, &z);
            let step = p1 / &(two_n.clone() * &p2);
            z -= &step;
            if step.abs() <= tol.clone() * &z.abs().max_of(z.int(1)) {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::Convergence("Gauss-Hermite polishing stalled".into()));
        }
        let (_, p2) = orthonormal_pair(npoints, &z);
        let dp = two_n.clone() * &p2;
        let w = z.int(2) / &(dp.clone() * &dp);
        half.push((z, w));
    }
    // half holds the non-negative roots, largest first; an odd rule's middle root is exactly zero
    let odd = npoints % 2 == 1;
    if odd {
        if let Some(mid) = half.last_mut() {
            mid.0 = T::zero(prec);
        }
    }
    let mut nodes = Vec::with_capacity(npoints);
    let mut weights = Vec::with_capacity(npoints);
    for (x, w) in &half {
        nodes.push(if x.is_zero() { x.clone() } else { -x.clone() });
        weights.push(w.clone());
    }
    let skip = usize::from(odd);
    for (x, w) in half.iter().rev().skip(skip) {
        nodes.push(x.clone());
        weights.push(w.clone());
    }
    Ok(QuadratureRule { nodes, weights })
}
