//! Large-`m` form of the matrix elements: `<m| rho |m-2r> ≈ h_r m^{N-1} q^{m+1/2}`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fermion::polynomial::build_fermion_polynomial;
use crate::model::{EffectiveOscillator, ModelParams};
use crate::numerics::Precision;

/// `h_r` for `r = -(N-1)..=(N-1)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HCoefficients {
    pub n_particles: usize,
    h: Vec<f64>,
}

impl HCoefficients {
    pub fn new(n_particles: usize, h: Vec<f64>) -> Result<Self> {
        if h.len() != 2 * n_particles - 1 {
            return Err(Error::Domain(format!(
                "expected {} coefficients for N = {n_particles}, got {}",
                2 * n_particles - 1,
                h.len()
            )));
        }
        Ok(HCoefficients { n_particles, h })
    }

    /// `h_r`, `|r| <= N-1`.
    pub fn get(&self, r: i64) -> f64 {
        self.h[(r + self.n_particles as i64 - 1) as usize]
    }

    /// `(r, h_r)` in ascending `r`.
    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        let off = self.n_particles as i64 - 1;
        self.h.iter().enumerate().map(move |(i, &v)| (i as i64 - off, v))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.h
    }
}

fn binom(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Asymptotic coefficients from the top-degree part (`ν = N-1`) of `F_N`.
///
/// `(X^a)[m][m-s] ≈ (L²/2)^{a/2} m^{a/2} binom(a, (a+s)/2)` for large `m`, so
/// `h_r = w_0 q^{-1/2} (L²/2)^{N-1} sum_{a+b=2(N-1)} c[N-1][b] sum_s binom(a,(a+s)/2) binom(b,(b+s-2r)/2) e^{βħΩ s}`.
pub fn h_coefficients(p: &ModelParams) -> Result<HCoefficients> {
    let n = p.n_particles();
    let poly = build_fermion_polynomial(p)?;
    let coeffs = poly.coeffs::<f64>(Precision::DOUBLE);
    if n == 1 {
        return HCoefficients::new(1, vec![coeffs[0][0]]);
    }
    let osc = EffectiveOscillator::<f64>::from_params(p, Precision::DOUBLE)?;
    if osc.is_infinite() {
        return Err(Error::Domain("asymptotic coefficients need nonzero coupling".into()));
    }
    let nu = n - 1;
    let top = &coeffs[nu];
    let beta = osc.beta_homega;
    let q = osc.boltzmann_q;
    let l2 = osc.length * osc.length;
    let w0 = std::f64::consts::PI.sqrt() * osc.length * (1.0 - q * q).sqrt();
    let prefactor = w0 / q.sqrt() * (0.5 * l2).powi(nu as i32);
    let rmax = nu as i64;
    let mut h = Vec::with_capacity(2 * nu + 1);
    for r in -rmax..=rmax {
        let mut acc = 0.0;
        for b in 0..=2 * nu {
            let a = 2 * nu - b;
            let mut inner = 0.0;
            let mut s = -(a as i64);
            while s <= a as i64 {
                let t = s - 2 * r;
                if t.abs() <= b as i64 && (t + b as i64) % 2 == 0 {
                    inner += binom(a, ((a as i64 + s) / 2) as usize)
                        * binom(b, ((b as i64 + t) / 2) as usize)
                        * (beta * s as f64).exp();
                }
                s += 2;
            }
            acc += top[b] * inner;
        }
        h.push(prefactor * acc);
    }
    HCoefficients::new(n, h)
}
