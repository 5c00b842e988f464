//! Bosonic one-particle density operator: kernel, Boltzmann spectrum, Mehler expansion.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{effective_oscillator, rdo_exponent, gaussian_exponent, ModelParams};
use crate::numerics::hermite::hermite_function;

/// Default number of occupations reported.
pub const DEFAULT_K_MAX: usize = 200;

/// `rho(x, y) = c exp(-a(x^2+y^2) + b x y)`.
pub fn boson_kernel(p: &ModelParams, x: f64, y: f64) -> Result<f64> {
    let r = rdo_exponent(&gaussian_exponent(p)?, p.n_particles())?;
    Ok(r.c_norm * (-r.a_small * (x * x + y * y) + r.b_small * (x * y)).exp())
}

/// Occupations `lambda_k = N (1-q) q^k`, `k = 0..=k_max`.
///
/// Values below the double range are kept through [`BosonSpectrum::ln_occupations`].
#[derive(Clone, Debug, Serialize)]
pub struct BosonSpectrum {
    pub occupations: Vec<f64>,
    pub ln_occupations: Vec<f64>,
    pub q: f64,
    pub n_particles: usize,
}

impl BosonSpectrum {
    pub fn k_max(&self) -> usize {
        self.occupations.len() - 1
    }

    /// `log10(lambda_k)`, `-inf` for exact zeros.
    pub fn log10(&self, k: usize) -> f64 {
        self.ln_occupations[k] / std::f64::consts::LN_10
    }

    /// `sum_{j <= k} lambda_j = N (1 - q^{k+1})`.
    pub fn partial_sum(&self, k: usize) -> f64 {
        let n = self.n_particles as f64;
        if self.q == 0.0 {
            return n;
        }
        -n * ((k as f64 + 1.0) * self.q.ln()).exp_m1()
    }
}

pub fn boson_spectrum(p: &ModelParams, k_max: usize) -> Result<BosonSpectrum> {
    if k_max < 1 {
        return Err(Error::Domain("k_max must be at least 1".into()));
    }
    let osc = effective_oscillator(p)?;
    let n = p.n_particles() as f64;
    let q = osc.boltzmann_q;
    let mut occupations = Vec::with_capacity(k_max + 1);
    let mut ln_occupations = Vec::with_capacity(k_max + 1);
    let lead = n * (1.0 - q);
    let mut lam = lead;
    for k in 0..=k_max {
        occupations.push(lam);
        ln_occupations.push(if q == 0.0 && k > 0 { f64::NEG_INFINITY } else { lead.ln() + k as f64 * q.ln() });
        lam *= q;
    }
    Ok(BosonSpectrum { occupations, ln_occupations, q, n_particles: p.n_particles() })
}

/// Relative residual of the truncated Mehler sum `N (1-q) sum_{k<terms} q^k phi_k(x) phi_k(y)`
/// against the closed-form kernel.
pub fn mehler_check(p: &ModelParams, x: f64, y: f64, terms: usize) -> Result<f64> {
    let osc = effective_oscillator(p)?;
    let q = osc.boltzmann_q;
    let l = osc.length;
    let n = p.n_particles() as f64;
    let mut sum = 0.0;
    let mut qk = 1.0;
    for k in 0..terms {
        sum += qk * hermite_function(k, &l, &x) * hermite_function(k, &l, &y);
        qk *= q;
        if qk == 0.0 {
            break;
        }
    }
    let kernel = boson_kernel(p, x, y)?;
    Ok((kernel - n * (1.0 - q) * sum).abs() / kernel.abs())
}
