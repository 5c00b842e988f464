//! Asymptotic decay laws of occupations and expansion coefficients.

use num_complex::Complex64;
use serde::Serialize;

use super::natural::NaturalSpectrum;
use crate::error::{Error, Result};
use crate::fermion::HCoefficients;
use crate::numerics::Real;

/// `-ln(λ_k k^{-(N-1)})/(k + 1/2)`, which tends to `βħΩ`.
pub fn boltzmann_exponent<T: Real>(spec: &NaturalSpectrum<T>, n_particles: usize, k: usize) -> Result<f64> {
    if k < 1 || k >= spec.len() {
        return Err(Error::Domain(format!("k = {k} outside 1..{}", spec.len())));
    }
    let lam = &spec.occupations[k];
    if spec.below_floor[k] || lam.is_zero() || lam.is_sign_negative() {
        return Err(Error::Underflow(format!("λ_{k} is below the precision floor")));
    }
    let ln = lam.ln().to_f64() - (n_particles as f64 - 1.0) * (k as f64).ln();
    Ok(-ln / (k as f64 + 0.5))
}

fn ln_abs_zeta<T: Real>(spec: &NaturalSpectrum<T>, k: usize, m: usize) -> Result<f64> {
    if k >= spec.len() || m >= spec.m_max() {
        return Err(Error::Domain(format!("(k, m) = ({k}, {m}) outside the spectrum")));
    }
    if m % 2 != spec.dominant[k] % 2 {
        return Err(Error::Domain(format!("m = {m} has the wrong parity for k = {k}")));
    }
    let z = spec.zeta(k, m).abs();
    if z <= spec.vector_floor() {
        return Err(Error::Underflow(format!("|ζ_{m}^({k})| is below the precision floor")));
    }
    Ok(z.ln().to_f64())
}

/// `-ln|ζ_m^{(k)}|/(m-k)^2` for `m > k`.
pub fn gaussian_decay<T: Real>(spec: &NaturalSpectrum<T>, k: usize, m: usize) -> Result<f64> {
    if m <= k {
        return Err(Error::Domain(format!("need m > k, got m = {m}, k = {k}")));
    }
    let d = (m - k) as f64;
    Ok(-ln_abs_zeta(spec, k, m)? / (d * d))
}

/// `-ln|ζ_m^{(k)}|/(k-m)` for `m < k`.
pub fn exponential_decay<T: Real>(spec: &NaturalSpectrum<T>, k: usize, m: usize) -> Result<f64> {
    if m >= k {
        return Err(Error::Domain(format!("need m < k, got m = {m}, k = {k}")));
    }
    Ok(-ln_abs_zeta(spec, k, m)? / (k - m) as f64)
}

/// `-ln|ζ_m^{(k)}|/(k-m)^2` for `m < k`, the normalization printed with the exponential-regime figure.
pub fn exponential_decay_quadratic<T: Real>(spec: &NaturalSpectrum<T>, k: usize, m: usize) -> Result<f64> {
    let e = exponential_decay(spec, k, m)?;
    Ok(e / (k - m) as f64)
}

/// A series `(x, y)` restricted to points where the estimate is resolvable.
pub type Series = Vec<(usize, f64)>;

/// Boltzmann estimates for all resolvable `k >= 1`.
pub fn boltzmann_series<T: Real>(spec: &NaturalSpectrum<T>, n_particles: usize) -> Series {
    (1..spec.len())
        .filter_map(|k| boltzmann_exponent(spec, n_particles, k).ok().map(|v| (k, v)))
        .collect()
}

/// Gaussian-decay estimates `(m - k, value)` for `m > k` of matching parity.
pub fn gaussian_series<T: Real>(spec: &NaturalSpectrum<T>, k: usize) -> Series {
    let parity = spec.dominant.get(k).map_or(k % 2, |d| d % 2);
    (k + 1..spec.m_max())
        .filter(|m| m % 2 == parity)
        .filter_map(|m| gaussian_decay(spec, k, m).ok().map(|v| (m - k, v)))
        .collect()
}

/// Exponential-decay estimates `(k - m, value)` for `m < k` of matching parity.
pub fn exponential_series<T: Real>(spec: &NaturalSpectrum<T>, k: usize) -> Series {
    let parity = spec.dominant.get(k).map_or(k % 2, |d| d % 2);
    (0..k.min(spec.m_max()))
        .filter(|m| m % 2 == parity)
        .filter_map(|m| exponential_decay(spec, k, m).ok().map(|v| (k - m, v)))
        .collect()
}

/// Running mean over `window` consecutive points; the x-value is that of the window centre.
pub fn running_mean(series: &[(usize, f64)], window: usize) -> Series {
    if window == 0 || series.len() < window {
        return Vec::new();
    }
    series
        .windows(window)
        .map(|w| (w[window / 2].0, w.iter().map(|p| p.1).sum::<f64>() / window as f64))
        .collect()
}

/// Two readings of the asymptotic constant of a series.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Plateau {
    /// Mean over the last 20% of points.
    pub tail_mean: f64,
    /// Intercept of a least-squares fit `y = c0 + c1/x` over the last half of points.
    pub extrapolated: f64,
    pub points: usize,
}

pub fn plateau(series: &[(usize, f64)]) -> Option<Plateau> {
    let pts: Vec<(f64, f64)> = series.iter().filter(|p| p.0 > 0 && p.1.is_finite()).map(|&(x, y)| (x as f64, y)).collect();
    if pts.is_empty() {
        return None;
    }
    let n = pts.len();
    let tail = &pts[n - (n / 5).max(1)..];
    let tail_mean = tail.iter().map(|p| p.1).sum::<f64>() / tail.len() as f64;
    let fit = &pts[n / 2..];
    let extrapolated = if fit.len() >= 2 {
        let m = fit.len() as f64;
        let sx: f64 = fit.iter().map(|p| 1.0 / p.0).sum();
        let sy: f64 = fit.iter().map(|p| p.1).sum();
        let sxx: f64 = fit.iter().map(|p| 1.0 / (p.0 * p.0)).sum();
        let sxy: f64 = fit.iter().map(|p| p.1 / p.0).sum();
        let det = m * sxx - sx * sx;
        if det.abs() > 0.0 {
            (sy * sxx - sx * sxy) / det
        } else {
            tail_mean
        }
    } else {
        tail_mean
    };
    Some(Plateau { tail_mean, extrapolated, points: n })
}

/// Root `α_N` of `sum_r h_r t^{-r} = 0`, `t = e^{2α}`, with the largest positive real part.
///
/// The roots pair up as `α ↔ βħΩ - α`; the orbitals follow the faster-decaying member.
pub fn alpha_root(h: &HCoefficients) -> Result<Complex64> {
    let roots = alpha_candidates(h)?;
    roots
        .into_iter()
        .filter(|a| a.re > 0.0 && a.re.is_finite())
        .max_by(|a, b| a.re.total_cmp(&b.re).then(b.im.abs().total_cmp(&a.im.abs())))
        .ok_or_else(|| Error::NoValidRoot("no root has a positive real part".into()))
}

/// All `α = ln(t)/2` over the roots `t` of `sum_r h_r t^{N-1-r}`.
pub fn alpha_candidates(h: &HCoefficients) -> Result<Vec<Complex64>> {
    let n = h.n_particles;
    if n < 2 {
        return Err(Error::Domain("alpha needs N >= 2".into()));
    }
    if h.get(0) == 0.0 {
        return Err(Error::Domain("h_0 vanishes".into()));
    }
    let deg = 2 * (n - 1);
    // coefficient of t^j is h_{N-1-j}
    let coef: Vec<f64> = (0..=deg).map(|j| h.get(n as i64 - 1 - j as i64)).collect();
    let lead = coef[deg];
    if lead == 0.0 || !lead.is_finite() {
        return Err(Error::NoValidRoot("leading coefficient vanishes".into()));
    }
    let mut comp = nalgebra::DMatrix::<f64>::zeros(deg, deg);
    for i in 1..deg {
        comp[(i, i - 1)] = 1.0;
    }
    for i in 0..deg {
        comp[(i, deg - 1)] = -coef[i] / lead;
    }
    Ok(comp.complex_eigenvalues().iter().map(|t| t.ln() / 2.0).collect())
}

/// `λ_{N-1} - λ_N`.
pub fn fermi_gap<T: Real>(spec: &NaturalSpectrum<T>, n_particles: usize) -> Result<f64> {
    if spec.len() <= n_particles {
        return Err(Error::Domain(format!(
            "spectrum of length {} has no level above the Fermi level {n_particles}",
            spec.len()
        )));
    }
    Ok((spec.occupations[n_particles - 1].clone() - &spec.occupations[n_particles]).to_f64())
}

/// All decay estimates for one spectrum.
#[derive(Clone, Debug, Serialize)]
pub struct DecayReport {
    pub boltzmann_estimates: Series,
    pub boltzmann_plateau: Option<Plateau>,
    /// `(k, series)` of Gaussian estimates for `m > k`.
    pub gaussian_estimates: Vec<(usize, Series)>,
    pub gaussian_plateaus: Vec<(usize, Option<Plateau>)>,
    /// `(k, series)` of exponential estimates for `m < k`.
    pub exp_estimates: Vec<(usize, Series)>,
    pub exp_plateaus: Vec<(usize, Option<Plateau>)>,
    #[serde(serialize_with = "serialize_complex")]
    pub alpha: Option<Complex64>,
    pub gap: f64,
}

fn serialize_complex<S: serde::Serializer>(a: &Option<Complex64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match a {
        Some(c) => s.collect_seq([c.re, c.im]),
        None => s.serialize_none(),
    }
}

/// Collects every estimator for the orbitals `ks`.
pub fn decay_report<T: Real>(
    spec: &NaturalSpectrum<T>,
    n_particles: usize,
    ks: &[usize],
    h: Option<&HCoefficients>,
) -> Result<DecayReport> {
    let boltzmann_estimates = boltzmann_series(spec, n_particles);
    let boltzmann_plateau = plateau(&boltzmann_estimates);
    let mut gaussian_estimates = Vec::new();
    let mut gaussian_plateaus = Vec::new();
    let mut exp_estimates = Vec::new();
    let mut exp_plateaus = Vec::new();
    for &k in ks.iter().filter(|&&k| k < spec.len()) {
        let g = gaussian_series(spec, k);
        gaussian_plateaus.push((k, plateau(&g)));
        gaussian_estimates.push((k, g));
        let e = exponential_series(spec, k);
        exp_plateaus.push((k, plateau(&running_mean(&e, 20))));
        exp_estimates.push((k, e));
    }
    let alpha = match h {
        Some(h) => Some(alpha_root(h)?),
        None => None,
    };
    Ok(DecayReport {
        boltzmann_estimates,
        boltzmann_plateau,
        gaussian_estimates,
        gaussian_plateaus,
        exp_estimates,
        exp_plateaus,
        alpha,
        gap: fermi_gap(spec, n_particles)?,
    })
}
