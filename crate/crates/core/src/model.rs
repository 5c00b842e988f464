//! Model parameters and the closed-form constants of both one-particle density operators.
//!
//! Lengths are measured in units of the trap length `l_minus`, which
//! [`ModelParams::from_coupling`] fixes to one.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{Precision, Real};

/// Particle number and the two oscillator lengths of the N-harmonium ground state.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ModelParams {
    n_particles: usize,
    l_minus: f64,
    l_plus: f64,
}

impl ModelParams {
    pub fn new(n_particles: usize, l_minus: f64, l_plus: f64) -> Result<Self> {
        if n_particles < 1 {
            return Err(Error::Domain("particle number must be at least 1".into()));
        }
        for (name, v) in [("l_minus", l_minus), ("l_plus", l_plus)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Domain(format!("{name} must be positive and finite, got {v}")));
            }
        }
        Ok(ModelParams { n_particles, l_minus, l_plus })
    }

    /// `l_minus = 1` and `l_plus = (1 + coupling_ratio)^{-1/4}`.
    pub fn from_coupling(n_particles: usize, coupling_ratio: f64) -> Result<Self> {
        if !(coupling_ratio.is_finite() && coupling_ratio > -1.0) {
            return Err(Error::Domain(format!(
                "coupling ratio must exceed -1 for a bound ground state, got {coupling_ratio}"
            )));
        }
        Self::new(n_particles, 1.0, (1.0 + coupling_ratio).powf(-0.25))
    }

    /// `l_minus = 1` and `l_plus = l_ratio`.
    pub fn from_l_ratio(n_particles: usize, l_ratio: f64) -> Result<Self> {
        Self::new(n_particles, 1.0, l_ratio)
    }

    pub fn n_particles(&self) -> usize {
        self.n_particles
    }

    pub fn l_minus(&self) -> f64 {
        self.l_minus
    }

    pub fn l_plus(&self) -> f64 {
        self.l_plus
    }

    pub fn l_ratio(&self) -> f64 {
        self.l_plus / self.l_minus
    }

    /// `N D / (m omega^2) = (l_minus/l_plus)^4 - 1`.
    pub fn coupling_ratio(&self) -> f64 {
        (self.l_minus / self.l_plus).powi(4) - 1.0
    }

    pub fn is_noninteracting(&self) -> bool {
        self.l_minus == self.l_plus
    }
}

/// Exponent `-A sum x_i^2 + B (sum x_i)^2` of the N-particle ground state.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GaussianExponent<T = f64> {
    pub a_cap: T,
    pub b_cap: T,
}

impl<T: Real> GaussianExponent<T> {
    /// `A = 1/(2 l+^2)`, `B = (1/l+^2 - 1/l-^2)/(2N)`.
    ///
    /// The `1/N` follows from the centre-of-mass coordinate `(x_1+..+x_N)/√N`.
    pub fn from_params(p: &ModelParams, prec: Precision) -> Result<Self> {
        let lp = T::from_f64(p.l_plus, prec);
        let lm = T::from_f64(p.l_minus, prec);
        let half = T::from_f64(0.5, prec);
        let inv_p = T::one(prec) / &(lp.clone() * &lp);
        let inv_m = T::one(prec) / &(lm.clone() * &lm);
        let a_cap = inv_p.clone() * &half;
        let b_cap = if p.is_noninteracting() {
            T::zero(prec)
        } else {
            (inv_p - &inv_m) * &half / &T::from_i64(p.n_particles as i64, prec)
        };
        Self::new(a_cap, b_cap, p.n_particles)
    }

    /// Raw exponent; rejects `A <= 0` and non-normalizable `A - (N-1)B <= 0`.
    pub fn new(a_cap: T, b_cap: T, n_particles: usize) -> Result<Self> {
        if a_cap.is_sign_negative() || a_cap.is_zero() {
            return Err(Error::Domain(format!("A must be positive, got {a_cap}")));
        }
        let g = GaussianExponent { a_cap, b_cap };
        if !g.normalizable(n_particles) {
            return Err(Error::SingularModel(format!(
                "A - (N-1)B = {} is not positive for N = {n_particles}",
                g.denominator(n_particles)
            )));
        }
        Ok(g)
    }

    /// `A - (N-1) B`.
    pub fn denominator(&self, n_particles: usize) -> T {
        self.a_cap.clone() - &(self.b_cap.clone() * &self.a_cap.int(n_particles as i64 - 1))
    }

    fn normalizable(&self, n_particles: usize) -> bool {
        let d = self.denominator(n_particles);
        !(d.is_sign_negative() || d.is_zero())
    }
}

/// `A`, `B` in double precision.
pub fn gaussian_exponent(p: &ModelParams) -> Result<GaussianExponent> {
    GaussianExponent::from_params(p, Precision::DOUBLE)
}

/// Exponent `c exp(-a(x^2+y^2) + b x y)` of the bosonic one-particle kernel.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RdoExponent<T = f64> {
    pub a_small: T,
    pub b_small: T,
    pub c_norm: T,
    pub c_mix: T,
}

impl<T: Real> RdoExponent<T> {
    pub fn from_params(p: &ModelParams, prec: Precision) -> Result<Self> {
        rdo_exponent(&GaussianExponent::from_params(p, prec)?, p.n_particles)
    }

    /// `2a - b`, the Gaussian exponent of the diagonal `rho(x, x)`.
    pub fn diagonal_exponent(&self) -> T {
        self.a_small.int(2) * &self.a_small - &self.b_small
    }
}

/// `b = (N-1)B^2/(A-(N-1)B)`, `a = A - B - b/2`, `c = N sqrt((2a-b)/pi)`, `C = b/2`.
pub fn rdo_exponent<T: Real>(g: &GaussianExponent<T>, n_particles: usize) -> Result<RdoExponent<T>> {
    if n_particles < 1 {
        return Err(Error::Domain("particle number must be at least 1".into()));
    }
    if !g.normalizable(n_particles) {
        return Err(Error::SingularModel(format!(
            "A - (N-1)B = {} is not positive for N = {n_particles}",
            g.denominator(n_particles)
        )));
    }
    let prec = g.a_cap.precision();
    let nm1 = g.a_cap.int(n_particles as i64 - 1);
    let b_small = if g.b_cap.is_zero() {
        T::zero(prec)
    } else {
        nm1 * &g.b_cap * &g.b_cap / &g.denominator(n_particles)
    };
    let half = T::from_f64(0.5, prec);
    let c_mix = b_small.clone() * &half;
    let a_small = g.a_cap.clone() - &g.b_cap - &c_mix;
    let width = a_small.int(2) * &a_small - &b_small;
    let c_norm = g.a_cap.int(n_particles as i64) * &(width / &T::pi(prec)).sqrt();
    Ok(RdoExponent { a_small, b_small, c_norm, c_mix })
}

/// Gibbs-state parameters of the bosonic one-particle density operator.
///
/// At zero coupling the effective temperature vanishes: `q = 0` and
/// [`EffectiveOscillator::is_infinite`] is set, `beta_homega` then holds zero.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EffectiveOscillator<T = f64> {
    pub length: T,
    pub beta_homega: T,
    pub boltzmann_q: T,
    pub z_eff: T,
    infinite: bool,
}

impl<T: Real> EffectiveOscillator<T> {
    pub fn from_params(p: &ModelParams, prec: Precision) -> Result<Self> {
        Self::from_exponent(&RdoExponent::from_params(p, prec)?, p.n_particles)
    }

    /// Mehler route: `c^2 = 2a-b`, `d^2 = 2a+b`, `L = (cd)^{-1/2}`, `sinh(beta hbar Omega) = cd/b`.
    pub fn from_exponent(r: &RdoExponent<T>, n_particles: usize) -> Result<Self> {
        let prec = r.a_small.precision();
        let c = r.diagonal_exponent().sqrt();
        let d = (r.a_small.int(2) * &r.a_small + &r.b_small).sqrt();
        let cd = c.clone() * &d;
        let length = cd.sqrt().int(1) / &cd.sqrt();
        if r.b_small.is_zero() {
            return Ok(EffectiveOscillator {
                length,
                beta_homega: T::zero(prec),
                boltzmann_q: T::zero(prec),
                z_eff: T::from_f64(0.5, prec) * &T::from_i64(n_particles as i64, prec),
                infinite: true,
            });
        }
        let x = cd / &r.b_small;
        let beta_homega = x.asinh();
        // 1/(X + sqrt(X^2+1)) avoids the cancellation in exp(-asinh X) for large X
        let boltzmann_q = x.int(1) / &(x.clone() + &(x.clone() * &x + &x.int(1)).sqrt());
        let half = T::from_f64(0.5, prec);
        let z_eff = half.clone() * &T::from_i64(n_particles as i64, prec) / &(beta_homega.clone() * &half).sinh();
        Ok(EffectiveOscillator { length, beta_homega, boltzmann_q, z_eff, infinite: false })
    }

    /// `beta hbar Omega = infinity` (zero coupling).
    pub fn is_infinite(&self) -> bool {
        self.infinite
    }

    /// Boltzmann factor from the Mehler route, `(d - c)/(d + c)`.
    pub fn mehler_q(r: &RdoExponent<T>) -> T {
        let c = r.diagonal_exponent().sqrt();
        let d = (r.a_small.int(2) * &r.a_small + &r.b_small).sqrt();
        (d.clone() - &c) / &(d + &c)
    }
}

/// Effective oscillator in double precision.
pub fn effective_oscillator(p: &ModelParams) -> Result<EffectiveOscillator> {
    EffectiveOscillator::from_params(p, Precision::DOUBLE)
}

/// `(L, beta hbar Omega)` straight from the two lengths, bypassing `a` and `b`.
///
/// `beta hbar Omega` is `None` at zero coupling.
pub fn effective_oscillator_from_lengths(p: &ModelParams) -> (f64, Option<f64>) {
    let n = p.n_particles as f64;
    let (lm, lp) = (p.l_minus, p.l_plus);
    let (lm2, lp2) = (lm * lm, lp * lp);
    let u = (n - 1.0) * lp2 + lm2;
    let v = lp2 + (n - 1.0) * lm2;
    let length = (lm * lp).sqrt() * (u / v).powf(0.25);
    if p.is_noninteracting() || p.n_particles == 1 {
        return (length, None);
    }
    let diff = lp2 - lm2;
    let arg = 2.0 * lp * lm * (u * v).sqrt() / ((1.0 - 1.0 / n) * diff * diff);
    (length, Some(arg.asinh()))
}
