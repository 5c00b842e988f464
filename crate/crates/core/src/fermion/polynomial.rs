//! Polynomial prefactor `F_N(x, y)` of the fermionic one-particle kernel.
//!
//! After the Vandermonde factor is expanded and all but one coordinate are
//! integrated out, the prefactor reduces to
//!
//! ```text
//! F_N(x, y) ∝ ∫ du e^{-u^2} sum_{k<N} H_k(p u + s l1) H_k(p u + s l2) / (2^k k!)
//! ```
//!
//! with `D = A - (N-1)B`, `p^2 = B/D`, `s^2 = 2A`, `l1 = αx + βy`,
//! `l2 = βx + αy`, `α = 1 - B/(2D)`, `β = -B/(2D)`. Only even powers of `p`
//! and `s` survive the `u` integral, so every coefficient is a rational
//! function of `A` and `B` and is computed exactly.

use std::collections::BTreeMap;

use rug::Rational;
use serde_json::json;

use crate::error::{Error, Result};
use crate::model::{GaussianExponent, ModelParams};
use crate::numerics::hermite::gaussian_moment_ratio;
use crate::numerics::{BigReal, Precision, Real};

/// Sparse polynomial in `(u, x, y)` with exact coefficients.
#[derive(Clone, Debug, Default)]
struct Poly3(BTreeMap<[u32; 3], Rational>);

impl Poly3 {
    fn constant(c: Rational) -> Self {
        let mut m = BTreeMap::new();
        m.insert([0, 0, 0], c);
        Poly3(m)
    }

    fn add_scaled(&mut self, other: &Poly3, scale: &Rational) {
        for (e, c) in &other.0 {
            let term = Rational::from(c * scale);
            let slot = self.0.entry(*e).or_default();
            *slot += term;
        }
        self.0.retain(|_, c| *c != 0);
    }

    fn mul(&self, other: &Poly3) -> Poly3 {
        let mut out: BTreeMap<[u32; 3], Rational> = BTreeMap::new();
        for (ea, ca) in &self.0 {
            for (eb, cb) in &other.0 {
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
                *out.entry(e).or_default() += Rational::from(ca * cb);
            }
        }
        out.retain(|_, c| *c != 0);
        Poly3(out)
    }
}

/// Integer coefficients of `H_k(z)` for `k < n`, lowest power first.
fn hermite_coefficients(n: usize) -> Vec<Vec<i64>> {
    let mut table: Vec<Vec<i64>> = vec![vec![1]];
    if n > 1 {
        table.push(vec![0, 2]);
    }
    for k in 1..n.saturating_sub(1) {
        let mut next = vec![0i64; k + 2];
        for (j, &c) in table[k].iter().enumerate() {
            next[j + 1] += 2 * c;
        }
        for (j, &c) in table[k - 1].iter().enumerate() {
            next[j] -= 2 * k as i64 * c;
        }
        table.push(next);
    }
    table.truncate(n);
    table
}

/// `sum_k H_k(z) ...` evaluated on a linear form `z = u + c_x x + c_y y`.
fn hermite_of_linear(coeffs: &[i64], cx: &Rational, cy: &Rational, powers: &mut Vec<Poly3>) -> Poly3 {
    if powers.is_empty() {
        powers.push(Poly3::constant(Rational::from(1)));
    }
    let mut lin = BTreeMap::new();
    lin.insert([1, 0, 0], Rational::from(1));
    if *cx != 0 {
        lin.insert([0, 1, 0], cx.clone());
    }
    if *cy != 0 {
        lin.insert([0, 0, 1], cy.clone());
    }
    let lin = Poly3(lin);
    while powers.len() < coeffs.len() {
        let next = powers.last().unwrap().mul(&lin);
        powers.push(next);
    }
    let mut out = Poly3::default();
    for (j, &c) in coeffs.iter().enumerate() {
        if c != 0 {
            out.add_scaled(&powers[j], &Rational::from(c));
        }
    }
    out
}

/// Coefficient table `c[ν][μ]` of `F_N(x, y) = sum c[ν][μ] x^{2ν-μ} y^μ`.
///
/// Coefficients are held as exact rationals times the common irrational
/// factor `sqrt(σ/π)`, `σ = 2a - b`, which fixes `∫ F(x,x) e^{-σ x^2} dx = N`.
#[derive(Clone, Debug, PartialEq)]
pub struct FermionPolynomial {
    n_particles: usize,
    rational: Vec<Vec<Rational>>,
    sigma: Rational,
}

/// Builds `F_N` for the model.
pub fn build_fermion_polynomial(p: &ModelParams) -> Result<FermionPolynomial> {
    let (a_cap, b_cap) = exact_exponent(p)?;
    FermionPolynomial::from_exponent(&a_cap, &b_cap, p.n_particles())
}

/// `A` and `B` as exact rationals of the stored double-precision lengths.
pub fn exact_exponent(p: &ModelParams) -> Result<(Rational, Rational)> {
    let to_q = |v: f64| Rational::from_f64(v).expect("finite length");
    let lp = to_q(p.l_plus());
    let lm = to_q(p.l_minus());
    let inv_p = Rational::from(1) / (lp.clone() * &lp);
    let inv_m = Rational::from(1) / (lm.clone() * &lm);
    let half = Rational::from((1, 2));
    let a_cap = inv_p.clone() * &half;
    let b_cap = (inv_p - inv_m) * half / Rational::from(p.n_particles() as i64);
    // validates normalizability
    GaussianExponent::new(a_cap.to_f64(), b_cap.to_f64(), p.n_particles())?;
    Ok((a_cap, b_cap))
}

impl FermionPolynomial {
    /// Builds `F_N` directly from the ground-state exponent `(A, B)`.
    pub fn from_exponent(a_cap: &Rational, b_cap: &Rational, n_particles: usize) -> Result<Self> {
        if n_particles < 1 {
            return Err(Error::Domain("particle number must be at least 1".into()));
        }
        if *a_cap <= 0 {
            return Err(Error::Domain(format!("A must be positive, got {a_cap}")));
        }
        let n = n_particles;
        let d = Rational::from(a_cap - Rational::from(n as i64 - 1) * b_cap);
        if d <= 0 {
            return Err(Error::SingularModel(format!(
                "A - (N-1)B = {d} is not positive for N = {n}"
            )));
        }
        let half = Rational::from((1, 2));
        let beta = -Rational::from(b_cap / &d) * &half;
        let alpha = Rational::from(1) + &beta;
        let p_sq = Rational::from(b_cap / &d);
        let s_sq = Rational::from(2) * a_cap;

        let hermite = hermite_coefficients(n);
        let mut pow1 = Vec::new();
        let mut pow2 = Vec::new();
        let mut g = Poly3::default();
        let mut norm = Rational::from(1);
        for (k, hk) in hermite.iter().enumerate() {
            if k > 0 {
                norm *= Rational::from(2 * k as i64);
            }
            let h1 = hermite_of_linear(hk, &alpha, &beta, &mut pow1);
            let h2 = hermite_of_linear(hk, &beta, &alpha, &mut pow2);
            g.add_scaled(&h1.mul(&h2), &Rational::from(norm.recip_ref()));
        }

        let mut rational: Vec<Vec<Rational>> =
            (0..n).map(|nu| vec![Rational::new(); 2 * nu + 1]).collect();
        for (e, c) in &g.0 {
            let [i, ex, ey] = *e;
            if i % 2 == 1 {
                continue;
            }
            let deg = ex + ey;
            debug_assert!(deg % 2 == 0, "odd total degree survived the u integral");
            let nu = (deg / 2) as usize;
            let mut term = c.clone() * gaussian_moment_ratio(i as usize);
            term *= rational_pow(&p_sq, i / 2);
            term *= rational_pow(&s_sq, deg / 2);
            rational[nu][ey as usize] += term;
        }

        let b_small = Rational::from(n as i64 - 1) * b_cap.clone() * b_cap / &d;
        let sigma = Rational::from(2) * a_cap - Rational::from(2) * b_cap - Rational::from(2) * &b_small;
        if sigma <= 0 {
            return Err(Error::SingularModel(format!("one-body Gaussian width is not positive (σ = {sigma})")));
        }
        // ∫ F(x,x) e^{-σx^2} = sqrt(π/σ) sum_ν S_ν (2ν-1)!!/(2σ)^ν
        let mut moment = Rational::new();
        let two_sigma = Rational::from(2) * &sigma;
        for (nu, row) in rational.iter().enumerate() {
            let s: Rational = row.iter().sum();
            let dfact = gaussian_moment_ratio(2 * nu) * rational_pow(&Rational::from(2), nu as u32);
            moment += s * dfact / rational_pow(&two_sigma, nu as u32);
        }
        if moment <= 0 {
            return Err(Error::SingularModel("prefactor has non-positive norm".into()));
        }
        let scale = Rational::from(n as i64) / moment;
        for row in &mut rational {
            for c in row.iter_mut() {
                *c *= &scale;
            }
        }
        Ok(FermionPolynomial { n_particles: n, rational, sigma })
    }

    pub fn n_particles(&self) -> usize {
        self.n_particles
    }

    /// Total degree `2(N-1)`.
    pub fn degree(&self) -> usize {
        2 * (self.n_particles - 1)
    }

    /// Exact rational part of `c[ν][μ]`; the full coefficient is this times [`Self::common_factor`].
    pub fn rational_coefficients(&self) -> &[Vec<Rational>] {
        &self.rational
    }

    /// `sqrt(σ/π)` with `σ = 2a - b`.
    pub fn common_factor<T: Real>(&self, prec: Precision) -> T {
        (T::from_rational(&self.sigma, prec) / &T::pi(prec)).sqrt()
    }

    /// `σ = 2a - b`, exactly.
    pub fn sigma(&self) -> &Rational {
        &self.sigma
    }

    /// `c[ν][μ]` at the requested precision.
    pub fn coeffs<T: Real>(&self, prec: Precision) -> Vec<Vec<T>> {
        let f = self.common_factor::<T>(prec);
        self.rational
            .iter()
            .map(|row| row.iter().map(|c| T::from_rational(c, prec) * &f).collect())
            .collect()
    }

    /// `F_N(x, y)`.
    pub fn evaluate<T: Real>(&self, x: &T, y: &T) -> T {
        let prec = x.precision();
        let coeffs = self.coeffs::<T>(prec);
        let mut acc = T::zero(prec);
        for (nu, row) in coeffs.iter().enumerate() {
            for (mu, c) in row.iter().enumerate() {
                acc += &(c.clone() * &x.powi((2 * nu - mu) as i32) * &y.powi(mu as i32));
            }
        }
        acc
    }

    /// `{"N": .., "coeffs": [[..]]}` with decimal strings at the given precision.
    pub fn to_json(&self, prec: Precision) -> serde_json::Value {
        let coeffs: Vec<Vec<String>> = self
            .coeffs::<BigReal>(prec)
            .iter()
            .map(|row| row.iter().map(|c| c.to_decimal_string()).collect())
            .collect();
        json!({ "N": self.n_particles, "coeffs": coeffs })
    }
}

fn rational_pow(base: &Rational, exp: u32) -> Rational {
    let mut r = Rational::from(1);
    for _ in 0..exp {
        r *= base;
    }
    r
}
