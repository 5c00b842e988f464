//! Direct two-dimensional quadrature of `<m| rho |n>`, independent of the ladder assembly.

use crate::error::{Error, Result};
use crate::fermion::polynomial::{build_fermion_polynomial, FermionPolynomial};
use crate::model::{EffectiveOscillator, RdoExponent, ModelParams};
use crate::numerics::hermite::normalized_hermite_polys;
use crate::numerics::{gauss_hermite, Precision, QuadratureRule};

/// Evaluator of `<m| rho |n>` by Gauss-Hermite quadrature in rotated coordinates.
///
/// With `u = (x+y)/√2`, `v = (x-y)/√2` the Gaussian part of
/// `φ_m(x) F(x,y) e^{-a(x²+y²)+bxy} φ_n(y)` separates into
/// `exp(-(a'-b/2)u² - (a'+b/2)v²)`, `a' = a + 1/(2L²)`, and the remaining
/// polynomial is integrated exactly by a product rule.
pub struct QuadratureOracle {
    poly: FermionPolynomial,
    length: f64,
    alpha_u: f64,
    alpha_v: f64,
    rule: QuadratureRule,
}

impl QuadratureOracle {
    pub fn new(p: &ModelParams, npoints: usize) -> Result<Self> {
        let poly = build_fermion_polynomial(p)?;
        let r = RdoExponent::<f64>::from_params(p, Precision::DOUBLE)?;
        let osc = EffectiveOscillator::from_exponent(&r, p.n_particles())?;
        let length = osc.length;
        let a_shift = r.a_small + 0.5 / (length * length);
        let rule = gauss_hermite(npoints, Precision::DOUBLE)?;
        Ok(QuadratureOracle {
            poly,
            length,
            alpha_u: a_shift - 0.5 * r.b_small,
            alpha_v: a_shift + 0.5 * r.b_small,
            rule,
        })
    }

    /// `<m| rho |n>` in the basis of Hermite functions of length `L_N`.
    pub fn element(&self, m: usize, n: usize) -> f64 {
        let su = self.alpha_u.sqrt();
        let sv = self.alpha_v.sqrt();
        let l = self.length;
        let coeffs = self.poly.coeffs::<f64>(Precision::DOUBLE);
        let mut acc = 0.0;
        for (s, ws) in self.rule.nodes().iter().zip(self.rule.weights()) {
            let u = s / su;
            for (t, wt) in self.rule.nodes().iter().zip(self.rule.weights()) {
                let v = t / sv;
                let x = (u + v) * std::f64::consts::FRAC_1_SQRT_2;
                let y = (u - v) * std::f64::consts::FRAC_1_SQRT_2;
                let hx = normalized_hermite_polys(m, &(x / l))[m];
                let hy = normalized_hermite_polys(n, &(y / l))[n];
                let mut f = 0.0;
                for (nu, row) in coeffs.iter().enumerate() {
                    for (mu, c) in row.iter().enumerate() {
                        f += c * x.powi((2 * nu - mu) as i32) * y.powi(mu as i32);
                    }
                }
                acc += ws * wt * hx * hy * f;
            }
        }
        acc / (l * su * sv)
    }
}

/// `<m| rho |n>` by a product Gauss-Hermite rule with `npoints` nodes per axis.
pub fn quadrature_rdo_element(p: &ModelParams, m: usize, n: usize, npoints: usize) -> Result<f64> {
    let needed = (m + n + 2 * (p.n_particles() - 1)) / 2 + 1;
    if npoints < needed {
        return Err(Error::Domain(format!(
            "{npoints} nodes cannot integrate degree {} exactly; need at least {needed}",
            m + n + 2 * (p.n_particles() - 1)
        )));
    }
    Ok(QuadratureOracle::new(p, npoints)?.element(m, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_parity_vanishes() {
        let p = ModelParams::from_l_ratio(3, 0.8).unwrap();
        assert!(quadrature_rdo_element(&p, 1, 2, 40).unwrap().abs() < 1e-14);
    }

    #[test]
    fn single_particle_projector() {
        let p = ModelParams::from_l_ratio(1, 0.6).unwrap();
        assert!((quadrature_rdo_element(&p, 0, 0, 20).unwrap() - 1.0).abs() < 1e-13);
    }

    #[test]
    fn too_few_nodes_rejected() {
        let p = ModelParams::from_l_ratio(3, 0.8).unwrap();
        assert!(quadrature_rdo_element(&p, 10, 10, 5).is_err());
    }
}
