//! The fermionic one-particle density matrix in the bosonic natural-orbital basis.
//!
//! The bilinear Gaussian factorizes as `sum_k w_k φ_k(x) φ_k(y)` with
//! `w_k = sqrt(π) L sqrt(1-q^2) q^k`, so the operator is
//! `sum c[ν][μ] X^{2ν-μ} W X^μ` with `X = (L/√2)(a + a†)`.

use crate::error::{Error, Result};
use crate::fermion::polynomial::{build_fermion_polynomial, FermionPolynomial};
use crate::model::{EffectiveOscillator, ModelParams};
use crate::numerics::{Precision, Real, SymmetricMatrix};

/// Position operator `(scale/√2)(a + a†)` on the lowest `m_max` number states.
pub fn ladder_position_matrix<T: Real>(m_max: usize, scale: &T) -> SymmetricMatrix<T> {
    let prec = scale.precision();
    let half = T::from_f64(0.5, prec);
    SymmetricMatrix::from_fn(m_max.max(1), prec, |i, j| {
        if j == i + 1 {
            scale.clone() * &(T::from_i64(j as i64, prec) * &half).sqrt()
        } else {
            T::zero(prec)
        }
    })
}

/// Powers `X^a`, `a = 0..=amax`, stored by rows: `rows[m][j] = (X^a)[m][m - a + 2j]`.
struct BandPowers<T> {
    powers: Vec<Vec<Vec<T>>>,
    dim: usize,
}

impl<T: Real> BandPowers<T> {
    fn new(dim: usize, amax: usize, scale: &T) -> Self {
        let prec = scale.precision();
        let half = T::from_f64(0.5, prec);
        // x[m] = X[m][m+1]
        let x: Vec<T> = (0..dim)
            .map(|m| scale.clone() * &(T::from_i64(m as i64 + 1, prec) * &half).sqrt())
            .collect();
        let mut powers: Vec<Vec<Vec<T>>> = vec![(0..dim).map(|_| vec![T::one(prec)]).collect()];
        for a in 1..=amax {
            let prev = &powers[a - 1];
            let rows: Vec<Vec<T>> = (0..dim)
                .map(|m| {
                    (0..=a)
                        .map(|j| {
                            let k = (m + 2 * j) as isize - a as isize;
                            let mut acc = T::zero(prec);
                            if m >= 1 {
                                if let Some(v) = Self::lookup(prev, dim, a - 1, m - 1, k) {
                                    acc.add_mul(&x[m - 1], v);
                                }
                            }
                            if m + 1 < dim {
                                if let Some(v) = Self::lookup(prev, dim, a - 1, m + 1, k) {
                                    acc.add_mul(&x[m], v);
                                }
                            }
                            acc
                        })
                        .collect()
                })
                .collect();
            powers.push(rows);
        }
        BandPowers { powers, dim }
    }

    fn lookup<'a>(rows: &'a [Vec<T>], dim: usize, a: usize, m: usize, k: isize) -> Option<&'a T> {
        if k < 0 || k as usize >= dim {
            return None;
        }
        let off = k - m as isize + a as isize;
        if off < 0 || off % 2 != 0 || off as usize > 2 * a {
            return None;
        }
        Some(&rows[m][off as usize / 2])
    }

    fn get(&self, a: usize, m: usize, k: isize) -> Option<&T> {
        Self::lookup(&self.powers[a], self.dim, a, m, k)
    }
}

/// Truncated fermionic density matrix with assembly diagnostics.
#[derive(Clone, Debug)]
pub struct RdoMatrix<T> {
    pub matrix: SymmetricMatrix<T>,
    pub n_particles: usize,
    pub oscillator: EffectiveOscillator<T>,
    /// `sum_m rho_mm` over the truncated basis.
    pub truncated_trace: T,
    /// Relative deviation of the untruncated trace from `N` before rescaling.
    pub trace_defect: f64,
    /// Constant applied to every entry (and implicitly to `F_N`) to make the trace exactly `N`.
    pub trace_scale: T,
    /// Basis size used to resolve the untruncated trace.
    pub trace_dim: usize,
}

impl<T: Real> RdoMatrix<T> {
    pub fn m_max(&self) -> usize {
        self.matrix.dim()
    }

    pub fn precision(&self) -> Precision {
        self.matrix.precision()
    }
}

/// Upper band of `rho` for indices `< dim`: `band[m][j] = rho[m][m + 2j]`.
fn assemble_band<T: Real>(
    coeffs: &[Vec<T>],
    osc: &EffectiveOscillator<T>,
    n: usize,
    dim: usize,
    prec: Precision,
) -> Vec<Vec<T>> {
    let amax = 2 * (n - 1);
    let ext = dim + amax;
    let bands = BandPowers::new(ext, amax, &osc.length);
    let q = &osc.boltzmann_q;
    let one = T::one(prec);
    let w0 = T::pi(prec).sqrt() * &osc.length * &(one.clone() - &(q.clone() * q)).sqrt();
    let mut band: Vec<Vec<T>> = (0..dim).map(|_| vec![T::zero(prec); n]).collect();
    let width = 2 * amax + 1;
    let mut w = w0;
    for k in 0..ext {
        if k > 0 {
            w *= q;
            if w.is_zero() {
                break;
            }
        }
        let lo = k as isize - amax as isize;
        // u[a][i] = (X^a)[lo+i][k]
        let u: Vec<Vec<Option<T>>> = (0..=amax)
            .map(|a| {
                (0..width)
                    .map(|i| {
                        let m = lo + i as isize;
                        if m < 0 || m as usize >= dim {
                            return None;
                        }
                        bands.get(a, k, m).cloned()
                    })
                    .collect()
            })
            .collect();
        // v[a][i] = sum_b c[(a+b)/2][b] u[b][i]
        let v: Vec<Vec<Option<T>>> = (0..=amax)
            .map(|a| {
                (0..width)
                    .map(|i| {
                        let mut acc: Option<T> = None;
                        for b in (a % 2..=amax - a).step_by(2) {
                            if let Some(ub) = &u[b][i] {
                                let c = &coeffs[(a + b) / 2][b];
                                let t = c.clone() * ub;
                                match &mut acc {
                                    Some(s) => *s += &t,
                                    None => acc = Some(t),
                                }
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        for i in 0..width {
            let m = lo + i as isize;
            if m < 0 || m as usize >= dim {
                continue;
            }
            for jj in (i..width).step_by(2) {
                let mut acc: Option<T> = None;
                for a in 0..=amax {
                    if let (Some(ua), Some(va)) = (&u[a][i], &v[a][jj]) {
                        let t = ua.clone() * va;
                        match &mut acc {
                            Some(s) => *s += &t,
                            None => acc = Some(t),
                        }
                    }
                }
                if let Some(s) = acc {
                    band[m as usize][(jj - i) / 2].add_mul(&w, &s);
                }
            }
        }
    }
    band
}

/// Assembles the fermionic density matrix on the lowest `m_max` number states.
///
/// The untruncated trace is resolved on a larger basis (entries there cost
/// little compared with diagonalization); a relative defect above
/// `2^{-bits/4}` signals lost precision and is an error.
pub fn fermion_rdo_matrix<T: Real>(p: &ModelParams, m_max: usize, prec: Precision) -> Result<RdoMatrix<T>> {
    let n = p.n_particles();
    if m_max < n.max(2) {
        return Err(Error::Domain(format!("m_max = {m_max} must be at least max(N, 2) = {}", n.max(2))));
    }
    if prec.bits() < 53 {
        return Err(Error::Domain(format!("precision of {prec} is below double")));
    }
    let detune = (p.l_ratio() - 1.0).abs();
    let threshold = 2f64.powf(-(prec.bits() as f64) / 4.0);
    if detune > 0.0 && detune < threshold {
        return Err(Error::Precision(format!(
            "|l+/l- - 1| = {detune:e} is below 2^(-bits/4) = {threshold:e}; raise the precision"
        )));
    }
    let poly = build_fermion_polynomial(p)?;
    assemble(p, &poly, m_max, prec)
}

fn assemble<T: Real>(p: &ModelParams, poly: &FermionPolynomial, m_max: usize, prec: Precision) -> Result<RdoMatrix<T>> {
    let n = p.n_particles();
    let osc = EffectiveOscillator::<T>::from_params(p, prec)?;
    let coeffs = poly.coeffs::<T>(prec);
    let nn = T::from_i64(n as i64, prec);
    let floor = T::from_f64(2f64.powi(prec.tolerance_log2(-8)), prec) * &nn;

    let mut dim = m_max;
    let band = loop {
        let band = assemble_band(&coeffs, &osc, n, dim, prec);
        let tail = band[dim - 1][0].abs() + &band[dim - 2][0].abs();
        if tail <= floor || osc.is_infinite() {
            break band;
        }
        if dim >= 1 << 16 {
            return Err(Error::Precision(format!(
                "trace tail not resolved within {dim} basis states"
            )));
        }
        dim = (dim * 2).max(64);
    };

    let mut full_trace = T::zero(prec);
    for row in &band {
        full_trace += &row[0];
    }
    let defect = ((full_trace.clone() - &nn) / &nn).abs().to_f64();
    let threshold = 2f64.powf(-(prec.bits() as f64) / 4.0);
    if !(defect <= threshold) {
        return Err(Error::Precision(format!(
            "trace defect {defect:e} exceeds 2^(-bits/4) = {threshold:e}"
        )));
    }
    let scale = nn.clone() / &full_trace;
    let matrix = SymmetricMatrix::from_fn(m_max, prec, |i, j| {
        let d = j - i;
        if d % 2 == 0 && d / 2 < n {
            band[i][d / 2].clone() * &scale
        } else {
            T::zero(prec)
        }
    });
    let truncated_trace = matrix.trace();
    Ok(RdoMatrix {
        matrix,
        n_particles: n,
        oscillator: osc,
        truncated_trace,
        trace_defect: defect,
        trace_scale: scale,
        trace_dim: dim,
    })
}
