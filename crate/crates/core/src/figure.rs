//! Datasets behind the five published plots of the fermionic spectrum.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::export::{fmt_f64, Table};
use crate::fermion::h_coefficients;
use crate::model::{effective_oscillator, ModelParams};
use crate::numerics::{BigReal, Precision, Real};
use crate::pipeline::fermion_run;
use crate::spectrum::{
    alpha_root, boltzmann_series, exponential_decay_quadratic, exponential_series, gaussian_series, running_mean,
    NaturalSpectrum,
};

/// Smallest accepted `|l+/l- - 1|`; closer ratios have no decay to plot.
pub const MIN_COUPLING_OFFSET: f64 = 1e-6;

/// Window of the running mean in the exponential-regime dataset.
pub const RUNNING_WINDOW: usize = 20;

/// Which plot to reproduce and with what overrides of its published parameters.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FigureRequest {
    pub id: u8,
    pub n_particles: Option<usize>,
    pub l_ratios: Option<Vec<f64>>,
    pub ks: Option<Vec<usize>>,
    pub m_max: usize,
    pub precision_bits: u32,
}

/// Published parameter sets: `(N values, l+/l- values, orbital indices)`.
pub fn figure_defaults(id: u8) -> Result<(Vec<usize>, Vec<f64>, Vec<usize>)> {
    let third = 1.0 / 3.0;
    Ok(match id {
        1 => (vec![5], vec![0.8, 0.5, third], vec![]),
        2 => (vec![3, 5], vec![0.8], vec![]),
        3 => (vec![5], vec![third], vec![30, 100, 250]),
        4 => (vec![3, 5], vec![0.8], vec![30, 100, 250]),
        5 => (vec![3, 5], vec![0.8], vec![100, 250]),
        _ => return Err(Error::Domain(format!("figure id must be 1..5, got {id}"))),
    })
}

pub fn figure_columns(id: u8) -> Result<Vec<&'static str>> {
    Ok(match id {
        1 => vec!["n", "l_ratio", "k", "lambda", "lambda_log10", "parity", "step"],
        2 => vec!["n", "l_ratio", "k", "estimate", "beta_homega"],
        3 => vec!["n", "l_ratio", "k", "m", "m_minus_k", "zeta", "zeta_abs_log10"],
        4 => vec!["n", "l_ratio", "k", "m_minus_k", "estimate", "reference"],
        5 => vec![
            "n",
            "l_ratio",
            "k",
            "k_minus_m",
            "estimate_quadratic",
            "estimate_linear",
            "running_mean_linear",
            "alpha_re",
            "alpha_im",
        ],
        _ => return Err(Error::Domain(format!("figure id must be 1..5, got {id}"))),
    })
}

fn check_ratio(l: f64) -> Result<()> {
    if !l.is_finite() || l <= 0.0 {
        return Err(Error::Domain(format!("l+/l- must be positive, got {l}")));
    }
    if (l - 1.0).abs() < MIN_COUPLING_OFFSET {
        return Err(Error::Domain(format!(
            "l+/l- = {l} is within {MIN_COUPLING_OFFSET:e} of 1; the figures need a finite coupling \
             (use `fermion --coupling 0` for the step function)"
        )));
    }
    Ok(())
}

/// Runs every `(N, l+/l-)` combination of the request and collects the plotted quantity.
pub fn figure_table(req: &FigureRequest) -> Result<Table> {
    let (ns, ls, ks) = figure_defaults(req.id)?;
    let ns = req.n_particles.map_or(ns, |n| vec![n]);
    let ls = req.l_ratios.clone().unwrap_or(ls);
    let ks = req.ks.clone().unwrap_or(ks);
    for &l in &ls {
        check_ratio(l)?;
    }
    let prec = Precision::new(req.precision_bits)?;
    let mut table = Table::new(figure_columns(req.id)?);
    for &n in &ns {
        for &l in &ls {
            let p = ModelParams::from_l_ratio(n, l)?;
            let run = fermion_run::<BigReal>(&p, req.m_max, prec)?;
            let rows = figure_rows(req.id, &p, &run.spectrum, &ks)?;
            for mut r in rows {
                let mut row = vec![n.to_string(), fmt_f64(l)];
                row.append(&mut r);
                table.push(row);
            }
        }
    }
    Ok(table)
}

/// Rows for one spectrum, without the leading `n, l_ratio` cells.
pub fn figure_rows<T: Real>(id: u8, p: &ModelParams, spec: &NaturalSpectrum<T>, ks: &[usize]) -> Result<Vec<Vec<String>>> {
    let n = p.n_particles();
    let mut rows = Vec::new();
    match id {
        1 => {
            for k in 0..spec.len() {
                let lam = &spec.occupations[k];
                let lg = if lam.is_zero() { f64::NEG_INFINITY } else { lam.log10().to_f64() };
                rows.push(vec![
                    k.to_string(),
                    lam.to_decimal(),
                    fmt_f64(lg),
                    spec.parities[k].as_str().into(),
                    if k < n { "1" } else { "0" }.into(),
                ]);
            }
        }
        2 => {
            let beta = effective_oscillator(p)?.beta_homega;
            for (k, v) in boltzmann_series(spec, n) {
                rows.push(vec![k.to_string(), fmt_f64(v), fmt_f64(beta)]);
            }
        }
        3 => {
            for &k in ks.iter().filter(|&&k| k < spec.len()) {
                let start = spec.dominant[k] % 2;
                for m in (start..spec.m_max()).step_by(2) {
                    let z = spec.zeta(k, m);
                    let lg = if z.is_zero() { f64::NEG_INFINITY } else { z.abs().log10().to_f64() };
                    rows.push(vec![
                        k.to_string(),
                        m.to_string(),
                        (m as i64 - k as i64).to_string(),
                        z.to_decimal(),
                        fmt_f64(lg),
                    ]);
                }
            }
        }
        4 => {
            let reference = effective_oscillator(p)?.beta_homega / (4.0 * (n as f64 - 1.0).max(1.0));
            for &k in ks.iter().filter(|&&k| k < spec.len()) {
                for (d, v) in gaussian_series(spec, k) {
                    rows.push(vec![k.to_string(), d.to_string(), fmt_f64(v), fmt_f64(reference)]);
                }
            }
        }
        5 => {
            let alpha = if n >= 2 { Some(alpha_root(&h_coefficients(p)?)?) } else { None };
            let (are, aim) = alpha.map_or((f64::NAN, f64::NAN), |a| (a.re, a.im));
            for &k in ks.iter().filter(|&&k| k < spec.len()) {
                let series = exponential_series(spec, k);
                let mean = running_mean(&series, RUNNING_WINDOW);
                for &(d, v) in &series {
                    let quad = exponential_decay_quadratic(spec, k, k - d)?;
                    let rm = mean.iter().find(|p| p.0 == d).map_or(f64::NAN, |p| p.1);
                    rows.push(vec![
                        k.to_string(),
                        d.to_string(),
                        fmt_f64(quad),
                        fmt_f64(v),
                        fmt_f64(rm),
                        fmt_f64(are),
                        fmt_f64(aim),
                    ]);
                }
            }
        }
        _ => return Err(Error::Domain(format!("figure id must be 1..5, got {id}"))),
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn near_unit_ratio_is_rejected() {
        let req = FigureRequest {
            id: 1,
            n_particles: None,
            l_ratios: Some(vec![1.0 + 1e-9]),
            ks: None,
            m_max: 50,
            precision_bits: 128,
        };
        assert!(matches!(figure_table(&req), Err(Error::Domain(_))));
    }

    #[test]
    fn unknown_id() {
        assert!(figure_defaults(6).is_err());
        assert!(figure_columns(0).is_err());
    }

    #[test]
    fn small_figure_two() {
        let req = FigureRequest {
            id: 2,
            n_particles: Some(3),
            l_ratios: None,
            ks: None,
            m_max: 40,
            precision_bits: 128,
        };
        let t = figure_table(&req).unwrap();
        assert_eq!(t.columns[3], "estimate");
        assert!(t.len() > 20);
        let beta: f64 = t.rows[0][4].parse().unwrap();
        assert!((beta - 4.5095).abs() < 1e-3);
    }
}
