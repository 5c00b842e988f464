//! CSV and JSON output. Every CSV starts with a single `#` line recording how it was produced.

use std::io::Write;

use crate::boson::BosonSpectrum;
use crate::error::Result;
use crate::numerics::Real;
use crate::spectrum::NaturalSpectrum;

/// Column names plus rows of already formatted cells.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Table { columns: columns.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Cells of the named column, if present.
    pub fn column(&self, name: &str) -> Option<Vec<&str>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[i].as_str()).collect())
    }
}

/// Writes `# provenance`, the header row and all rows.
pub fn write_csv<W: Write>(mut w: W, provenance: &str, table: &Table) -> Result<()> {
    let line = provenance.replace(['\n', '\r'], " ");
    writeln!(w, "# {line}")?;
    let mut out = csv::Writer::from_writer(w);
    out.write_record(&table.columns)?;
    for row in &table.rows {
        out.write_record(row)?;
    }
    out.flush()?;
    Ok(())
}

/// Shortest round-trip form of an `f64`; `inf`, `-inf`, `nan` spelled out.
pub fn fmt_f64(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:e}")
    }
}

/// Decimal string of `10^log10` with 16 significant digits, valid far below the double range.
pub fn decimal_from_log10(log10: f64) -> String {
    if log10 == f64::NEG_INFINITY {
        return "0".into();
    }
    let mut e = log10.floor();
    let mut mant = 10f64.powf(log10 - e);
    if mant >= 9.999_999_999_999_999_5 {
        mant /= 10.0;
        e += 1.0;
    }
    format!("{mant:.15}e{}", e as i64)
}

fn log10_of<T: Real>(x: &T) -> f64 {
    if x.is_zero() || x.is_sign_negative() {
        f64::NEG_INFINITY
    } else {
        x.log10().to_f64()
    }
}

/// Columns `k, lambda, lambda_log10, partial_sum`; occupations under `1e-300` are rebuilt from their logarithm.
pub fn boson_table(spec: &BosonSpectrum) -> Table {
    let mut t = Table::new(["k", "lambda", "lambda_log10", "partial_sum"]);
    for (k, &lam) in spec.occupations.iter().enumerate() {
        let lg = spec.log10(k);
        let value = if lam >= 1e-300 || lam == 0.0 && lg == f64::NEG_INFINITY {
            fmt_f64(lam)
        } else {
            decimal_from_log10(lg)
        };
        t.push(vec![k.to_string(), value, fmt_f64(lg), fmt_f64(spec.partial_sum(k))]);
    }
    t
}

/// Columns `k, lambda, lambda_log10, parity, dominant, below_floor` at full working precision.
pub fn spectrum_table<T: Real>(spec: &NaturalSpectrum<T>) -> Table {
    let mut t = Table::new(["k", "lambda", "lambda_log10", "parity", "dominant", "below_floor"]);
    for k in 0..spec.len() {
        let lam = &spec.occupations[k];
        t.push(vec![
            k.to_string(),
            lam.to_decimal(),
            fmt_f64(log10_of(lam)),
            spec.parities[k].as_str().into(),
            spec.dominant[k].to_string(),
            spec.below_floor[k].to_string(),
        ]);
    }
    t
}

/// Columns `k, m, zeta` for the listed orbitals. Entries of the opposite parity are exact zeros and are omitted.
pub fn vectors_table<T: Real>(spec: &NaturalSpectrum<T>, ks: &[usize]) -> Table {
    let mut t = Table::new(["k", "m", "zeta"]);
    for &k in ks.iter().filter(|&&k| k < spec.len()) {
        let start = spec.dominant[k] % 2;
        for m in (start..spec.m_max()).step_by(2) {
            t.push(vec![k.to_string(), m.to_string(), spec.vectors[k][m].to_decimal()]);
        }
    }
    t
}

/// Pretty JSON with a trailing newline.
pub fn write_json<W: Write, S: serde::Serialize + ?Sized>(mut w: W, value: &S) -> Result<()> {
    serde_json::to_writer_pretty(&mut w, value).map_err(|e| crate::Error::Io(e.to_string()))?;
    writeln!(w)?;
    Ok(())
}
