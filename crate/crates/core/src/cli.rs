//! Command-line front end: argument parsing, config resolution, command execution and exit codes.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::boson::{boson_spectrum, DEFAULT_K_MAX};
use crate::error::{Error, Result};
use crate::export::{boson_table, spectrum_table, vectors_table, write_csv, write_json, Table};
use crate::fermion::{fermion_rdo_matrix, QuadratureOracle};
use crate::figure::{figure_table, FigureRequest};
use crate::model::{effective_oscillator, gaussian_exponent, rdo_exponent, ModelParams};
use crate::numerics::{BigReal, Precision};
use crate::pipeline::fermion_run;

pub const DEFAULT_M_MAX: usize = 500;
pub const DEFAULT_FERMION_BITS: u32 = 512;
pub const ALLOWED_BITS: [u32; 5] = [53, 128, 256, 512, 1024];
pub const ORACLE_TOLERANCE: f64 = 1e-8;
/// Environment variable overriding the default working precision of fermion runs.
pub const BITS_ENV: &str = "HARMONIUM_BITS";

pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_CONVERGENCE: i32 = 3;
pub const EXIT_PRECISION: i32 = 4;
pub const EXIT_ORACLE: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "harmonium", version, about = "Natural occupations of the N-harmonium one-particle density operator")]
pub struct Cli {
    /// JSON file with default values for any of the model and run options.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print every derived constant of the model as JSON.
    Params(ModelArgs),
    /// Bosonic Boltzmann spectrum as CSV.
    Boson {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        k_max: Option<usize>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Fermionic natural spectrum (and optionally orbitals) as CSV.
    Fermion {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        run: RunArgs,
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Write expansion coefficients to this file.
        #[arg(long)]
        vectors: Option<PathBuf>,
        /// Orbitals to include in the vectors file (default: 0..=N).
        #[arg(long, value_delimiter = ',')]
        vectors_k: Option<Vec<usize>>,
        #[arg(long, conflicts_with = "vectors_k")]
        all_vectors: bool,
    },
    /// Dataset behind one of the five published plots.
    Figure {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=5))]
        id: u8,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        l_ratio: Option<Vec<f64>>,
        #[arg(long, value_delimiter = ',')]
        k: Option<Vec<usize>>,
        #[command(flatten)]
        run: RunArgs,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Compare ladder-assembled matrix elements with direct quadrature.
    Oracle {
        #[command(flatten)]
        model: ModelArgs,
        /// Compare all `m, n < block`.
        #[arg(long, default_value_t = 20)]
        block: usize,
        #[arg(long)]
        npoints: Option<usize>,
    },
}

#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    #[arg(long)]
    pub n: Option<usize>,
    /// l+/l-.
    #[arg(long, conflicts_with = "coupling")]
    pub l_ratio: Option<f64>,
    /// N D/(m ω²).
    #[arg(long)]
    pub coupling: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    #[arg(long)]
    pub mmax: Option<usize>,
    #[arg(long)]
    pub bits: Option<u32>,
}

/// Optional defaults read from `--config`.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub n_particles: Option<usize>,
    pub l_ratio: Option<f64>,
    pub coupling_ratio: Option<f64>,
    pub m_max: Option<usize>,
    pub precision_bits: Option<u32>,
    pub k_max: Option<usize>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| Error::Domain(format!("config {}: {e}", path.display())))
    }
}

/// Fully resolved settings of one invocation; serialized into every output header.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub n_particles: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l_ratio: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coupling_ratio: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m_max: Option<usize>,
    pub precision_bits: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_max: Option<usize>,
}

impl RunConfig {
    pub fn params(&self) -> Result<ModelParams> {
        match (self.l_ratio, self.coupling_ratio) {
            (Some(l), None) => ModelParams::from_l_ratio(self.n_particles, l),
            (None, Some(c)) => ModelParams::from_coupling(self.n_particles, c),
            _ => Err(Error::Domain("exactly one of --l-ratio and --coupling is required".into())),
        }
    }

    pub fn provenance(&self) -> String {
        let json = serde_json::to_string(self).unwrap_or_default();
        format!("harmonium {} {json}", env!("CARGO_PKG_VERSION"))
    }
}

pub fn check_bits(bits: u32) -> Result<Precision> {
    if !ALLOWED_BITS.contains(&bits) {
        return Err(Error::Domain(format!("precision must be one of {ALLOWED_BITS:?} bits, got {bits}")));
    }
    Precision::new(bits)
}

/// Default precision of fermion runs, honouring the environment override.
pub fn default_fermion_bits() -> Result<u32> {
    match std::env::var(BITS_ENV) {
        Ok(s) => s.trim().parse().map_err(|_| Error::Domain(format!("{BITS_ENV}={s} is not an integer"))),
        Err(_) => Ok(DEFAULT_FERMION_BITS),
    }
}

fn resolve_model(cmd: &str, m: &ModelArgs, cfg: &ConfigFile) -> Result<RunConfig> {
    let n_particles = m
        .n
        .or(cfg.n_particles)
        .ok_or_else(|| Error::Domain("particle number missing (--n)".into()))?;
    let (l_ratio, coupling_ratio) = match (m.l_ratio, m.coupling) {
        (Some(l), _) => (Some(l), None),
        (None, Some(c)) => (None, Some(c)),
        (None, None) => (cfg.l_ratio, cfg.coupling_ratio),
    };
    if l_ratio.is_some() == coupling_ratio.is_some() {
        return Err(Error::Domain("exactly one of --l-ratio and --coupling is required".into()));
    }
    Ok(RunConfig {
        command: cmd.into(),
        n_particles,
        l_ratio,
        coupling_ratio,
        m_max: None,
        precision_bits: 53,
        k_max: None,
    })
}

fn resolve_run(rc: &mut RunConfig, run: &RunArgs, cfg: &ConfigFile) -> Result<Precision> {
    let m_max = run.mmax.or(cfg.m_max).unwrap_or(DEFAULT_M_MAX);
    let bits = match run.bits.or(cfg.precision_bits) {
        Some(b) => b,
        None => default_fermion_bits()?,
    };
    rc.m_max = Some(m_max);
    rc.precision_bits = bits;
    check_bits(bits)
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    })
}

/// Everything the params command reports.
#[derive(Clone, Debug, Serialize)]
pub struct ParamsReport {
    pub n_particles: usize,
    pub l_ratio: f64,
    #[serde(rename = "ND_over_m_omega2")]
    pub coupling_ratio: f64,
    #[serde(rename = "A")]
    pub a_cap: f64,
    #[serde(rename = "B_N")]
    pub b_cap: f64,
    #[serde(rename = "a_N")]
    pub a_small: f64,
    #[serde(rename = "b_N")]
    pub b_small: f64,
    #[serde(rename = "c_N")]
    pub c_norm: f64,
    #[serde(rename = "L_N")]
    pub length: f64,
    /// `null` when infinite.
    pub beta_hbar_omega: Option<f64>,
    pub beta_infinite: bool,
    pub q: f64,
    #[serde(rename = "Z_eff")]
    pub z_eff: Option<f64>,
}

pub fn params_report(p: &ModelParams) -> Result<ParamsReport> {
    let g = gaussian_exponent(p)?;
    let r = rdo_exponent(&g, p.n_particles())?;
    let osc = effective_oscillator(p)?;
    let inf = osc.is_infinite();
    Ok(ParamsReport {
        n_particles: p.n_particles(),
        l_ratio: p.l_ratio(),
        coupling_ratio: p.coupling_ratio(),
        a_cap: g.a_cap,
        b_cap: g.b_cap,
        a_small: r.a_small,
        b_small: r.b_small,
        c_norm: r.c_norm,
        length: osc.length,
        beta_hbar_omega: (!inf).then_some(osc.beta_homega),
        beta_infinite: inf,
        q: osc.boltzmann_q,
        z_eff: (!inf).then_some(osc.z_eff),
    })
}

/// Result of comparing assembled and integrated matrix elements.
#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    pub n_particles: usize,
    pub l_ratio: f64,
    pub block: usize,
    pub npoints: usize,
    pub max_deviation: f64,
    pub worst_element: (usize, usize),
    pub tolerance: f64,
    pub pass: bool,
}

pub fn oracle_report(p: &ModelParams, block: usize, npoints: Option<usize>) -> Result<OracleReport> {
    let n = p.n_particles();
    if n > 3 {
        return Err(Error::Domain(format!("the quadrature oracle supports N <= 3, got {n}")));
    }
    if !(1..=21).contains(&block) {
        return Err(Error::Domain(format!("block must be in 1..=21, got {block}")));
    }
    let npoints = npoints.unwrap_or(2 * (2 * (block - 1) + 2 * (n - 1)).max(10));
    let dim = block.max(n).max(2);
    let mat = fermion_rdo_matrix::<f64>(p, dim, Precision::DOUBLE)?;
    let oracle = QuadratureOracle::new(p, npoints)?;
    let (mut worst, mut at) = (0.0f64, (0, 0));
    for i in 0..block {
        for j in i..block {
            let d = (mat.matrix.get(i, j) - oracle.element(i, j)).abs();
            if d > worst || d.is_nan() {
                worst = d;
                at = (i, j);
            }
        }
    }
    Ok(OracleReport {
        n_particles: n,
        l_ratio: p.l_ratio(),
        block,
        npoints,
        max_deviation: worst,
        worst_element: at,
        tolerance: ORACLE_TOLERANCE,
        pass: worst < ORACLE_TOLERANCE,
    })
}

/// Exit code of an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Domain(_) | Error::SingularModel(_) => EXIT_DOMAIN,
        Error::Convergence(_) => EXIT_CONVERGENCE,
        Error::Precision(_) => EXIT_PRECISION,
        _ => 1,
    }
}

/// Executes a parsed command line and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("harmonium: {e}");
            exit_code(&e)
        }
    }
}

fn execute(cli: Cli) -> Result<i32> {
    let cfg = match &cli.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    match cli.command {
        Command::Params(m) => {
            let rc = resolve_model("params", &m, &cfg)?;
            let report = params_report(&rc.params()?)?;
            write_json(io::stdout().lock(), &report)?;
        }
        Command::Boson { model, k_max, out } => {
            let mut rc = resolve_model("boson", &model, &cfg)?;
            let k_max = k_max.or(cfg.k_max).unwrap_or(DEFAULT_K_MAX);
            rc.k_max = Some(k_max);
            let spec = boson_spectrum(&rc.params()?, k_max)?;
            write_csv(output(out.as_deref())?, &rc.provenance(), &boson_table(&spec))?;
        }
        Command::Fermion { model, run, out, vectors, vectors_k, all_vectors } => {
            let mut rc = resolve_model("fermion", &model, &cfg)?;
            let prec = resolve_run(&mut rc, &run, &cfg)?;
            let p = rc.params()?;
            let m_max = rc.m_max.unwrap_or(DEFAULT_M_MAX);
            if m_max < 10 * p.n_particles() {
                eprintln!("warning: m_max = {m_max} is below 10 N = {}", 10 * p.n_particles());
            }
            let t0 = Instant::now();
            let r = fermion_run::<BigReal>(&p, m_max, prec)?;
            eprintln!(
                "trace defect {:.3e}, assembly {:.3?}, diagonalization {:.3?}, total {:.3?}",
                r.matrix.trace_defect,
                r.assembly_time,
                r.diagonalization_time,
                t0.elapsed()
            );
            let prov = rc.provenance();
            write_csv(output(out.as_deref())?, &prov, &spectrum_table(&r.spectrum))?;
            if let Some(path) = vectors {
                let ks: Vec<usize> = if all_vectors {
                    (0..r.spectrum.len()).collect()
                } else {
                    vectors_k.unwrap_or_else(|| (0..=p.n_particles()).collect())
                };
                write_csv(output(Some(&path))?, &prov, &vectors_table(&r.spectrum, &ks))?;
            }
        }
        Command::Figure { id, n, l_ratio, k, run, out } => {
            let mut rc = RunConfig {
                command: format!("figure {id}"),
                n_particles: n.or(cfg.n_particles).unwrap_or(0),
                l_ratio: None,
                coupling_ratio: None,
                m_max: None,
                precision_bits: 0,
                k_max: None,
            };
            let prec = resolve_run(&mut rc, &run, &cfg)?;
            let req = FigureRequest {
                id,
                n_particles: n.or(cfg.n_particles),
                l_ratios: l_ratio.or(cfg.l_ratio.map(|l| vec![l])),
                ks: k,
                m_max: rc.m_max.unwrap_or(DEFAULT_M_MAX),
                precision_bits: prec.bits(),
            };
            let t0 = Instant::now();
            let table: Table = figure_table(&req)?;
            eprintln!("figure {id}: {} rows in {:.3?}", table.len(), t0.elapsed());
            let prov = format!("harmonium {} {}", env!("CARGO_PKG_VERSION"), serde_json::to_string(&req).unwrap_or_default());
            write_csv(output(out.as_deref())?, &prov, &table)?;
        }
        Command::Oracle { model, block, npoints } => {
            let rc = resolve_model("oracle", &model, &cfg)?;
            let report = oracle_report(&rc.params()?, block, npoints)?;
            write_json(io::stdout().lock(), &report)?;
            if !report.pass {
                eprintln!(
                    "oracle deviation {:.3e} at {:?} exceeds {:e}",
                    report.max_deviation, report.worst_element, report.tolerance
                );
                return Ok(EXIT_ORACLE);
            }
        }
    }
    Ok(0)
}
