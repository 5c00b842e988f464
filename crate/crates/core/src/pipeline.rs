//! Build, assemble and diagonalize in one call.

use std::time::{Duration, Instant};

use crate::error::Result;
use crate::fermion::{fermion_rdo_matrix, RdoMatrix};
use crate::model::ModelParams;
use crate::numerics::{Precision, Real};
use crate::spectrum::{natural_spectrum, NaturalSpectrum};

/// Truncated matrix, its natural spectrum and wall-clock timings.
#[derive(Clone, Debug)]
pub struct FermionRun<T> {
    pub matrix: RdoMatrix<T>,
    pub spectrum: NaturalSpectrum<T>,
    pub assembly_time: Duration,
    pub diagonalization_time: Duration,
}

pub fn fermion_run<T: Real>(p: &ModelParams, m_max: usize, prec: Precision) -> Result<FermionRun<T>> {
    let t0 = Instant::now();
    let matrix = fermion_rdo_matrix::<T>(p, m_max, prec)?;
    let assembly_time = t0.elapsed();
    let t1 = Instant::now();
    let spectrum = natural_spectrum(&matrix.matrix, p.n_particles())?;
    Ok(FermionRun { matrix, spectrum, assembly_time, diagonalization_time: t1.elapsed() })
}
