//! Natural occupation numbers and orbitals from the truncated density matrix.

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{jacobi_eigh, Eigen, Precision, Real, SymmetricMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(m: usize) -> Parity {
        if m % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

/// Descending occupations with parity labels and expansion coefficients `ζ_m^{(k)}`.
#[derive(Clone, Debug)]
pub struct NaturalSpectrum<T> {
    pub occupations: Vec<T>,
    pub parities: Vec<Parity>,
    /// `vectors[k][m] = ζ_m^{(k)}`, exactly zero off the parity of `k`.
    pub vectors: Vec<Vec<T>>,
    /// Basis index of the largest `|ζ_m^{(k)}|`.
    pub dominant: Vec<usize>,
    /// `true` where `λ_k` is below the resolution floor of its diagonal block.
    pub below_floor: Vec<bool>,
    pub n_particles: usize,
    pub precision: Precision,
}

impl<T: Real> NaturalSpectrum<T> {
    pub fn len(&self) -> usize {
        self.occupations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.occupations.is_empty()
    }

    pub fn m_max(&self) -> usize {
        self.vectors.first().map_or(0, Vec::len)
    }

    pub fn trace(&self) -> T {
        let mut acc = T::zero(self.precision);
        for l in &self.occupations {
            acc += l;
        }
        acc
    }

    /// `ζ_m^{(k)}` below this magnitude carries no significant digits.
    pub fn vector_floor(&self) -> T {
        T::from_f64(2f64.powi(self.precision.tolerance_log2(32)), self.precision)
    }

    pub fn zeta(&self, k: usize, m: usize) -> &T {
        &self.vectors[k][m]
    }
}

struct Entry<T> {
    value: T,
    parity: Parity,
    vector: Vec<T>,
    dominant: usize,
    below_floor: bool,
}

fn block_entries<T: Real>(
    mat: &SymmetricMatrix<T>,
    eig: Eigen<T>,
    indices: &[usize],
    parity: Parity,
) -> Vec<Entry<T>> {
    let prec = mat.precision();
    let dim = mat.dim();
    let slack = T::from_f64(2f64.powi(prec.tolerance_log2(32)), prec);
    let mut scale = T::zero(prec);
    for d in mat.diagonal() {
        scale = scale.max_of(d.abs());
    }
    let clip = slack.clone() * &scale;
    eig.values
        .into_iter()
        .zip(eig.vectors)
        .map(|(value, block_vec)| {
            let (mut arg, mut best) = (0usize, T::zero(prec));
            for (i, c) in block_vec.iter().enumerate() {
                let a = c.abs();
                if a > best {
                    best = a;
                    arg = i;
                }
            }
            let flip = block_vec[arg].is_sign_negative();
            let mut vector = vec![T::zero(prec); dim];
            for (i, c) in block_vec.into_iter().enumerate() {
                vector[indices[i]] = if flip { -c } else { c };
            }
            let dominant = indices[arg];
            let floor = slack.clone() * &mat.get(dominant, dominant).abs();
            let below_floor = value <= floor;
            let value = if value.is_sign_negative() && value.abs() <= clip { T::zero(prec) } else { value };
            Entry { value, parity, vector, dominant, below_floor }
        })
        .collect()
}

/// Diagonalizes the even and odd blocks concurrently and merges them in descending order.
///
/// Ties are broken by parity (even first), then by ascending dominant index.
pub fn natural_spectrum<T: Real>(mat: &SymmetricMatrix<T>, n_particles: usize) -> Result<NaturalSpectrum<T>> {
    let dim = mat.dim();
    for i in 0..dim {
        for j in (i + 1..dim).step_by(2) {
            if !mat.get(i, j).is_zero() {
                return Err(Error::Domain(format!(
                    "entry ({i}, {j}) couples opposite parities; expected a parity-banded matrix"
                )));
            }
        }
    }
    let even: Vec<usize> = (0..dim).step_by(2).collect();
    let odd: Vec<usize> = (1..dim).step_by(2).collect();
    let (e_even, e_odd) = rayon::join(
        || jacobi_eigh(&mat.principal_submatrix(&even)),
        || {
            if odd.is_empty() {
                Ok(None)
            } else {
                jacobi_eigh(&mat.principal_submatrix(&odd)).map(Some)
            }
        },
    );
    let mut entries = block_entries(mat, e_even?, &even, Parity::Even);
    if let Some(e) = e_odd? {
        entries.extend(block_entries(mat, e, &odd, Parity::Odd));
    }
    let tie_order = |a: &Entry<T>, b: &Entry<T>| {
        match (a.parity, b.parity) {
            (Parity::Even, Parity::Odd) => Ordering::Less,
            (Parity::Odd, Parity::Even) => Ordering::Greater,
            _ => Ordering::Equal,
        }
        .then_with(|| a.dominant.cmp(&b.dominant))
    };
    entries.sort_by(|a, b| b.value.total_cmp_real(&a.value).then_with(|| tie_order(a, b)));
    let mut spec = NaturalSpectrum {
        occupations: Vec::with_capacity(dim),
        parities: Vec::with_capacity(dim),
        vectors: Vec::with_capacity(dim),
        dominant: Vec::with_capacity(dim),
        below_floor: Vec::with_capacity(dim),
        n_particles,
        precision: mat.precision(),
    };
    for e in entries {
        spec.occupations.push(e.value);
        spec.parities.push(e.parity);
        spec.vectors.push(e.vector);
        spec.dominant.push(e.dominant);
        spec.below_floor.push(e.below_floor);
    }
    Ok(spec)
}
