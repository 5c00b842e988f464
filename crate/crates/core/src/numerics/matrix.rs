use super::real::{Precision, Real};

/// Dense symmetric matrix with packed upper-triangle storage.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricMatrix<T> {
    dim: usize,
    data: Vec<T>,
    precision: Precision,
}

#[inline]
fn packed_index(dim: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i * (2 * dim - i + 1) / 2 + (j - i)
}

impl<T: Real> SymmetricMatrix<T> {
    /// Zero matrix. Panics if `dim == 0`.
    pub fn zeros(dim: usize, precision: Precision) -> Self {
        assert!(dim >= 1, "symmetric matrix needs dim >= 1");
        let data = vec![T::zero(precision); dim * (dim + 1) / 2];
        SymmetricMatrix { dim, data, precision }
    }

    /// Builds the matrix from `f(i, j)` evaluated on `i <= j`.
    pub fn from_fn<F: FnMut(usize, usize) -> T>(dim: usize, precision: Precision, mut f: F) -> Self {
        assert!(dim >= 1, "symmetric matrix needs dim >= 1");
        let mut data = Vec::with_capacity(dim * (dim + 1) / 2);
        for i in 0..dim {
            for j in i..dim {
                data.push(f(i, j));
            }
        }
        SymmetricMatrix { dim, data, precision }
    }

    pub fn identity(dim: usize, precision: Precision) -> Self {
        Self::from_fn(dim, precision, |i, j| {
            if i == j {
                T::one(precision)
            } else {
                T::zero(precision)
            }
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[packed_index(self.dim, i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        let k = packed_index(self.dim, i, j);
        self.data[k] = value;
    }

    pub(crate) fn packed_mut(&mut self) -> &mut [T] {
        &mut self.data
    }

    pub fn diagonal(&self) -> Vec<T> {
        (0..self.dim).map(|i| self.get(i, i).clone()).collect()
    }

    pub fn trace(&self) -> T {
        let mut acc = T::zero(self.precision);
        for i in 0..self.dim {
            acc += self.get(i, i);
        }
        acc
    }

    pub fn frobenius_norm(&self) -> T {
        let mut acc = T::zero(self.precision);
        for i in 0..self.dim {
            for j in i..self.dim {
                let v = self.get(i, j);
                let sq = v.clone() * v;
                acc += &sq;
                if i != j {
                    acc += &sq;
                }
            }
        }
        acc.sqrt()
    }

    /// Principal submatrix on the given (strictly increasing) indices.
    pub fn principal_submatrix(&self, indices: &[usize]) -> Self {
        Self::from_fn(indices.len().max(1), self.precision, |a, b| {
            self.get(indices[a], indices[b]).clone()
        })
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|i| {
                let mut acc = T::zero(self.precision);
                for (j, vj) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() {
                        acc.add_mul(a, vj);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<T>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j).clone()).collect())
            .collect()
    }

    pub fn map<U: Real, F: FnMut(&T) -> U>(&self, precision: Precision, f: F) -> SymmetricMatrix<U> {
        SymmetricMatrix { dim: self.dim, data: self.data.iter().map(f).collect(), precision }
    }
}
