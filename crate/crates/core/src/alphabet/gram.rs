use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::C64;

/// Tolerance used when accepting an externally supplied matrix as a Gram
/// matrix.
pub const GRAM_TOLERANCE: f64 = 1e-12;

/// Matrix of pairwise overlaps `G[j][k] = <alpha_j|alpha_k>` of a pure-state
/// alphabet.
///
/// Hermitian with unit diagonal. Positive semidefiniteness is checked lazily
/// by the spectral routines that need it.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix {
    entries: DMatrix<C64>,
}

impl GramMatrix {
    /// Builds the Hermitian Toeplitz matrix with `G[j][k] = g[j - k]` for
    /// `j >= k` and `conj(g[k - j])` otherwise. The diagonal is set to exactly
    /// one regardless of `generator[0]`.
    pub fn from_toeplitz(generator: &[C64]) -> Self {
        let m = generator.len();
        let entries = DMatrix::from_fn(m, m, |j, k| match j.cmp(&k) {
            std::cmp::Ordering::Equal => C64::new(1.0, 0.0),
            std::cmp::Ordering::Greater => generator[j - k],
            std::cmp::Ordering::Less => generator[k - j].conj(),
        });
        Self { entries }
    }

    /// Wraps a dense matrix after checking squareness, Hermiticity and the
    /// unit diagonal.
    pub fn from_matrix(entries: DMatrix<C64>) -> Result<Self> {
        let (rows, cols) = entries.shape();
        if rows != cols {
            return Err(Error::DimensionMismatch {
                expected: rows,
                found: cols,
            });
        }
        let deviation = crate::spectral::hermitian_deviation(&entries);
        if deviation > GRAM_TOLERANCE {
            return Err(Error::NotHermitian { deviation });
        }
        for i in 0..rows {
            let d = entries[(i, i)];
            if (d - C64::new(1.0, 0.0)).norm() > GRAM_TOLERANCE {
                return Err(Error::InvalidParameter {
                    name: "gram diagonal",
                    value: d.re,
                    range: "{1}",
                });
            }
        }
        Ok(Self { entries })
    }

    pub fn identity(m: usize) -> Self {
        Self {
            entries: DMatrix::identity(m, m),
        }
    }

    /// Gram matrix of `m` copies of the same state.
    pub fn all_ones(m: usize) -> Self {
        Self {
            entries: DMatrix::from_element(m, m, C64::new(1.0, 0.0)),
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<C64> {
        &self.entries
    }

    pub fn get(&self, j: usize, k: usize) -> C64 {
        self.entries[(j, k)]
    }

    /// First column `g[d] = G[d][0]`, the Toeplitz generator.
    pub fn generator(&self) -> Vec<C64> {
        self.entries.column(0).iter().copied().collect()
    }

    pub fn into_inner(self) -> DMatrix<C64> {
        self.entries
    }
}
