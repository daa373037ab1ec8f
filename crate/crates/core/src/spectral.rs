//! Dense Hermitian linear algebra on small complex matrices.
//!
//! The eigendecomposition is delegated to nalgebra's Hermitian solver; this
//! module adds the tolerances that turn it into PSD square roots and base-2
//! von Neumann entropies, plus Toeplitz/circulant detectors.

use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::C64;

/// Input asymmetry accepted (and symmetrized away) by [`hermitian_eig`].
pub const HERMITIAN_TOLERANCE: f64 = 1e-12;
/// Eigenvalues in `[-PSD_TOLERANCE, 0)` are rounding noise and get clamped.
pub const PSD_TOLERANCE: f64 = 1e-10;
/// Eigenvalues below this contribute nothing to an entropy.
pub const ENTROPY_CUTOFF: f64 = 1e-15;
pub const TRACE_TOLERANCE: f64 = 1e-10;
pub const STRUCTURE_TOLERANCE: f64 = 1e-12;

const MAX_SWEEPS_PER_DIM: usize = 1000;

/// Eigenvalues in descending order with the matching unit eigenvectors as
/// columns.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianSpectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: DMatrix<C64>,
}

impl HermitianSpectrum {
    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn min_eigenvalue(&self) -> f64 {
        *self.eigenvalues.last().expect("nonempty spectrum")
    }

    /// `V f(diag(lambda)) V^H`.
    pub fn reconstruct_with<F: Fn(f64) -> f64>(&self, f: F) -> DMatrix<C64> {
        let mut scaled = self.eigenvectors.clone();
        for (mut col, &lambda) in scaled.column_iter_mut().zip(&self.eigenvalues) {
            col *= C64::new(f(lambda), 0.0);
        }
        scaled * self.eigenvectors.adjoint()
    }

    pub fn reconstruct(&self) -> DMatrix<C64> {
        self.reconstruct_with(|x| x)
    }
}

pub fn hermitian_deviation(a: &DMatrix<C64>) -> f64 {
    let n = a.nrows();
    let mut worst = 0.0f64;
    for j in 0..n {
        for k in j..n {
            worst = worst.max((a[(j, k)] - a[(k, j)].conj()).norm());
        }
    }
    worst
}

pub fn hermitian_eig(a: &DMatrix<C64>) -> Result<HermitianSpectrum> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch {
            expected: a.nrows(),
            found: a.ncols(),
        });
    }
    let deviation = hermitian_deviation(a);
    if deviation > HERMITIAN_TOLERANCE {
        return Err(Error::NotHermitian { deviation });
    }
    let n = a.nrows();
    let symmetric = (a + a.adjoint()) * C64::new(0.5, 0.0);
    let eig = SymmetricEigen::try_new(symmetric, f64::EPSILON, MAX_SWEEPS_PER_DIM * n.max(1))
        .ok_or(Error::NoConvergence)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
    let eigenvalues = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let eigenvectors = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    Ok(HermitianSpectrum {
        eigenvalues,
        eigenvectors,
    })
}

fn check_psd(spectrum: &HermitianSpectrum) -> Result<()> {
    let min = spectrum.min_eigenvalue();
    if min < -PSD_TOLERANCE {
        Err(Error::NotPsd {
            min_eigenvalue: min,
        })
    } else {
        Ok(())
    }
}

/// Spectrum of a Hermitian circulant matrix: the eigenvectors are the DFT
/// columns `v_k[j] = exp(2 pi i j k / n) / sqrt(n)` and the eigenvalues the DFT
/// of the first row.
///
/// Unlike the dense solver, the eigenvectors carry no error in the near-null
/// subspace, so functions of the matrix keep an exactly constant diagonal.
pub fn circulant_spectrum(a: &DMatrix<C64>) -> Result<HermitianSpectrum> {
    let deviation = hermitian_deviation(a);
    if deviation > HERMITIAN_TOLERANCE {
        return Err(Error::NotHermitian { deviation });
    }
    let n = a.nrows();
    let root_n = (n as f64).sqrt();
    let phase = |j: usize, k: usize| std::f64::consts::TAU * ((j * k) % n) as f64 / n as f64;
    let mut pairs: Vec<(f64, usize)> = (0..n)
        .map(|k| {
            let lambda: C64 = (0..n).map(|d| a[(0, d)] * C64::cis(phase(d, k))).sum();
            (lambda.re, k)
        })
        .collect();
    pairs.sort_by(|x, y| y.0.total_cmp(&x.0).then(x.1.cmp(&y.1)));
    let eigenvectors = DMatrix::from_fn(n, n, |j, c| C64::cis(phase(j, pairs[c].1)) / root_n);
    Ok(HermitianSpectrum {
        eigenvalues: pairs.iter().map(|p| p.0).collect(),
        eigenvectors,
    })
}

/// PSD square root together with the spectrum it was built from. Circulant
/// inputs are diagonalized by the DFT, everything else by the dense solver.
pub fn matrix_sqrt_with_spectrum(a: &DMatrix<C64>) -> Result<(DMatrix<C64>, HermitianSpectrum)> {
    let spectrum = if a.is_square() && a.nrows() > 0 && structure_check(a).is_circulant {
        circulant_spectrum(a)?
    } else {
        hermitian_eig(a)?
    };
    check_psd(&spectrum)?;
    let root = spectrum.reconstruct_with(|x| x.max(0.0).sqrt());
    // Exact Hermiticity of the result.
    let root = (&root + root.adjoint()) * C64::new(0.5, 0.0);
    Ok((root, spectrum))
}

pub fn matrix_sqrt(a: &DMatrix<C64>) -> Result<DMatrix<C64>> {
    matrix_sqrt_with_spectrum(a).map(|(root, _)| root)
}

/// `-sum lambda log2 lambda` over eigenvalues above [`ENTROPY_CUTOFF`].
pub fn entropy_bits(eigenvalues: &[f64]) -> f64 {
    let h: f64 = eigenvalues
        .iter()
        .filter(|&&x| x > ENTROPY_CUTOFF)
        .map(|&x| -x * x.log2())
        .sum();
    h.max(0.0)
}

/// Base-2 von Neumann entropy of a unit-trace PSD matrix.
pub fn von_neumann_entropy(rho: &DMatrix<C64>) -> Result<f64> {
    let trace = rho.trace();
    if (trace.re - 1.0).abs() > TRACE_TOLERANCE || trace.im.abs() > TRACE_TOLERANCE {
        return Err(Error::NotNormalized { trace: trace.re });
    }
    let spectrum = hermitian_eig(rho)?;
    check_psd(&spectrum)?;
    Ok(entropy_bits(&spectrum.eigenvalues))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StructureReport {
    pub is_toeplitz: bool,
    pub is_circulant: bool,
    pub max_toeplitz_dev: f64,
    pub max_circulant_dev: f64,
}

pub fn structure_check(a: &DMatrix<C64>) -> StructureReport {
    let n = a.nrows();
    let mut toeplitz = 0.0f64;
    let mut circulant = 0.0f64;
    for j in 0..n {
        for k in 0..a.ncols() {
            let s = j.min(k);
            toeplitz = toeplitz.max((a[(j, k)] - a[(j - s, k - s)]).norm());
            let wrapped = (k + n - j) % n;
            circulant = circulant.max((a[(j, k)] - a[(0, wrapped)]).norm());
        }
    }
    StructureReport {
        is_toeplitz: toeplitz < STRUCTURE_TOLERANCE,
        is_circulant: circulant < STRUCTURE_TOLERANCE,
        max_toeplitz_dev: toeplitz,
        max_circulant_dev: circulant,
    }
}

/// Largest entry modulus of `a - b`.
pub fn max_abs_diff(a: &DMatrix<C64>, b: &DMatrix<C64>) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}
