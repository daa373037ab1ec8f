//! Minimum-error discrimination figures of merit for equiprobable pure
//! states, all read off the PSD square root of the Gram matrix.
//!
//! With `R = G^{1/2}`:
//!
//! - the square-root measurement succeeds with `(1/M) sum_m R_mm^2`;
//! - it is optimal iff `R_mm` is constant in `m`;
//! - the optimal success probability lies between `(tr R / M)^2` and
//!   `(tr R / M)^2 + sqrt(gamma_max) * ||q - u||_1`, where `q_m = R_mm / tr R`,
//!   `u_m = 1/M` and `gamma_max` is the largest eigenvalue of `G`.

use serde::Serialize;

use crate::alphabet::GramMatrix;
use crate::error::{Error, Result};
use crate::spectral::matrix_sqrt_with_spectrum;

/// Maximum spread of the root diagonal still counted as constant.
pub const OPTIMALITY_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscriminationReport {
    pub p_srm: f64,
    /// Diagonal of `G^{1/2}`; entry `m` is also the SRM overlap
    /// `<mu_m|alpha_m>`.
    pub sqrt_diag: Vec<f64>,
    pub optimality_gap: f64,
    pub srm_is_optimal: bool,
    pub p_lower: f64,
    /// Upper bound clamped to 1.
    pub p_upper: f64,
    /// Upper bound before clamping.
    pub p_upper_raw: f64,
    pub gamma_max: f64,
    pub q_vector: Vec<f64>,
    /// `||q - u||_1`, not halved.
    pub tv_distance_term: f64,
}

/// SRM success probability and the diagonal of `G^{1/2}`.
pub fn srm_success(gram: &GramMatrix) -> Result<(f64, Vec<f64>)> {
    let (root, _) = matrix_sqrt_with_spectrum(gram.entries())?;
    let diag = root_diagonal(&root);
    Ok((mean_square(&diag), diag))
}

/// Spread `max - min` of the root diagonal and whether it is within
/// [`OPTIMALITY_TOLERANCE`]. An empty slice has zero spread.
pub fn srm_optimality_gap(sqrt_diag: &[f64]) -> (f64, bool) {
    if sqrt_diag.is_empty() {
        return (0.0, true);
    }
    let (lo, hi) = sqrt_diag
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
            (lo.min(x), hi.max(x))
        });
    let gap = hi - lo;
    (gap, gap <= OPTIMALITY_TOLERANCE)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SentisBounds {
    pub p_lower: f64,
    pub p_upper: f64,
    pub p_upper_raw: f64,
    pub gamma_max: f64,
    pub q_vector: Vec<f64>,
    pub tv_distance_term: f64,
}

pub fn sentis_bounds(gram: &GramMatrix) -> Result<SentisBounds> {
    discriminate(gram).map(|r| SentisBounds {
        p_lower: r.p_lower,
        p_upper: r.p_upper,
        p_upper_raw: r.p_upper_raw,
        gamma_max: r.gamma_max,
        q_vector: r.q_vector,
        tv_distance_term: r.tv_distance_term,
    })
}

/// Everything at once, from a single eigendecomposition.
pub fn discriminate(gram: &GramMatrix) -> Result<DiscriminationReport> {
    let m = gram.dim() as f64;
    let (root, spectrum) = matrix_sqrt_with_spectrum(gram.entries())?;
    let sqrt_diag = root_diagonal(&root);
    let p_srm = mean_square(&sqrt_diag);
    let (optimality_gap, srm_is_optimal) = srm_optimality_gap(&sqrt_diag);

    let trace: f64 = sqrt_diag.iter().sum();
    let p_lower = (trace / m).powi(2);
    let q_vector: Vec<f64> = sqrt_diag.iter().map(|d| d / trace).collect();
    let tv_distance_term: f64 = q_vector.iter().map(|q| (q - 1.0 / m).abs()).sum();
    let gamma_max = spectrum.max_eigenvalue();
    let p_upper_raw = p_lower + gamma_max.max(0.0).sqrt() * tv_distance_term;

    Ok(DiscriminationReport {
        p_srm,
        sqrt_diag,
        optimality_gap,
        srm_is_optimal,
        p_lower,
        p_upper: p_upper_raw.min(1.0),
        p_upper_raw,
        gamma_max,
        q_vector,
        tv_distance_term,
    })
}

/// Optimal success probability for two equiprobable pure states with overlap
/// modulus `c`.
pub fn helstrom_binary(overlap_modulus: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&overlap_modulus) {
        return Err(Error::OutOfRange {
            value: overlap_modulus,
            lo: 0.0,
            hi: 1.0,
        });
    }
    Ok(0.5 * (1.0 + (1.0 - overlap_modulus * overlap_modulus).sqrt()))
}

fn root_diagonal(root: &nalgebra::DMatrix<crate::C64>) -> Vec<f64> {
    root.diagonal().iter().map(|z| z.re.max(0.0)).collect()
}

fn mean_square(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>() / v.len() as f64
}
