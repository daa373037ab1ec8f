//! Alphabet parameterizations and exact Gram-matrix construction.
//!
//! All three families produce Hermitian Toeplitz Gram matrices with unit
//! diagonal; PSK is additionally circulant. The carrier frequency never
//! appears: it cancels from every overlap, and the pulse duration only enters
//! through the product `delta_omega_t`.

mod fourier;
mod gram;

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

pub use fourier::{fourier_coefficients, FourierExpansion, NEGATIVE_COEFFICIENT_TOLERANCE};
pub use gram::{GramMatrix, GRAM_TOLERANCE};

use crate::error::{Error, Result};
use crate::C64;

/// `sin(x) / x` with the removable singularity filled in.
pub fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 - x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sin() / x
    }
}

pub(crate) fn validate_angle(name: &'static str, value: f64) -> Result<()> {
    if (0.0..TAU).contains(&value) {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            range: "[0, 2pi)",
        })
    }
}

fn validate_size(m: usize) -> Result<()> {
    if m >= 2 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "M",
            value: m as f64,
            range: "[2, inf)",
        })
    }
}

pub(crate) fn validate_photons(name: &'static str, value: f64) -> Result<()> {
    if value >= 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            range: "[0, inf)",
        })
    }
}

/// Overlap of two coherent states with `photons` photons each whose
/// amplitudes differ by the complex factor `z` (|z| <= 1):
/// `exp[-photons (1 - z)]`.
fn coherent_overlap(photons: f64, z: C64) -> C64 {
    (-(C64::new(1.0, 0.0) - z) * photons).exp()
}

/// Coherent frequency-shift keying with a rectangular pulse.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CfskParams {
    m: usize,
    delta_theta: f64,
    delta_omega_t: f64,
    total_photons: f64,
}

impl CfskParams {
    pub fn new(m: usize, delta_theta: f64, delta_omega_t: f64, total_photons: f64) -> Result<Self> {
        validate_size(m)?;
        validate_angle("delta_theta", delta_theta)?;
        validate_angle("delta_omega_t", delta_omega_t)?;
        validate_photons("total_photons", total_photons)?;
        Ok(Self {
            m,
            delta_theta,
            delta_omega_t,
            total_photons,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn delta_theta(&self) -> f64 {
        self.delta_theta
    }

    pub fn delta_omega_t(&self) -> f64 {
        self.delta_omega_t
    }

    pub fn total_photons(&self) -> f64 {
        self.total_photons
    }

    pub fn with_photons(&self, total_photons: f64) -> Result<Self> {
        Self::new(self.m, self.delta_theta, self.delta_omega_t, total_photons)
    }
}

/// Single-mode phase-shift keying with phases `2 pi m / M`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PskParams {
    m: usize,
    photons: f64,
}

impl PskParams {
    pub fn new(m: usize, photons: f64) -> Result<Self> {
        validate_size(m)?;
        validate_photons("photons", photons)?;
        Ok(Self { m, photons })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn photons(&self) -> f64 {
        self.photons
    }

    /// The same alphabet seen as CFSK with `delta_theta = 2 pi / M` and no
    /// frequency step.
    pub fn as_cfsk(&self) -> CfskParams {
        CfskParams {
            m: self.m,
            delta_theta: TAU / self.m as f64,
            delta_omega_t: 0.0,
            total_photons: self.photons,
        }
    }
}

/// How the per-index phase step of the dCFSK alphabet is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "mode", content = "value")]
pub enum PhaseOffsetMode {
    /// `delta_theta + delta_omega_t / 2`, the phase per index step of the
    /// rectangular-pulse CFSK overlap.
    #[default]
    CfskMatched,
    /// `delta_theta + pi / 2`; coincides with `CfskMatched` at
    /// `delta_omega_t = pi`.
    PaperHalfPi,
    /// Use the given step directly.
    Explicit(f64),
}

/// Discrete-mode CFSK: each symbol is a product of 2L+1 single-mode coherent
/// states whose energy fractions come from a Fourier expansion of the sinc
/// pulse shape.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DcfskParams {
    m: usize,
    order: usize,
    delta_theta: f64,
    delta_omega_t: f64,
    total_photons: f64,
    phase_offset_mode: PhaseOffsetMode,
}

impl DcfskParams {
    pub fn new(
        m: usize,
        order: usize,
        delta_theta: f64,
        delta_omega_t: f64,
        total_photons: f64,
        phase_offset_mode: PhaseOffsetMode,
    ) -> Result<Self> {
        validate_size(m)?;
        validate_angle("delta_theta", delta_theta)?;
        validate_angle("delta_omega_t", delta_omega_t)?;
        validate_photons("total_photons", total_photons)?;
        if let PhaseOffsetMode::Explicit(v) = phase_offset_mode {
            if !v.is_finite() {
                return Err(Error::InvalidParameter {
                    name: "phase_offset",
                    value: v,
                    range: "finite reals",
                });
            }
        }
        Ok(Self {
            m,
            order,
            delta_theta,
            delta_omega_t,
            total_photons,
            phase_offset_mode,
        })
    }

    /// dCFSK sharing the phase and frequency steps of a CFSK alphabet.
    pub fn from_cfsk(cfsk: &CfskParams, order: usize, mode: PhaseOffsetMode) -> Self {
        Self {
            m: cfsk.m,
            order,
            delta_theta: cfsk.delta_theta,
            delta_omega_t: cfsk.delta_omega_t,
            total_photons: cfsk.total_photons,
            phase_offset_mode: mode,
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Half-bandwidth L.
    pub fn order(&self) -> usize {
        self.order
    }

    /// Number of occupied modes, 2L+1.
    pub fn modes(&self) -> usize {
        2 * self.order + 1
    }

    pub fn delta_theta(&self) -> f64 {
        self.delta_theta
    }

    pub fn delta_omega_t(&self) -> f64 {
        self.delta_omega_t
    }

    pub fn total_photons(&self) -> f64 {
        self.total_photons
    }

    pub fn phase_offset_mode(&self) -> PhaseOffsetMode {
        self.phase_offset_mode
    }

    /// The phase step actually applied per symbol index.
    pub fn phase_step(&self) -> f64 {
        match self.phase_offset_mode {
            PhaseOffsetMode::CfskMatched => self.delta_theta + 0.5 * self.delta_omega_t,
            PhaseOffsetMode::PaperHalfPi => self.delta_theta + 0.5 * PI,
            PhaseOffsetMode::Explicit(v) => v,
        }
    }

    pub fn with_photons(&self, total_photons: f64) -> Result<Self> {
        validate_photons("total_photons", total_photons)?;
        Ok(Self {
            total_photons,
            ..*self
        })
    }

    /// Fourier expansion of the sinc shape matching these parameters.
    pub fn expansion(&self) -> Result<FourierExpansion> {
        fourier_coefficients(self.m, self.order, self.delta_omega_t)
    }
}

/// `g_d = exp[-|alpha|^2 (1 - e^{i d dtheta} e^{i d dwT/2} sinc(d dwT / 2))]`.
pub fn cfsk_overlap(params: &CfskParams, d: i64) -> C64 {
    let d = d as f64;
    let half = 0.5 * d * params.delta_omega_t;
    let z = C64::cis(d * params.delta_theta + half) * sinc(half);
    coherent_overlap(params.total_photons, z)
}

pub fn gram_cfsk(params: &CfskParams) -> GramMatrix {
    let generator: Vec<C64> = (0..params.m as i64)
        .map(|d| cfsk_overlap(params, d))
        .collect();
    GramMatrix::from_toeplitz(&generator)
}

pub fn gram_psk(params: &PskParams) -> GramMatrix {
    gram_cfsk(&params.as_cfsk())
}

/// Gram matrix of the dCFSK alphabet:
/// `G[m][n] = exp[-a^2 (1 - e^{i dtheta' (m-n)} sum_l F_l e^{i (m-n) l delta})]`.
pub fn gram_dcfsk(params: &DcfskParams, expansion: &FourierExpansion) -> Result<GramMatrix> {
    if expansion.m() != params.m {
        return Err(Error::DimensionMismatch {
            expected: params.m,
            found: expansion.m(),
        });
    }
    if expansion.order() != params.order {
        return Err(Error::DimensionMismatch {
            expected: params.order,
            found: expansion.order(),
        });
    }
    let step = params.phase_step();
    let generator: Vec<C64> = (0..params.m)
        .map(|d| {
            let d = d as f64;
            let z = C64::cis(step * d) * expansion.normalized_sum(d);
            coherent_overlap(params.total_photons, z)
        })
        .collect();
    Ok(GramMatrix::from_toeplitz(&generator))
}
