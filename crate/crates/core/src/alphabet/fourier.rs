//! Truncated Fourier series of the sinc pulse shape used by dCFSK.
//!
//! The shape `F(t) = sinc(t * delta_omega_t / 2)` is expanded on
//! `t in [-(M-1), M-1]` with grid spacing `delta = pi / (M - 1)`:
//!
//! ```text
//! c_l   = delta / (2 pi) * integral_{-pi/delta}^{pi/delta} F(t) exp(-i t l delta) dt
//! S_L(t) = sum_{l=-L}^{L} c_l exp(i t l delta)
//! ```
//!
//! When every `c_l` is nonnegative the normalized values `F_l = c_l / S_L(0)`
//! are the energy fractions of the 2L+1 modes.

use std::f64::consts::PI;

use serde::Serialize;

use super::{sinc, validate_angle};
use crate::error::{Error, Result};
use crate::quadrature::{integrate, QuadratureOptions};
use crate::C64;

/// Coefficients in `[-NEGATIVE_COEFFICIENT_TOLERANCE, 0)` are quadrature noise
/// and get clamped to zero; anything lower is a regime violation.
pub const NEGATIVE_COEFFICIENT_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FourierExpansion {
    m: usize,
    order: usize,
    delta: f64,
    delta_omega_t: f64,
    coeffs: Vec<f64>,
    fractions: Vec<f64>,
    s_zero: f64,
}

impl FourierExpansion {
    pub fn m(&self) -> usize {
        self.m
    }

    /// Truncation order L; the expansion has 2L+1 terms.
    pub fn order(&self) -> usize {
        self.order
    }

    /// Grid spacing `pi / (M - 1)`.
    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn delta_omega_t(&self) -> f64 {
        self.delta_omega_t
    }

    /// `c_{-L} .. c_{L}` after clamping of quadrature noise.
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// `F_{-L} .. F_{L}`, summing to one.
    pub fn fractions(&self) -> &[f64] {
        &self.fractions
    }

    /// `S_L(0) = sum_l c_l`.
    pub fn s_zero(&self) -> f64 {
        self.s_zero
    }

    /// Mode indices `-L ..= L` in storage order.
    pub fn indices(&self) -> impl Iterator<Item = i64> + '_ {
        let l = self.order as i64;
        -l..=l
    }

    pub fn coefficient(&self, l: i64) -> Option<f64> {
        self.slot(l).map(|i| self.coeffs[i])
    }

    pub fn fraction(&self, l: i64) -> Option<f64> {
        self.slot(l).map(|i| self.fractions[i])
    }

    /// `S_L(t)`.
    pub fn partial_sum(&self, t: f64) -> C64 {
        self.indices()
            .zip(&self.coeffs)
            .map(|(l, &c)| c * C64::cis(t * l as f64 * self.delta))
            .sum()
    }

    /// `S_L(d) / S_L(0) = sum_l F_l exp(i d l delta)`.
    pub fn normalized_sum(&self, d: f64) -> C64 {
        self.indices()
            .zip(&self.fractions)
            .map(|(l, &f)| f * C64::cis(d * l as f64 * self.delta))
            .sum()
    }

    fn slot(&self, l: i64) -> Option<usize> {
        let order = self.order as i64;
        (-order..=order).contains(&l).then(|| (l + order) as usize)
    }
}

/// Computes the order-`order` expansion of `sinc(t * delta_omega_t / 2)` for
/// an alphabet of size `m`.
pub fn fourier_coefficients(
    m: usize,
    order: usize,
    delta_omega_t: f64,
) -> Result<FourierExpansion> {
    if m < 2 {
        return Err(Error::InvalidParameter {
            name: "M",
            value: m as f64,
            range: "[2, inf)",
        });
    }
    validate_angle("delta_omega_t", delta_omega_t)?;

    let delta = PI / (m - 1) as f64;
    let half_width = PI / delta;
    let options = QuadratureOptions::default();
    let l_max = order as i64;

    let mut coeffs = Vec::with_capacity(2 * order + 1);
    for l in -l_max..=l_max {
        let freq = l as f64 * delta;
        // The shape is even, so only the cosine part of exp(-i t l delta)
        // survives the symmetric integral.
        let integrand = |t: f64| sinc(0.5 * t * delta_omega_t) * (t * freq).cos();
        let r = integrate(integrand, -half_width, half_width, options)?;
        let c = delta / (2.0 * PI) * r.value;
        if c < -NEGATIVE_COEFFICIENT_TOLERANCE {
            return Err(Error::NegativeCoefficient {
                m,
                order,
                delta_omega_t,
                index: l,
                value: c,
            });
        }
        coeffs.push(c.max(0.0));
    }

    let s_zero: f64 = coeffs.iter().sum();
    if s_zero.is_nan() || s_zero <= 0.0 {
        return Err(Error::NegativeCoefficient {
            m,
            order,
            delta_omega_t,
            index: 0,
            value: s_zero,
        });
    }
    let fractions = coeffs.iter().map(|c| c / s_zero).collect();

    Ok(FourierExpansion {
        m,
        order,
        delta,
        delta_omega_t,
        coeffs,
        fractions,
        s_zero,
    })
}
