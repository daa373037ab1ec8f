//! Derivative-free search of the CFSK phase and frequency steps.
//!
//! A uniform grid over `[0, 2pi)^2` picks a starting cell; coordinate descent
//! with golden-section line searches then refines inside a one-cell bracket
//! around the incumbent. Grid cells are evaluated in parallel and the result
//! is deterministic.

use std::f64::consts::{PI, TAU};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::alphabet::{gram_cfsk, CfskParams};
use crate::discrimination::discriminate;
use crate::error::{Error, Result};
use crate::rates::holevo_rate;

/// Default grid resolution per axis.
pub const DEFAULT_RESOLUTION: usize = 64;
pub const MIN_RESOLUTION: usize = 8;
/// Line-search bracket width at which a golden-section search stops.
pub const ANGLE_TOLERANCE: f64 = 1e-6;
pub const MAX_REFINEMENT_ITERATIONS: usize = 100;

/// Frequency step used when CFSK is compared against its discrete
/// emulation. At this value the per-mode phase offset `delta_theta + pi/2` and
/// the CFSK-matched offset `delta_theta + delta_omega_t / 2` coincide.
pub const DISCRETE_FREQUENCY_STEP: f64 = PI;
/// Photons per mode at which reference parameters are tuned (`|alpha|^2 = M`).
pub const REFERENCE_PHOTONS_PER_MODE: f64 = 1.0;

// Largest angle handed to the objective; the admissible range is half-open.
const UPPER_ANGLE: f64 = TAU - 1e-9;
const INV_PHI: f64 = 0.618_033_988_749_894_9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Objective {
    /// Square-root-measurement success probability.
    SrmSuccess,
    /// Holevo quantity of the alphabet.
    HolevoRate,
    /// Clamped upper bound on the optimal success probability.
    UpperBound,
}

impl std::str::FromStr for Objective {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "srm" | "srm_success" => Ok(Self::SrmSuccess),
            "holevo" | "holevo_rate" => Ok(Self::HolevoRate),
            "upper" | "upper_bound" => Ok(Self::UpperBound),
            other => Err(format!("unknown objective `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TuningResult {
    pub best_delta_theta: f64,
    pub best_delta_omega_t: f64,
    pub objective_value: f64,
    pub objective_kind: Objective,
    pub grid_resolution: usize,
    pub refinement_iterations: usize,
}

impl TuningResult {
    pub fn cfsk_params(&self, m: usize, total_photons: f64) -> Result<CfskParams> {
        CfskParams::new(
            m,
            self.best_delta_theta,
            self.best_delta_omega_t,
            total_photons,
        )
    }
}

/// Objective value of the CFSK alphabet at the given point.
pub fn evaluate(
    m: usize,
    total_photons: f64,
    delta_theta: f64,
    delta_omega_t: f64,
    objective: Objective,
) -> Result<f64> {
    let gram = gram_cfsk(&CfskParams::new(
        m,
        delta_theta,
        delta_omega_t,
        total_photons,
    )?);
    match objective {
        Objective::SrmSuccess => discriminate(&gram).map(|r| r.p_srm),
        Objective::UpperBound => discriminate(&gram).map(|r| r.p_upper),
        Objective::HolevoRate => holevo_rate(&gram),
    }
}

/// Optimizes both `delta_theta` and `delta_omega_t`.
pub fn grid_optimize(
    m: usize,
    total_photons: f64,
    objective: Objective,
    resolution: usize,
) -> Result<TuningResult> {
    check_inputs(m, total_photons, resolution)?;
    let step = TAU / resolution as f64;
    let cells: Vec<(f64, f64)> = (0..resolution)
        .flat_map(|i| (0..resolution).map(move |j| (i as f64 * step, j as f64 * step)))
        .collect();
    let (start, value) = best_of(&cells, |&(dt, dw)| {
        evaluate(m, total_photons, dt, dw, objective)
    })?;

    let f = |dt: f64, dw: f64| evaluate(m, total_photons, dt, dw, objective);
    let mut point = start;
    let mut best = value;
    let mut iterations = 0;
    while iterations < MAX_REFINEMENT_ITERATIONS {
        iterations += 1;
        let before = point;
        let (dt, v) = line_search(|x| f(x, point.1), point.0, step, best)?;
        point.0 = dt;
        best = v;
        let (dw, v) = line_search(|y| f(point.0, y), point.1, step, best)?;
        point.1 = dw;
        best = v;
        if (point.0 - before.0).abs() < ANGLE_TOLERANCE
            && (point.1 - before.1).abs() < ANGLE_TOLERANCE
        {
            break;
        }
    }

    Ok(TuningResult {
        best_delta_theta: point.0,
        best_delta_omega_t: point.1,
        objective_value: best,
        objective_kind: objective,
        grid_resolution: resolution,
        refinement_iterations: iterations,
    })
}

/// Optimizes `delta_theta` alone with `delta_omega_t` held fixed.
pub fn optimize_phase_step(
    m: usize,
    total_photons: f64,
    delta_omega_t: f64,
    objective: Objective,
    resolution: usize,
) -> Result<TuningResult> {
    crate::alphabet::validate_angle("delta_omega_t", delta_omega_t)?;
    let (best_delta_theta, objective_value) = optimize_axis(m, total_photons, resolution, |dt| {
        evaluate(m, total_photons, dt, delta_omega_t, objective)
    })?;
    Ok(TuningResult {
        best_delta_theta,
        best_delta_omega_t: delta_omega_t,
        objective_value,
        objective_kind: objective,
        grid_resolution: resolution,
        refinement_iterations: 1,
    })
}

/// Optimizes `delta_omega_t` alone with `delta_theta` held fixed.
pub fn optimize_frequency_step(
    m: usize,
    total_photons: f64,
    delta_theta: f64,
    objective: Objective,
    resolution: usize,
) -> Result<TuningResult> {
    crate::alphabet::validate_angle("delta_theta", delta_theta)?;
    let (best_delta_omega_t, objective_value) =
        optimize_axis(m, total_photons, resolution, |dw| {
            evaluate(m, total_photons, delta_theta, dw, objective)
        })?;
    Ok(TuningResult {
        best_delta_theta: delta_theta,
        best_delta_omega_t,
        objective_value,
        objective_kind: objective,
        grid_resolution: resolution,
        refinement_iterations: 1,
    })
}

fn optimize_axis<F>(m: usize, total_photons: f64, resolution: usize, f: F) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    check_inputs(m, total_photons, resolution)?;
    let step = TAU / resolution as f64;
    let cells: Vec<f64> = (0..resolution).map(|i| i as f64 * step).collect();
    let (start, value) = best_of(&cells, |&x| f(x))?;
    line_search(f, start, step, value)
}

/// CFSK parameters for discrete-emulation comparisons: `delta_omega_t` pinned
/// to [`DISCRETE_FREQUENCY_STEP`], `delta_theta` maximizing SRM success at
/// [`REFERENCE_PHOTONS_PER_MODE`].
pub fn reference_tuning(m: usize, resolution: usize) -> Result<TuningResult> {
    optimize_phase_step(
        m,
        m as f64 * REFERENCE_PHOTONS_PER_MODE,
        DISCRETE_FREQUENCY_STEP,
        Objective::SrmSuccess,
        resolution,
    )
}

fn check_inputs(m: usize, total_photons: f64, resolution: usize) -> Result<()> {
    if resolution < MIN_RESOLUTION {
        return Err(Error::InvalidParameter {
            name: "resolution",
            value: resolution as f64,
            range: "[8, inf)",
        });
    }
    // Validates M and the photon number.
    CfskParams::new(m, 0.0, 0.0, total_photons).map(|_| ())
}

/// First maximizer in slice order (strictly greater replaces).
fn best_of<T, F>(cells: &[T], f: F) -> Result<(T, f64)>
where
    T: Copy + Sync,
    F: Fn(&T) -> Result<f64> + Sync,
{
    let values: Vec<f64> = cells.par_iter().map(&f).collect::<Result<_>>()?;
    let mut best = 0;
    for (i, v) in values.iter().enumerate() {
        if *v > values[best] {
            best = i;
        }
    }
    Ok((cells[best], values[best]))
}

/// Golden-section maximization on `[center - half_width, center + half_width]`
/// clipped to the admissible range. Keeps `(center, current)` unless a
/// strictly better point is found.
fn line_search<F>(f: F, center: f64, half_width: f64, current: f64) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Result<f64>,
{
    let mut lo = (center - half_width).max(0.0);
    let mut hi = (center + half_width).min(UPPER_ANGLE);
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    while hi - lo > ANGLE_TOLERANCE {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2)?;
        }
    }
    let (x, v) = if f1 >= f2 { (x1, f1) } else { (x2, f2) };
    if v > current {
        Ok((x, v))
    } else {
        Ok((center, current))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn objective_parsing() {
        assert_eq!("srm".parse::<Objective>().unwrap(), Objective::SrmSuccess);
        assert_eq!(
            "HOLEVO_RATE".parse::<Objective>().unwrap(),
            Objective::HolevoRate
        );
        assert_eq!(
            "upper-bound".parse::<Objective>().unwrap(),
            Objective::UpperBound
        );
        assert!("fidelity".parse::<Objective>().is_err());
    }

    #[test]
    fn golden_section_finds_interior_maximum() {
        let (x, v) = line_search(|x| Ok(-(x - 1.3).powi(2)), 1.0, 0.5, f64::NEG_INFINITY).unwrap();
        assert!((x - 1.3).abs() < 1e-6);
        assert!(v <= 0.0 && v > -1e-12);
    }

    #[test]
    fn line_search_never_worsens() {
        let (x, v) = line_search(|x| Ok(x.sin()), 0.5, 0.1, 10.0).unwrap();
        assert_eq!((x, v), (0.5, 10.0));
    }

    #[test]
    fn small_resolution_rejected() {
        assert!(grid_optimize(4, 1.0, Objective::SrmSuccess, 4).is_err());
        assert!(grid_optimize(1, 1.0, Objective::SrmSuccess, 8).is_err());
    }

    #[test]
    fn phase_only_search_respects_fixed_frequency_step() {
        let r = optimize_phase_step(4, 2.0, PI, Objective::SrmSuccess, 16).unwrap();
        assert_eq!(r.best_delta_omega_t, PI);
        let again = evaluate(4, 2.0, r.best_delta_theta, PI, Objective::SrmSuccess).unwrap();
        assert!((again - r.objective_value).abs() < 1e-12);
    }

    #[test]
    fn frequency_only_search_respects_fixed_phase_step() {
        let r = optimize_frequency_step(4, 2.0, 1.0, Objective::HolevoRate, 16).unwrap();
        assert_eq!(r.best_delta_theta, 1.0);
        let again = evaluate(4, 2.0, 1.0, r.best_delta_omega_t, Objective::HolevoRate).unwrap();
        assert!((again - r.objective_value).abs() < 1e-12);
        assert!(optimize_frequency_step(4, 2.0, -1.0, Objective::HolevoRate, 16).is_err());
    }
}
