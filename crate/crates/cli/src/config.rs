//! Sweep configuration: an optional JSON file overlaid by command-line flags.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use cfsk_core::tuning::{Objective, DEFAULT_RESOLUTION};
use cfsk_core::PhaseOffsetMode;
use clap::{Args, ValueEnum};
use serde::Deserialize;

use crate::error::{CliError, CliResult};

pub const DEFAULT_ENERGY_MIN: f64 = 0.01;
pub const DEFAULT_ENERGY_MAX: f64 = 10.0;
pub const DEFAULT_ENERGY_POINTS: usize = 40;
pub const DEFAULT_ORDER: usize = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Deserialize, ValueEnum)]
#[serde(rename_all = "UPPERCASE")]
pub enum Alphabet {
    #[serde(alias = "cfsk")]
    Cfsk,
    #[serde(alias = "psk")]
    Psk,
    #[serde(alias = "dcfsk")]
    Dcfsk,
}

impl Alphabet {
    pub fn name(self) -> &'static str {
        match self {
            Alphabet::Cfsk => "cfsk",
            Alphabet::Psk => "psk",
            Alphabet::Dcfsk => "dcfsk",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, ValueEnum)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Output {
    Srm,
    Bounds,
    OptimalityGap,
    Holevo,
    Rate,
    CapacityRatio,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize, ValueEnum)]
#[serde(rename_all = "UPPERCASE")]
pub enum Format {
    #[default]
    #[serde(alias = "csv")]
    Csv,
    #[serde(alias = "json")]
    Json,
}

/// A fixed step or a request to tune it.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(try_from = "AngleRepr")]
pub enum Angle {
    Value(f64),
    Optimize,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum AngleRepr {
    Number(f64),
    Keyword(String),
}

impl TryFrom<AngleRepr> for Angle {
    type Error = String;

    fn try_from(r: AngleRepr) -> Result<Self, String> {
        match r {
            AngleRepr::Number(v) => Ok(Angle::Value(v)),
            AngleRepr::Keyword(s) => s.parse(),
        }
    }
}

impl FromStr for Angle {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s.eq_ignore_ascii_case("optimize") {
            return Ok(Angle::Optimize);
        }
        s.parse::<f64>()
            .map(Angle::Value)
            .map_err(|_| format!("expected a number or `optimize`, got `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum EnergyGrid {
    List(Vec<f64>),
    LogSpaced { min: f64, max: f64, points: usize },
}

impl Default for EnergyGrid {
    fn default() -> Self {
        EnergyGrid::LogSpaced {
            min: DEFAULT_ENERGY_MIN,
            max: DEFAULT_ENERGY_MAX,
            points: DEFAULT_ENERGY_POINTS,
        }
    }
}

impl EnergyGrid {
    /// Grid values; nonnegative and strictly increasing.
    pub fn values(&self) -> CliResult<Vec<f64>> {
        let values = match *self {
            EnergyGrid::List(ref v) => v.clone(),
            EnergyGrid::LogSpaced { min, max, points } => {
                if !(min > 0.0 && max >= min && min.is_finite() && max.is_finite()) || points == 0 {
                    return Err(CliError::Config(format!(
                        "log-spaced energy grid needs 0 < min <= max and points >= 1 (got min={min}, max={max}, points={points})"
                    )));
                }
                if points == 1 {
                    vec![min]
                } else {
                    (0..points)
                        .map(|i| min * (max / min).powf(i as f64 / (points - 1) as f64))
                        .collect()
                }
            }
        };
        if values.is_empty() {
            return Err(CliError::Config("energy grid is empty".into()));
        }
        if let Some(v) = values.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
            return Err(CliError::Config(format!(
                "energy grid value {v} must lie in [0, inf)"
            )));
        }
        if values.windows(2).any(|w| w[1] <= w[0]) {
            return Err(CliError::Config(
                "energy grid must be strictly increasing".into(),
            ));
        }
        Ok(values)
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum OneOrMany<T> {
    One(T),
    Many(Vec<T>),
}

impl<T> OneOrMany<T> {
    fn into_vec(self) -> Vec<T> {
        match self {
            OneOrMany::One(x) => vec![x],
            OneOrMany::Many(v) => v,
        }
    }
}

/// JSON form of a sweep. `alphabet` and `M` also accept lists.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub alphabet: Option<OneOrMany<Alphabet>>,
    #[serde(rename = "M", alias = "m")]
    pub m: Option<OneOrMany<usize>>,
    #[serde(rename = "L", alias = "l")]
    pub l: Option<usize>,
    pub delta_theta: Option<Angle>,
    #[serde(rename = "delta_omega_T", alias = "delta_omega_t")]
    pub delta_omega_t: Option<Angle>,
    pub energy_grid: Option<EnergyGrid>,
    pub outputs: Option<Vec<Output>>,
    pub format: Option<Format>,
}

impl SweepConfig {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("invalid config {}: {e}", path.display())))
    }
}

pub fn parse_phase_offset(s: &str) -> Result<PhaseOffsetMode, String> {
    match s.to_ascii_lowercase().replace('_', "-").as_str() {
        "cfsk-matched" | "matched" => Ok(PhaseOffsetMode::CfskMatched),
        "paper-half-pi" | "half-pi" => Ok(PhaseOffsetMode::PaperHalfPi),
        _ => s
            .parse::<f64>()
            .map(PhaseOffsetMode::Explicit)
            .map_err(|_| format!("expected `cfsk-matched`, `half-pi` or a number, got `{s}`")),
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct SweepArgs {
    /// JSON sweep configuration; flags take precedence over its fields.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Comma-separated alphabets.
    #[arg(long, value_delimiter = ',')]
    pub alphabet: Vec<Alphabet>,
    /// Comma-separated alphabet sizes.
    #[arg(long, value_delimiter = ',')]
    pub m: Vec<usize>,
    /// dCFSK expansion order.
    #[arg(long)]
    pub l: Option<usize>,
    /// Phase step in [0, 2pi) or `optimize`.
    #[arg(long, allow_negative_numbers = true)]
    pub dtheta: Option<Angle>,
    /// Frequency step times pulse duration in [0, 2pi) or `optimize`.
    #[arg(long = "domega-t", allow_negative_numbers = true)]
    pub domega_t: Option<Angle>,
    /// Explicit comma-separated energy grid.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, conflicts_with_all = ["energy_min", "energy_max", "energy_points"])]
    pub energy: Vec<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub energy_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub energy_max: Option<f64>,
    #[arg(long)]
    pub energy_points: Option<usize>,
    /// Comma-separated output column groups.
    #[arg(long, value_delimiter = ',')]
    pub outputs: Vec<Output>,
    #[arg(long)]
    pub format: Option<Format>,
    /// dCFSK per-mode phase offset: `cfsk-matched`, `half-pi` or a number.
    #[arg(long, value_parser = parse_phase_offset)]
    pub phase_offset: Option<PhaseOffsetMode>,
    /// Objective used when a step is tuned.
    #[arg(long)]
    pub objective: Option<Objective>,
    /// Tuning grid resolution per axis.
    #[arg(long)]
    pub resolution: Option<usize>,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Fully resolved sweep.
#[derive(Debug, Clone)]
pub struct Sweep {
    pub alphabets: Vec<Alphabet>,
    pub ms: Vec<usize>,
    pub order: usize,
    pub delta_theta: Option<Angle>,
    pub delta_omega_t: Option<Angle>,
    pub energies: Vec<f64>,
    /// Empty means the command's default set.
    pub outputs: Vec<Output>,
    pub format: Format,
    pub phase_offset: PhaseOffsetMode,
    pub objective: Objective,
    pub resolution: usize,
    pub out: Option<PathBuf>,
}

impl SweepArgs {
    pub fn resolve(&self) -> CliResult<Sweep> {
        let file = match &self.config {
            Some(path) => SweepConfig::load(path)?,
            None => SweepConfig::default(),
        };

        let mut alphabets = if self.alphabet.is_empty() {
            file.alphabet.map(OneOrMany::into_vec).unwrap_or_default()
        } else {
            self.alphabet.clone()
        };
        alphabets.sort();
        alphabets.dedup();
        if alphabets.is_empty() {
            return Err(CliError::Config(
                "no alphabet given (use --alphabet or `alphabet`)".into(),
            ));
        }

        let mut ms = if self.m.is_empty() {
            file.m.map(OneOrMany::into_vec).unwrap_or_default()
        } else {
            self.m.clone()
        };
        ms.sort_unstable();
        ms.dedup();
        if ms.is_empty() {
            return Err(CliError::Config(
                "no alphabet size given (use --m or `M`)".into(),
            ));
        }

        let grid = if !self.energy.is_empty() {
            EnergyGrid::List(self.energy.clone())
        } else if self.energy_min.is_some()
            || self.energy_max.is_some()
            || self.energy_points.is_some()
        {
            let (min, max, points) = match file.energy_grid {
                Some(EnergyGrid::LogSpaced { min, max, points }) => (min, max, points),
                _ => (
                    DEFAULT_ENERGY_MIN,
                    DEFAULT_ENERGY_MAX,
                    DEFAULT_ENERGY_POINTS,
                ),
            };
            EnergyGrid::LogSpaced {
                min: self.energy_min.unwrap_or(min),
                max: self.energy_max.unwrap_or(max),
                points: self.energy_points.unwrap_or(points),
            }
        } else {
            file.energy_grid.unwrap_or_default()
        };

        Ok(Sweep {
            alphabets,
            ms,
            order: self.l.or(file.l).unwrap_or(DEFAULT_ORDER),
            delta_theta: self.dtheta.or(file.delta_theta),
            delta_omega_t: self.domega_t.or(file.delta_omega_t),
            energies: grid.values()?,
            outputs: if self.outputs.is_empty() {
                file.outputs.unwrap_or_default()
            } else {
                self.outputs.clone()
            },
            format: self.format.or(file.format).unwrap_or_default(),
            phase_offset: self.phase_offset.unwrap_or_default(),
            objective: self.objective.unwrap_or(Objective::SrmSuccess),
            resolution: self.resolution.unwrap_or(DEFAULT_RESOLUTION),
            out: self.out.clone(),
        })
    }
}
