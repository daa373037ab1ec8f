//! `gram`, `discriminate`, `rates` and `optimize`.

use std::f64::consts::PI;
use std::io::Write;
use std::path::PathBuf;

use cfsk_core::alphabet::{
    gram_cfsk, gram_dcfsk, gram_psk, CfskParams, DcfskParams, FourierExpansion, PskParams,
};
use cfsk_core::discrimination::{discriminate, srm_success};
use cfsk_core::rates::{holevo_rate, rate_cfsk, rate_dcfsk_with, rate_psk, RateReport};
use cfsk_core::spectral::structure_check;
use cfsk_core::tuning::{
    grid_optimize, optimize_frequency_step, optimize_phase_step, Objective, TuningResult,
    DEFAULT_RESOLUTION, REFERENCE_PHOTONS_PER_MODE,
};
use cfsk_core::{GramMatrix, PhaseOffsetMode};
use clap::Args;
use rayon::prelude::*;
use serde_json::json;

use crate::config::{parse_phase_offset, Alphabet, Angle, Format, Output, Sweep, SweepArgs};
use crate::error::{CliError, CliResult};
use crate::table::{Cell, Table};

/// Tuning inputs for steps given as `optimize`.
#[derive(Debug, Clone, Copy)]
pub struct TuneSpec {
    pub objective: Objective,
    pub resolution: usize,
}

/// An alphabet with every parameter fixed except its energy.
#[derive(Debug, Clone)]
pub enum Spec {
    Cfsk(CfskParams),
    Psk(usize),
    Dcfsk(DcfskParams, FourierExpansion),
}

impl Spec {
    /// Steps default to `optimize`, except the dCFSK frequency step which
    /// defaults to pi. Tuning runs at one photon per mode.
    pub fn resolve(
        alphabet: Alphabet,
        m: usize,
        order: usize,
        delta_theta: Option<Angle>,
        delta_omega_t: Option<Angle>,
        phase_offset: PhaseOffsetMode,
        tune: TuneSpec,
    ) -> CliResult<Self> {
        match alphabet {
            Alphabet::Psk => {
                PskParams::new(m, 0.0)?;
                Ok(Spec::Psk(m))
            }
            Alphabet::Cfsk => {
                let dt = delta_theta.unwrap_or(Angle::Optimize);
                let dw = delta_omega_t.unwrap_or(Angle::Optimize);
                let (dt, dw) = resolve_steps(m, dt, dw, tune)?;
                Ok(Spec::Cfsk(CfskParams::new(m, dt, dw, 0.0)?))
            }
            Alphabet::Dcfsk => {
                let dt = delta_theta.unwrap_or(Angle::Optimize);
                let dw = delta_omega_t.unwrap_or(Angle::Value(PI));
                // Validates M before any tuning.
                CfskParams::new(m, 0.0, 0.0, 0.0)?;
                let (dt, dw) = resolve_steps(m, dt, dw, tune)?;
                let params = DcfskParams::new(m, order, dt, dw, 0.0, phase_offset)?;
                let expansion = params.expansion()?;
                Ok(Spec::Dcfsk(params, expansion))
            }
        }
    }

    pub fn alphabet(&self) -> Alphabet {
        match self {
            Spec::Cfsk(_) => Alphabet::Cfsk,
            Spec::Psk(_) => Alphabet::Psk,
            Spec::Dcfsk(..) => Alphabet::Dcfsk,
        }
    }

    pub fn m(&self) -> usize {
        match self {
            Spec::Cfsk(p) => p.m(),
            Spec::Psk(m) => *m,
            Spec::Dcfsk(p, _) => p.m(),
        }
    }

    pub fn order(&self) -> Option<usize> {
        match self {
            Spec::Dcfsk(p, _) => Some(p.order()),
            _ => None,
        }
    }

    pub fn steps(&self) -> (Option<f64>, Option<f64>) {
        match self {
            Spec::Cfsk(p) => (Some(p.delta_theta()), Some(p.delta_omega_t())),
            Spec::Psk(_) => (None, None),
            Spec::Dcfsk(p, _) => (Some(p.delta_theta()), Some(p.delta_omega_t())),
        }
    }

    /// Gram matrix at a total photon number per symbol.
    pub fn gram(&self, total_photons: f64) -> CliResult<GramMatrix> {
        Ok(match self {
            Spec::Cfsk(p) => gram_cfsk(&p.with_photons(total_photons)?),
            Spec::Psk(m) => gram_psk(&PskParams::new(*m, total_photons)?),
            Spec::Dcfsk(p, e) => gram_dcfsk(&p.with_photons(total_photons)?, e)?,
        })
    }

    pub fn rate(&self, photons_per_mode: f64) -> CliResult<RateReport> {
        Ok(match self {
            Spec::Cfsk(p) => rate_cfsk(p, photons_per_mode)?,
            Spec::Psk(m) => rate_psk(*m, photons_per_mode)?,
            Spec::Dcfsk(p, e) => rate_dcfsk_with(p, e, photons_per_mode)?,
        })
    }

    /// Leading identification columns.
    pub fn id_cells(&self) -> Vec<Cell> {
        let (dt, dw) = self.steps();
        vec![
            Cell::Text(self.alphabet().name()),
            Cell::Int(self.m()),
            self.order().map_or(Cell::Missing, Cell::Int),
            Cell::opt(dt),
            Cell::opt(dw),
        ]
    }
}

pub const ID_COLUMNS: [&str; 5] = ["alphabet", "m", "l", "delta_theta", "delta_omega_t"];

fn resolve_steps(m: usize, dt: Angle, dw: Angle, tune: TuneSpec) -> CliResult<(f64, f64)> {
    let photons = m as f64 * REFERENCE_PHOTONS_PER_MODE;
    let tuned = |r: TuningResult| (r.best_delta_theta, r.best_delta_omega_t);
    Ok(match (dt, dw) {
        (Angle::Value(a), Angle::Value(b)) => (a, b),
        (Angle::Optimize, Angle::Value(b)) => tuned(optimize_phase_step(
            m,
            photons,
            b,
            tune.objective,
            tune.resolution,
        )?),
        (Angle::Value(a), Angle::Optimize) => tuned(optimize_frequency_step(
            m,
            photons,
            a,
            tune.objective,
            tune.resolution,
        )?),
        (Angle::Optimize, Angle::Optimize) => {
            tuned(grid_optimize(m, photons, tune.objective, tune.resolution)?)
        }
    })
}

fn specs(sweep: &Sweep) -> CliResult<Vec<Spec>> {
    let tune = TuneSpec {
        objective: sweep.objective,
        resolution: sweep.resolution,
    };
    let mut out = Vec::new();
    for &alphabet in &sweep.alphabets {
        for &m in &sweep.ms {
            out.push(Spec::resolve(
                alphabet,
                m,
                sweep.order,
                sweep.delta_theta,
                sweep.delta_omega_t,
                sweep.phase_offset,
                tune,
            )?);
        }
    }
    Ok(out)
}

fn check_outputs(
    requested: &[Output],
    allowed: &[Output],
    command: &str,
) -> CliResult<Vec<Output>> {
    if requested.is_empty() {
        return Ok(allowed.to_vec());
    }
    if let Some(bad) = requested.iter().find(|o| !allowed.contains(o)) {
        return Err(CliError::Config(format!(
            "output {bad:?} is not available for `{command}`"
        )));
    }
    Ok(allowed
        .iter()
        .copied()
        .filter(|o| requested.contains(o))
        .collect())
}

#[derive(Debug, Args)]
pub struct GramArgs {
    #[arg(long)]
    pub alphabet: Alphabet,
    #[arg(long)]
    pub m: usize,
    /// Phase step in [0, 2pi) or `optimize`.
    #[arg(long, allow_negative_numbers = true)]
    pub dtheta: Option<Angle>,
    /// Frequency step times pulse duration in [0, 2pi) or `optimize`.
    #[arg(long = "domega-t", allow_negative_numbers = true)]
    pub domega_t: Option<Angle>,
    /// Total mean photon number per symbol.
    #[arg(long, allow_negative_numbers = true)]
    pub photons: f64,
    #[arg(long, default_value_t = 1)]
    pub l: usize,
    #[arg(long, value_parser = parse_phase_offset, default_value = "cfsk-matched")]
    pub phase_offset: PhaseOffsetMode,
    #[arg(long, default_value = "srm")]
    pub objective: Objective,
    #[arg(long, default_value_t = DEFAULT_RESOLUTION)]
    pub resolution: usize,
    /// `csv` prints the real and imaginary blocks and the structure flags.
    #[arg(long, default_value = "csv")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn gram(args: &GramArgs) -> CliResult<()> {
    let tune = TuneSpec {
        objective: args.objective,
        resolution: args.resolution,
    };
    let spec = Spec::resolve(
        args.alphabet,
        args.m,
        args.l,
        args.dtheta,
        args.domega_t,
        args.phase_offset,
        tune,
    )?;
    let g = spec.gram(args.photons)?;
    let s = structure_check(g.entries());
    let n = g.dim();
    let block = |f: &dyn Fn(usize, usize) -> f64| -> Vec<Vec<f64>> {
        (0..n).map(|j| (0..n).map(|k| f(j, k)).collect()).collect()
    };
    // Adding 0.0 turns -0.0 into 0.0.
    let re = block(&|j, k| g.get(j, k).re + 0.0);
    let im = block(&|j, k| g.get(j, k).im + 0.0);

    let mut text = Vec::new();
    match args.format {
        Format::Csv => {
            let (dt, dw) = spec.steps();
            writeln!(
                text,
                "# {} m={} photons={}{}",
                spec.alphabet().name(),
                n,
                args.photons,
                match (dt, dw) {
                    (Some(a), Some(b)) => format!(" delta_theta={a:.15e} delta_omega_t={b:.15e}"),
                    _ => String::new(),
                }
            )?;
            for (label, rows) in [("real", &re), ("imag", &im)] {
                writeln!(text, "{label}")?;
                for row in rows {
                    let fields: Vec<String> = row.iter().map(|x| format!("{x:.14e}")).collect();
                    writeln!(text, "{}", fields.join(","))?;
                }
            }
            writeln!(
                text,
                "toeplitz={} circulant={} max_toeplitz_dev={:.3e} max_circulant_dev={:.3e}",
                s.is_toeplitz, s.is_circulant, s.max_toeplitz_dev, s.max_circulant_dev
            )?;
        }
        Format::Json => {
            let (dt, dw) = spec.steps();
            let v = json!({
                "alphabet": spec.alphabet().name(),
                "m": n,
                "photons": args.photons,
                "delta_theta": dt,
                "delta_omega_t": dw,
                "real": re,
                "imag": im,
                "structure": s,
            });
            serde_json::to_writer_pretty(&mut text, &v).map_err(std::io::Error::from)?;
            text.push(b'\n');
        }
    }
    write_bytes(&text, args.out.as_deref())
}

fn write_bytes(bytes: &[u8], path: Option<&std::path::Path>) -> CliResult<()> {
    match path {
        Some(p) => std::fs::write(p, bytes)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()?;
        }
    }
    Ok(())
}

#[derive(Debug, Args)]
pub struct DiscriminateArgs {
    #[command(flatten)]
    pub sweep: SweepArgs,
    /// Add the SRM (optimal) success probability of PSK with the same M and
    /// total photon number.
    #[arg(long)]
    pub psk_companion: bool,
}

/// Energies are total photons per symbol.
pub fn discriminate_table(sweep: &Sweep, psk_companion: bool) -> CliResult<Table> {
    let outputs = check_outputs(
        &sweep.outputs,
        &[
            Output::Srm,
            Output::Bounds,
            Output::OptimalityGap,
            Output::Holevo,
        ],
        "discriminate",
    )?;
    let mut header: Vec<&'static str> = ID_COLUMNS.to_vec();
    header.push("total_photons");
    for o in &outputs {
        match o {
            Output::Srm => header.push("p_srm"),
            Output::Bounds => header.extend(["p_lower", "p_upper"]),
            Output::OptimalityGap => header.extend(["optimality_gap", "srm_is_optimal"]),
            Output::Holevo => header.push("holevo_bits"),
            _ => unreachable!(),
        }
    }
    if psk_companion {
        header.push("p_psk");
    }
    let mut table = Table::new(header);
    for spec in specs(sweep)? {
        let rows: Vec<Vec<Cell>> = sweep
            .energies
            .par_iter()
            .map(|&e| {
                let g = spec.gram(e)?;
                let r = discriminate(&g)?;
                let mut row = spec.id_cells();
                row.push(Cell::Float(e));
                for o in &outputs {
                    match o {
                        Output::Srm => row.push(Cell::Float(r.p_srm)),
                        Output::Bounds => {
                            row.push(Cell::Float(r.p_lower));
                            row.push(Cell::Float(r.p_upper));
                        }
                        Output::OptimalityGap => {
                            row.push(Cell::Float(r.optimality_gap));
                            row.push(Cell::Bool(r.srm_is_optimal));
                        }
                        Output::Holevo => row.push(Cell::Float(holevo_rate(&g)?)),
                        _ => unreachable!(),
                    }
                }
                if psk_companion {
                    let (p, _) = srm_success(&gram_psk(&PskParams::new(spec.m(), e)?))?;
                    row.push(Cell::Float(p));
                }
                Ok(row)
            })
            .collect::<CliResult<_>>()?;
        table.rows.extend(rows);
    }
    Ok(table)
}

pub fn discriminate_cmd(args: &DiscriminateArgs) -> CliResult<()> {
    let sweep = args.sweep.resolve()?;
    discriminate_table(&sweep, args.psk_companion)?.emit(sweep.format, sweep.out.as_deref())
}

pub const RATE_COLUMNS: [&str; 6] = [
    "photons_per_mode",
    "holevo_bits",
    "modes",
    "rate_per_mode",
    "capacity",
    "ratio",
];

pub fn rate_cells(r: &RateReport) -> Vec<Cell> {
    vec![
        Cell::Float(r.photons_per_mode),
        Cell::Float(r.holevo_bits),
        Cell::Int(r.modes),
        Cell::Float(r.rate_per_mode),
        Cell::Float(r.capacity),
        Cell::opt(r.ratio),
    ]
}

/// Energies are photons per mode. Rows ordered by alphabet, M, n.
pub fn rates_table(sweep: &Sweep) -> CliResult<Table> {
    let outputs = check_outputs(
        &sweep.outputs,
        &[Output::Holevo, Output::Rate, Output::CapacityRatio],
        "rates",
    )?;
    let keep = |column: &str| match column {
        "photons_per_mode" => true,
        "holevo_bits" => outputs.contains(&Output::Holevo),
        "modes" | "rate_per_mode" => outputs.contains(&Output::Rate),
        _ => outputs.contains(&Output::CapacityRatio),
    };
    let mut header: Vec<&'static str> = ID_COLUMNS.to_vec();
    header.extend(RATE_COLUMNS.iter().filter(|c| keep(c)));
    let mut table = Table::new(header);
    for spec in specs(sweep)? {
        let rows: Vec<Vec<Cell>> = sweep
            .energies
            .par_iter()
            .map(|&n| {
                let r = spec.rate(n)?;
                let mut row = spec.id_cells();
                row.extend(
                    RATE_COLUMNS
                        .iter()
                        .zip(rate_cells(&r))
                        .filter(|(c, _)| keep(c))
                        .map(|(_, cell)| cell),
                );
                Ok(row)
            })
            .collect::<CliResult<_>>()?;
        table.rows.extend(rows);
    }
    Ok(table)
}

pub fn rates_cmd(args: &SweepArgs) -> CliResult<()> {
    let sweep = args.resolve()?;
    rates_table(&sweep)?.emit(sweep.format, sweep.out.as_deref())
}

#[derive(Debug, Args)]
pub struct OptimizeArgs {
    #[arg(long)]
    pub m: usize,
    /// Total mean photon number per symbol; defaults to one per mode.
    #[arg(long, allow_negative_numbers = true)]
    pub photons: Option<f64>,
    #[arg(long, default_value = "srm")]
    pub objective: Objective,
    #[arg(long, default_value_t = DEFAULT_RESOLUTION)]
    pub resolution: usize,
    /// Hold the phase step fixed and tune only the frequency step.
    #[arg(long, allow_negative_numbers = true, conflicts_with = "domega_t")]
    pub dtheta: Option<f64>,
    /// Hold the frequency step fixed and tune only the phase step.
    #[arg(long = "domega-t", allow_negative_numbers = true)]
    pub domega_t: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn optimize_cmd(args: &OptimizeArgs) -> CliResult<()> {
    let photons = args
        .photons
        .unwrap_or(args.m as f64 * REFERENCE_PHOTONS_PER_MODE);
    let r = match (args.dtheta, args.domega_t) {
        (Some(dt), _) => {
            optimize_frequency_step(args.m, photons, dt, args.objective, args.resolution)?
        }
        (None, Some(dw)) => {
            optimize_phase_step(args.m, photons, dw, args.objective, args.resolution)?
        }
        (None, None) => grid_optimize(args.m, photons, args.objective, args.resolution)?,
    };
    let mut text = serde_json::to_vec_pretty(&r).map_err(std::io::Error::from)?;
    text.push(b'\n');
    write_bytes(&text, args.out.as_deref())
}
