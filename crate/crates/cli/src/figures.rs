//! Data behind each figure, one CSV per figure.
//!
//! | id | file        | content                                                        |
//! |----|-------------|----------------------------------------------------------------|
//! | 1a | `fig1a.csv` | root diagonal entries 1 and 2 over a (dtheta, domegaT) grid    |
//! | 1b | `fig1b.csv` | SRM success and bounds of tuned CFSK against PSK, vs energy    |
//! | 2  | `fig2.csv`  | rate / capacity of rate-tuned CFSK and PSK, M = 4, 8, 16       |
//! | 3  | `fig3.csv`  | dCFSK / CFSK SRM success ratio, M = 4, L = 1, 2                |
//! | 4  | `fig4.csv`  | rate / capacity of dCFSK (L = 1, M = 4, 8) and PSK (M = 2, 16) |
//!
//! Energies are total photons per symbol for 1b and 3 and photons per mode
//! for 2 and 4.

use std::f64::consts::{PI, TAU};
use std::path::{Path, PathBuf};

use cfsk_core::alphabet::{gram_cfsk, gram_dcfsk, gram_psk, CfskParams, DcfskParams, PskParams};
use cfsk_core::discrimination::{discriminate, srm_success};
use cfsk_core::tuning::{grid_optimize, reference_tuning, Objective, DEFAULT_RESOLUTION};
use cfsk_core::PhaseOffsetMode;
use clap::{Args, ValueEnum};
use rayon::prelude::*;

use crate::commands::{rate_cells, Spec, TuneSpec, ID_COLUMNS, RATE_COLUMNS};
use crate::config::{
    Alphabet, Angle, EnergyGrid, Format, DEFAULT_ENERGY_MAX, DEFAULT_ENERGY_MIN,
    DEFAULT_ENERGY_POINTS,
};
use crate::error::{CliError, CliResult};
use crate::table::{Cell, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FigureId {
    #[value(name = "1a")]
    Fig1a,
    #[value(name = "1b")]
    Fig1b,
    #[value(name = "2")]
    Fig2,
    #[value(name = "3")]
    Fig3,
    #[value(name = "4")]
    Fig4,
    #[value(name = "all")]
    All,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    pub id: FigureId,
    #[arg(long, default_value = "figures")]
    pub out_dir: PathBuf,
    /// Alphabet size for figures 1a and 1b.
    #[arg(long, default_value_t = 16)]
    pub m: usize,
    /// |alpha|^2 of figure 1a, also the tuning energy of figure 1b.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub photons: f64,
    /// Points per axis of the figure 1a grid.
    #[arg(long, default_value_t = 32)]
    pub grid: usize,
    /// Tuning grid resolution.
    #[arg(long, default_value_t = DEFAULT_RESOLUTION)]
    pub resolution: usize,
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, conflicts_with_all = ["energy_min", "energy_max", "energy_points"])]
    pub energy: Vec<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub energy_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub energy_max: Option<f64>,
    #[arg(long)]
    pub energy_points: Option<usize>,
}

impl FigureArgs {
    fn energies(&self) -> CliResult<Vec<f64>> {
        let grid = if self.energy.is_empty() {
            EnergyGrid::LogSpaced {
                min: self.energy_min.unwrap_or(DEFAULT_ENERGY_MIN),
                max: self.energy_max.unwrap_or(DEFAULT_ENERGY_MAX),
                points: self.energy_points.unwrap_or(DEFAULT_ENERGY_POINTS),
            }
        } else {
            EnergyGrid::List(self.energy.clone())
        };
        grid.values()
    }
}

pub fn figures_cmd(args: &FigureArgs) -> CliResult<()> {
    let ids: Vec<FigureId> = match args.id {
        FigureId::All => vec![
            FigureId::Fig1a,
            FigureId::Fig1b,
            FigureId::Fig2,
            FigureId::Fig3,
            FigureId::Fig4,
        ],
        id => vec![id],
    };
    let energies = args.energies()?;
    std::fs::create_dir_all(&args.out_dir)?;
    for id in ids {
        let (name, table) = match id {
            FigureId::Fig1a => ("fig1a.csv", fig1a(args.m, args.photons, args.grid)?),
            FigureId::Fig1b => (
                "fig1b.csv",
                fig1b(args.m, args.photons, args.resolution, &energies)?,
            ),
            FigureId::Fig2 => ("fig2.csv", fig2(args.resolution, &energies)?),
            FigureId::Fig3 => ("fig3.csv", fig3(args.resolution, &energies)?),
            FigureId::Fig4 => ("fig4.csv", fig4(args.resolution, &energies)?),
            FigureId::All => unreachable!(),
        };
        let path = args.out_dir.join(name);
        table.emit(Format::Csv, Some(Path::new(&path)))?;
        println!("{}", path.display());
    }
    Ok(())
}

pub fn fig1a(m: usize, photons: f64, grid: usize) -> CliResult<Table> {
    if grid == 0 {
        return Err(CliError::Config("--grid must be at least 1".into()));
    }
    CfskParams::new(m, 0.0, 0.0, photons)?;
    let step = TAU / grid as f64;
    let cells: Vec<(f64, f64)> = (0..grid)
        .flat_map(|i| (0..grid).map(move |j| (i as f64 * step, j as f64 * step)))
        .collect();
    let rows = cells
        .par_iter()
        .map(|&(dt, dw)| {
            let r = discriminate(&gram_cfsk(&CfskParams::new(m, dt, dw, photons)?))?;
            Ok(vec![
                Cell::Float(dt),
                Cell::Float(dw),
                Cell::Float(r.sqrt_diag[0]),
                Cell::Float(r.sqrt_diag[1]),
                Cell::Float(r.optimality_gap),
            ])
        })
        .collect::<CliResult<_>>()?;
    Ok(Table {
        header: vec![
            "delta_theta",
            "delta_omega_t",
            "sqrt_g11",
            "sqrt_g22",
            "optimality_gap",
        ],
        rows,
    })
}

pub fn fig1b(
    m: usize,
    tuning_photons: f64,
    resolution: usize,
    energies: &[f64],
) -> CliResult<Table> {
    let t = grid_optimize(m, tuning_photons, Objective::SrmSuccess, resolution)?;
    let rows = energies
        .par_iter()
        .map(|&e| {
            let r = discriminate(&gram_cfsk(&t.cfsk_params(m, e)?))?;
            let (psk, _) = srm_success(&gram_psk(&PskParams::new(m, e)?))?;
            Ok(vec![
                Cell::Float(t.best_delta_theta),
                Cell::Float(t.best_delta_omega_t),
                Cell::Float(e),
                Cell::Float(r.p_srm),
                Cell::Float(r.p_lower),
                Cell::Float(r.p_upper),
                Cell::Float(r.optimality_gap),
                Cell::Float(psk),
            ])
        })
        .collect::<CliResult<_>>()?;
    Ok(Table {
        header: vec![
            "delta_theta",
            "delta_omega_t",
            "total_photons",
            "p_srm",
            "p_lower",
            "p_upper",
            "optimality_gap",
            "p_psk",
        ],
        rows,
    })
}

fn rate_figure(specs: Vec<Spec>, energies: &[f64]) -> CliResult<Table> {
    let mut header = ID_COLUMNS.to_vec();
    header.extend(RATE_COLUMNS);
    let mut table = Table::new(header);
    for spec in specs {
        let rows: Vec<Vec<Cell>> = energies
            .par_iter()
            .map(|&n| {
                let mut row = spec.id_cells();
                row.extend(rate_cells(&spec.rate(n)?));
                Ok(row)
            })
            .collect::<CliResult<_>>()?;
        table.rows.extend(rows);
    }
    Ok(table)
}

/// CFSK steps maximize the Holevo quantity at one photon per mode.
pub fn fig2(resolution: usize, energies: &[f64]) -> CliResult<Table> {
    let tune = TuneSpec {
        objective: Objective::HolevoRate,
        resolution,
    };
    let mut specs = Vec::new();
    for alphabet in [Alphabet::Cfsk, Alphabet::Psk] {
        for m in [4, 8, 16] {
            specs.push(Spec::resolve(
                alphabet,
                m,
                0,
                None,
                None,
                PhaseOffsetMode::CfskMatched,
                tune,
            )?);
        }
    }
    rate_figure(specs, energies)
}

/// M = 4 at the reference tuning, L = 1 and 2.
pub fn fig3(resolution: usize, energies: &[f64]) -> CliResult<Table> {
    let m = 4;
    let t = reference_tuning(m, resolution)?;
    let mut table = Table::new(vec![
        "l",
        "delta_theta",
        "delta_omega_t",
        "total_photons",
        "p_srm_dcfsk",
        "p_srm_cfsk",
        "ratio",
    ]);
    for order in [1, 2] {
        let base = t.cfsk_params(m, 0.0)?;
        let expansion =
            DcfskParams::from_cfsk(&base, order, PhaseOffsetMode::CfskMatched).expansion()?;
        let rows: Vec<Vec<Cell>> = energies
            .par_iter()
            .map(|&e| {
                let c = t.cfsk_params(m, e)?;
                let d = DcfskParams::from_cfsk(&c, order, PhaseOffsetMode::CfskMatched);
                let (pd, _) = srm_success(&gram_dcfsk(&d, &expansion)?)?;
                let (pc, _) = srm_success(&gram_cfsk(&c))?;
                Ok(vec![
                    Cell::Int(order),
                    Cell::Float(t.best_delta_theta),
                    Cell::Float(t.best_delta_omega_t),
                    Cell::Float(e),
                    Cell::Float(pd),
                    Cell::Float(pc),
                    Cell::Float(pd / pc),
                ])
            })
            .collect::<CliResult<_>>()?;
        table.rows.extend(rows);
    }
    Ok(table)
}

/// dCFSK with L = 1, frequency step pi and the phase step tuned for SRM
/// success at one photon per mode.
pub fn fig4(resolution: usize, energies: &[f64]) -> CliResult<Table> {
    let tune = TuneSpec {
        objective: Objective::SrmSuccess,
        resolution,
    };
    let mut specs = Vec::new();
    for m in [2, 16] {
        specs.push(Spec::resolve(
            Alphabet::Psk,
            m,
            0,
            None,
            None,
            PhaseOffsetMode::CfskMatched,
            tune,
        )?);
    }
    for m in [4, 8] {
        specs.push(Spec::resolve(
            Alphabet::Dcfsk,
            m,
            1,
            Some(Angle::Optimize),
            Some(Angle::Value(PI)),
            PhaseOffsetMode::CfskMatched,
            tune,
        )?);
    }
    rate_figure(specs, energies)
}
