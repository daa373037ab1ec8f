//! Acceptance gate. Runs every criterion, prints one PASS/FAIL line each and
//! exits nonzero if any failed.
//!
//! `cargo test -p cfsk-core --release --test acceptance`

mod common;

use std::f64::consts::{PI, TAU};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use cfsk_core::alphabet::{
    gram_cfsk, gram_dcfsk, gram_psk, CfskParams, DcfskParams, PhaseOffsetMode, PskParams,
};
use cfsk_core::discrimination::{discriminate, srm_optimality_gap, srm_success};
use cfsk_core::rates::{capacity, holevo_rate, rate_cfsk, rate_dcfsk, rate_psk, RateReport};
use cfsk_core::spectral::hermitian_eig;
use cfsk_core::tuning::{grid_optimize, reference_tuning, Objective, DEFAULT_RESOLUTION};
use cfsk_core::{GramMatrix, C64};
use common::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn log_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    (0..points)
        .map(|i| lo * (hi / lo).powf(i as f64 / (points - 1) as f64))
        .collect()
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    if elapsed <= limit {
        Ok(())
    } else {
        Err(format!("{what} took {elapsed:.2?}, limit {limit:?}"))
    }
}

struct Deviations {
    hermitian: f64,
    diagonal: f64,
    toeplitz: f64,
    circulant: f64,
}

fn deviations(g: &GramMatrix) -> Deviations {
    let a = g.entries();
    let n = g.dim();
    let mut d = Deviations {
        hermitian: 0.0,
        diagonal: 0.0,
        toeplitz: 0.0,
        circulant: 0.0,
    };
    for j in 0..n {
        d.diagonal = d.diagonal.max((a[(j, j)] - C64::new(1.0, 0.0)).norm());
        for k in 0..n {
            d.hermitian = d.hermitian.max((a[(j, k)] - a[(k, j)].conj()).norm());
            let s = j.min(k);
            d.toeplitz = d.toeplitz.max((a[(j, k)] - a[(j - s, k - s)]).norm());
            d.circulant = d
                .circulant
                .max((a[(j, k)] - a[(0, (k + n - j) % n)]).norm());
        }
    }
    d
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x5eed_0001);
    let (mut cfsk, mut psk, mut dcfsk, mut skipped) = (0, 0, 0, 0);
    let mut worst = 0.0f64;
    let mut min_eig = f64::INFINITY;
    let mut draws = 0;
    while draws < 500 {
        let m = rng.gen_range(2..=16);
        let photons = rng.gen_range(0.0..5.0);
        let (g, circulant) = match draws % 3 {
            0 => {
                cfsk += 1;
                let p =
                    CfskParams::new(m, rng.gen_range(0.0..TAU), rng.gen_range(0.0..TAU), photons)
                        .unwrap();
                (gram_cfsk(&p), false)
            }
            1 => {
                psk += 1;
                (gram_psk(&PskParams::new(m, photons).unwrap()), true)
            }
            _ => {
                let p = DcfskParams::new(
                    m,
                    rng.gen_range(0..=3),
                    rng.gen_range(0.0..TAU),
                    rng.gen_range(0.0..TAU),
                    photons,
                    PhaseOffsetMode::CfskMatched,
                )
                .unwrap();
                match p.expansion() {
                    Ok(e) => {
                        dcfsk += 1;
                        (gram_dcfsk(&p, &e).unwrap(), false)
                    }
                    Err(_) => {
                        // Outside the nonnegative-energy regime: no alphabet.
                        skipped += 1;
                        continue;
                    }
                }
            }
        };
        draws += 1;
        let d = deviations(&g);
        let lambda = hermitian_eig(g.entries())
            .map_err(|e| e.to_string())?
            .min_eigenvalue();
        min_eig = min_eig.min(lambda);
        worst = worst.max(d.hermitian).max(d.diagonal).max(d.toeplitz);
        if circulant {
            worst = worst.max(d.circulant);
        }
        if d.hermitian >= 1e-14 || d.diagonal >= 1e-14 || d.toeplitz >= 1e-14 {
            return Err(format!("structure deviation at draw {draws}"));
        }
        if circulant && d.circulant >= 1e-14 {
            return Err(format!(
                "PSK not circulant at draw {draws}: {:e}",
                d.circulant
            ));
        }
        if lambda < -1e-10 {
            return Err(format!("min eigenvalue {lambda:e} at draw {draws}"));
        }
    }
    within(start.elapsed(), Duration::from_secs(10), "500 draws")?;
    Ok(format!(
        "{cfsk} CFSK, {psk} PSK, {dcfsk} dCFSK ({skipped} redrawn); max deviation {worst:.1e}, min eigenvalue {min_eig:.1e}, {:.2?}",
        start.elapsed()
    ))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for n in log_grid(1e-3, 10.0, 50) {
        let (p, _) =
            srm_success(&gram_psk(&PskParams::new(2, n).unwrap())).map_err(|e| e.to_string())?;
        let exact = 0.5 * (1.0 + (1.0 - (-4.0 * n).exp()).sqrt());
        worst = worst.max((p - exact).abs());
    }
    within(start.elapsed(), Duration::from_secs(1), "Helstrom scan")?;
    if worst < 1e-9 {
        Ok(format!("max |p_srm - helstrom| = {worst:.1e}"))
    } else {
        Err(format!("max |p_srm - helstrom| = {worst:e}"))
    }
}

fn criterion_3() -> Outcome {
    let mut worst = 0.0f64;
    for m in 2..=32 {
        for n in [0.1, 0.5, 1.0, 2.0, 5.0] {
            let (_, diag) = srm_success(&gram_psk(&PskParams::new(m, n).unwrap()))
                .map_err(|e| e.to_string())?;
            let (gap, _) = srm_optimality_gap(&diag);
            if gap >= 1e-10 {
                return Err(format!("M={m} n={n}: gap {gap:e}"));
            }
            worst = worst.max(gap);
        }
    }
    Ok(format!("max gap {worst:.1e} over 155 PSK alphabets"))
}

fn scan_m16(photons: f64) -> Result<Vec<(f64, f64, cfsk_core::DiscriminationReport)>, String> {
    let step = TAU / 32.0;
    let cells: Vec<(f64, f64)> = (0..32)
        .flat_map(|i| (0..32).map(move |j| (i as f64 * step, j as f64 * step)))
        .collect();
    cells
        .par_iter()
        .map(|&(dt, dw)| {
            let g = gram_cfsk(&CfskParams::new(16, dt, dw, photons).unwrap());
            discriminate(&g)
                .map(|r| (dt, dw, r))
                .map_err(|e| e.to_string())
        })
        .collect()
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let rows = scan_m16(1.0)?;
    within(start.elapsed(), Duration::from_secs(120), "grid scan")?;
    let (dt, dw, r) = rows
        .iter()
        .max_by(|a, b| a.2.optimality_gap.total_cmp(&b.2.optimality_gap))
        .unwrap();
    let above = rows.iter().filter(|r| r.2.optimality_gap > 1e-3).count();
    if r.optimality_gap > 1e-3 {
        Ok(format!(
            "{above}/1024 points with gap > 1e-3; max {:.4} at ({dt:.3}, {dw:.3})",
            r.optimality_gap
        ))
    } else {
        Err(format!("max gap {:e}", r.optimality_gap))
    }
}

fn criterion_5() -> Outcome {
    let mut points = 0;
    for photons in [0.1, 0.5, 1.0, 2.0] {
        for (dt, dw, r) in scan_m16(photons)? {
            points += 1;
            if r.p_lower > r.p_srm + 1e-12 || r.p_srm > r.p_upper + 1e-12 {
                return Err(format!(
                    "|a|^2={photons} ({dt:.3}, {dw:.3}): {} <= {} <= {} violated",
                    r.p_lower, r.p_srm, r.p_upper
                ));
            }
        }
    }
    let mut best = (0.0, 0.0);
    for photons in [0.1, 0.25, 0.5, 1.0] {
        let t = grid_optimize(16, photons, Objective::SrmSuccess, DEFAULT_RESOLUTION)
            .map_err(|e| e.to_string())?;
        let r = discriminate(&gram_cfsk(&t.cfsk_params(16, photons).unwrap()))
            .map_err(|e| e.to_string())?;
        let headroom = r.p_upper - r.p_srm;
        if headroom > best.1 {
            best = (photons, headroom);
        }
    }
    if best.1 > 1e-3 {
        Ok(format!(
            "sandwich holds at {points} points; tuned headroom {:.4} at |a|^2={}",
            best.1, best.0
        ))
    } else {
        Err(format!("largest tuned headroom {:e}", best.1))
    }
}

fn criterion_6() -> Outcome {
    let c1 = capacity(1.0).map_err(|e| e.to_string())?;
    let c0 = capacity(0.0).map_err(|e| e.to_string())?;
    if (c1 - 2.0).abs() >= 1e-12 || c0 != 0.0 {
        return Err(format!("C(1) = {c1}, C(0) = {c0}"));
    }
    let mut reports: Vec<RateReport> = Vec::new();
    let grid = log_grid(0.01, 10.0, 40);
    for m in [2, 4, 8, 16, 32] {
        let cfsk = CfskParams::new(m, 0.9, 2.2, 0.0).unwrap();
        for &n in &grid {
            reports.push(rate_psk(m, n).map_err(|e| e.to_string())?);
            reports.push(rate_cfsk(&cfsk, n).map_err(|e| e.to_string())?);
        }
        let d = DcfskParams::new(m, 1, 0.9, PI, 0.0, PhaseOffsetMode::CfskMatched).unwrap();
        for &n in &grid {
            reports.push(rate_dcfsk(&d, n).map_err(|e| e.to_string())?);
        }
    }
    let worst = reports
        .iter()
        .map(|r| r.rate_per_mode - r.capacity)
        .fold(f64::NEG_INFINITY, f64::max);
    if worst <= 1e-9 {
        Ok(format!(
            "C(1) = {c1}, C(0) = 0; {} reports, max rate - C = {worst:.3e}",
            reports.len()
        ))
    } else {
        Err(format!("rate exceeds capacity by {worst:e}"))
    }
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let cases: Vec<(usize, f64)> = [4, 8, 16]
        .into_iter()
        .flat_map(|m| [0.1, 1.0].into_iter().map(move |n| (m, n)))
        .collect();
    let mut margins = Vec::new();
    for (m, n) in cases {
        let t = grid_optimize(m, m as f64 * n, Objective::HolevoRate, DEFAULT_RESOLUTION)
            .map_err(|e| e.to_string())?;
        let cfsk = rate_cfsk(&t.cfsk_params(m, 0.0).unwrap(), n).map_err(|e| e.to_string())?;
        let psk = rate_psk(m, n).map_err(|e| e.to_string())?;
        if psk.rate_per_mode <= cfsk.rate_per_mode {
            return Err(format!(
                "M={m} n={n}: PSK {} <= CFSK {}",
                psk.rate_per_mode, cfsk.rate_per_mode
            ));
        }
        margins.push(psk.rate_per_mode / cfsk.rate_per_mode);
    }
    within(start.elapsed(), Duration::from_secs(300), "tuning")?;
    let least = margins.iter().cloned().fold(f64::INFINITY, f64::min);
    Ok(format!(
        "PSK/CFSK rate ratio >= {least:.3} over 6 cases, {:.2?}",
        start.elapsed()
    ))
}

fn criterion_8() -> Outcome {
    let t = reference_tuning(4, DEFAULT_RESOLUTION).map_err(|e| e.to_string())?;
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for photons in log_grid(0.01, 10.0, 20) {
        let c = t.cfsk_params(4, photons).unwrap();
        let d = DcfskParams::from_cfsk(&c, 1, PhaseOffsetMode::CfskMatched);
        let e = d.expansion().map_err(|e| e.to_string())?;
        let (pd, _) = srm_success(&gram_dcfsk(&d, &e).unwrap()).map_err(|e| e.to_string())?;
        let (pc, _) = srm_success(&gram_cfsk(&c)).map_err(|e| e.to_string())?;
        lo = lo.min(pd / pc);
        hi = hi.max(pd / pc);
    }
    let detail = format!(
        "ratio in [{lo:.5}, {hi:.5}] at dtheta={:.4}, domegaT=pi",
        t.best_delta_theta
    );
    if lo >= 0.99 && hi > 1.0 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn criterion_9() -> Outcome {
    let mut lines = Vec::new();
    let mut failed = false;
    for m in [4, 8] {
        let t = reference_tuning(m, DEFAULT_RESOLUTION).map_err(|e| e.to_string())?;
        let d = DcfskParams::new(
            m,
            1,
            t.best_delta_theta,
            t.best_delta_omega_t,
            0.0,
            PhaseOffsetMode::CfskMatched,
        )
        .unwrap();
        let e = d.expansion().map_err(|e| e.to_string())?;
        let mut witness = None;
        let mut best_margin = f64::NEG_INFINITY;
        for n in log_grid(0.05, 2.0, 40) {
            let rd = cfsk_core::rates::rate_dcfsk_with(&d, &e, n)
                .map_err(|e| e.to_string())?
                .rate_per_mode;
            let r2 = rate_psk(2, n).map_err(|e| e.to_string())?.rate_per_mode;
            let r16 = rate_psk(16, n).map_err(|e| e.to_string())?.rate_per_mode;
            best_margin = best_margin.max(rd - r2);
            if witness.is_none() && rd > r2 && r16 > rd {
                witness = Some(n);
            }
        }
        match witness {
            Some(n) => lines.push(format!("M={m} ok at n={n:.3}")),
            None => {
                failed = true;
                lines.push(format!(
                    "M={m} no witness (best dCFSK - PSK2 = {best_margin:.4})"
                ));
            }
        }
    }
    if failed {
        Err(lines.join("; "))
    } else {
        Ok(lines.join("; "))
    }
}

fn criterion_10() -> Outcome {
    let o = oracle();
    let mut checked = 0;
    let mut worst = 0.0f64;
    for inst in o["instances"].as_array().unwrap() {
        let m = inst["m"].as_u64().unwrap();
        if m != 2 && m != 4 {
            continue;
        }
        checked += 1;
        let g = build(inst);
        let r = discriminate(&g).map_err(|e| e.to_string())?;
        let chi = holevo_rate(&g).map_err(|e| e.to_string())?;
        let mut diffs = vec![
            max_entry_diff(g.entries(), &matrix(&inst["gram_re"], &inst["gram_im"])),
            (r.p_srm - num(&inst["p_srm"])).abs(),
            (r.p_lower - num(&inst["p_lower"])).abs(),
            (r.p_upper - num(&inst["p_upper"])).abs(),
            (chi - num(&inst["holevo_bits"])).abs(),
        ];
        diffs.extend(
            r.sqrt_diag
                .iter()
                .zip(nums(&inst["sqrt_diag"]))
                .map(|(a, b)| (a - b).abs()),
        );
        let d = diffs.into_iter().fold(0.0, f64::max);
        if d >= 1e-9 {
            return Err(format!("{} M={m}: deviation {d:e}", inst["alphabet"]));
        }
        worst = worst.max(d);
    }
    Ok(format!("{checked} instances, max deviation {worst:.1e}"))
}

fn criterion_11() -> Outcome {
    let chi =
        holevo_rate(&gram_psk(&PskParams::new(4, 50.0).unwrap())).map_err(|e| e.to_string())?;
    if (chi - 2.0).abs() >= 1e-8 {
        return Err(format!("chi(PSK4, n=50) = {chi}"));
    }
    for m in [2, 4, 8, 16] {
        let grams = [
            gram_psk(&PskParams::new(m, 0.0).unwrap()),
            gram_cfsk(&CfskParams::new(m, 1.1, 2.3, 0.0).unwrap()),
            {
                let d = DcfskParams::new(m, 1, 1.1, PI, 0.0, PhaseOffsetMode::CfskMatched).unwrap();
                gram_dcfsk(&d, &d.expansion().map_err(|e| e.to_string())?).unwrap()
            },
        ];
        for g in grams {
            let chi0 = holevo_rate(&g).map_err(|e| e.to_string())?;
            let (p, _) = srm_success(&g).map_err(|e| e.to_string())?;
            if chi0.abs() > 1e-12 || (p - 1.0 / m as f64).abs() > 1e-12 {
                return Err(format!("M={m} zero energy: chi {chi0}, p_srm {p}"));
            }
        }
    }
    Ok(format!(
        "chi(PSK4, n=50) = 2 - {:.1e}; zero-energy chi = 0, p_srm = 1/M",
        2.0 - chi
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("Gram structure suite", criterion_1),
        ("binary PSK Helstrom coincidence", criterion_2),
        ("SRM optimality on PSK", criterion_3),
        ("SRM non-optimality for CFSK, M=16", criterion_4),
        ("bound sandwich and low-energy headroom", criterion_5),
        ("capacity anchor and rate ceiling", criterion_6),
        ("PSK mode efficiency over CFSK", criterion_7),
        ("dCFSK/CFSK SRM ratio, M=4, L=1", criterion_8),
        ("dCFSK between binary and 16-ary PSK", criterion_9),
        ("high-precision oracle equivalence", criterion_10),
        ("energy limits", criterion_11),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failures} failed",
        criteria.len() - failures
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
