#![allow(dead_code)]

use std::f64::consts::PI;

use cfsk_core::alphabet::{
    gram_cfsk, gram_dcfsk, gram_psk, CfskParams, DcfskParams, PhaseOffsetMode, PskParams,
};
use cfsk_core::{GramMatrix, C64};
use nalgebra::DMatrix;
use rand::Rng;
use serde_json::Value;

pub fn oracle() -> Value {
    let text = include_str!("../fixtures/oracle.json");
    serde_json::from_str(text).expect("oracle fixture parses")
}

/// Gram matrix of a fixture instance.
pub fn build(inst: &Value) -> GramMatrix {
    let m = inst["m"].as_u64().unwrap() as usize;
    match inst["alphabet"].as_str().unwrap() {
        "cfsk" => gram_cfsk(
            &CfskParams::new(
                m,
                num(&inst["delta_theta"]),
                num(&inst["delta_omega_t"]),
                num(&inst["photons"]),
            )
            .unwrap(),
        ),
        "psk" => gram_psk(&PskParams::new(m, num(&inst["photons"])).unwrap()),
        "dcfsk" => {
            let p = DcfskParams::new(
                m,
                inst["l"].as_u64().unwrap() as usize,
                num(&inst["delta_theta"]),
                num(&inst["delta_omega_t"]),
                num(&inst["photons"]),
                PhaseOffsetMode::CfskMatched,
            )
            .unwrap();
            gram_dcfsk(&p, &p.expansion().unwrap()).unwrap()
        }
        other => panic!("unknown alphabet {other}"),
    }
}

pub fn num(v: &Value) -> f64 {
    v.as_str()
        .expect("decimal string")
        .trim()
        .parse()
        .expect("f64")
}

pub fn nums(v: &Value) -> Vec<f64> {
    v.as_array().expect("array").iter().map(num).collect()
}

pub fn matrix(re: &Value, im: &Value) -> DMatrix<C64> {
    let re: Vec<Vec<f64>> = re.as_array().unwrap().iter().map(nums).collect();
    let im: Vec<Vec<f64>> = im.as_array().unwrap().iter().map(nums).collect();
    let m = re.len();
    DMatrix::from_fn(m, m, |j, k| C64::new(re[j][k], im[j][k]))
}

pub fn max_entry_diff(a: &DMatrix<C64>, b: &DMatrix<C64>) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Eigenvalues of a Hermitian circulant matrix from the DFT of its first row,
/// sorted descending.
pub fn circulant_eigenvalues(first_row: &[C64]) -> Vec<f64> {
    let m = first_row.len();
    let mut out: Vec<f64> = (0..m)
        .map(|k| {
            first_row
                .iter()
                .enumerate()
                .map(|(j, g)| g * C64::cis(-2.0 * PI * (j * k) as f64 / m as f64))
                .sum::<C64>()
                .re
        })
        .collect();
    out.sort_by(|a, b| b.total_cmp(a));
    out
}

pub fn random_unitary<R: Rng>(rng: &mut R, n: usize) -> DMatrix<C64> {
    let a = DMatrix::from_fn(n, n, |_, _| {
        C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    });
    a.qr().q()
}

/// `U diag(d) U^H` for nonnegative `d`.
pub fn random_psd<R: Rng>(rng: &mut R, n: usize) -> DMatrix<C64> {
    let u = random_unitary(rng, n);
    let d = DMatrix::from_diagonal(&nalgebra::DVector::from_fn(n, |_, _| {
        // Include exact zeros now and then.
        if rng.gen_bool(0.15) {
            C64::new(0.0, 0.0)
        } else {
            C64::new(rng.gen_range(0.0..3.0), 0.0)
        }
    }));
    let a = &u * d * u.adjoint();
    (&a + a.adjoint()) * C64::new(0.5, 0.0)
}
