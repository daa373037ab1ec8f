//! Holevo quantities and per-mode rates.
//!
//! For equiprobable pure states the Holevo quantity is the entropy of `G/M`.
//! The mode efficiency divides it by the number of modes an alphabet
//! occupies (M for CFSK, 1 for PSK, 2L+1 for dCFSK) at a fixed mean photon
//! number `n` per mode, and is compared with the lossy bosonic capacity
//! `C(n) = (n+1) log2(n+1) - n log2 n`.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::alphabet::{
    gram_cfsk, gram_dcfsk, gram_psk, validate_photons, CfskParams, DcfskParams, FourierExpansion,
    GramMatrix, PskParams,
};
use crate::error::{Error, Result};
use crate::spectral::von_neumann_entropy;
use crate::C64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AlphabetKind {
    Cfsk,
    Psk,
    Dcfsk,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RateReport {
    pub alphabet: AlphabetKind,
    pub m: usize,
    pub holevo_bits: f64,
    pub modes: usize,
    pub photons_per_mode: f64,
    pub total_photons: f64,
    pub rate_per_mode: f64,
    pub capacity: f64,
    /// `rate_per_mode / capacity`; absent at zero energy.
    pub ratio: Option<f64>,
}

impl RateReport {
    fn new(
        alphabet: AlphabetKind,
        m: usize,
        holevo_bits: f64,
        modes: usize,
        n: f64,
    ) -> Result<Self> {
        let capacity = capacity(n)?;
        let rate_per_mode = holevo_bits / modes as f64;
        let ratio = (n > 0.0).then(|| rate_per_mode / capacity);
        Ok(Self {
            alphabet,
            m,
            holevo_bits,
            modes,
            photons_per_mode: n,
            total_photons: modes as f64 * n,
            rate_per_mode,
            capacity,
            ratio,
        })
    }
}

/// `chi = H(G / M)` in bits.
pub fn holevo_rate(gram: &GramMatrix) -> Result<f64> {
    let m = gram.dim() as f64;
    let rho: DMatrix<C64> = gram.entries() / C64::new(m, 0.0);
    von_neumann_entropy(&rho)
}

/// CFSK at `|alpha|^2 = M n`; the photon number stored in `params` is
/// ignored.
pub fn rate_cfsk(params: &CfskParams, n: f64) -> Result<RateReport> {
    check_photons(n)?;
    let m = params.m();
    let gram = gram_cfsk(&params.with_photons(m as f64 * n)?);
    RateReport::new(AlphabetKind::Cfsk, m, holevo_rate(&gram)?, m, n)
}

pub fn rate_psk(m: usize, n: f64) -> Result<RateReport> {
    check_photons(n)?;
    let gram = gram_psk(&PskParams::new(m, n)?);
    RateReport::new(AlphabetKind::Psk, m, holevo_rate(&gram)?, 1, n)
}

/// dCFSK at `a^2 = (2L+1) n`; the photon number stored in `params` is
/// ignored.
pub fn rate_dcfsk(params: &DcfskParams, n: f64) -> Result<RateReport> {
    let expansion = params.expansion()?;
    rate_dcfsk_with(params, &expansion, n)
}

/// As [`rate_dcfsk`] with a precomputed expansion.
pub fn rate_dcfsk_with(
    params: &DcfskParams,
    expansion: &FourierExpansion,
    n: f64,
) -> Result<RateReport> {
    check_photons(n)?;
    let modes = params.modes();
    let gram = gram_dcfsk(&params.with_photons(modes as f64 * n)?, expansion)?;
    RateReport::new(
        AlphabetKind::Dcfsk,
        params.m(),
        holevo_rate(&gram)?,
        modes,
        n,
    )
}

/// Capacity of the lossy bosonic channel at `n` received photons per mode.
pub fn capacity(n: f64) -> Result<f64> {
    check_photons(n)?;
    if n == 0.0 {
        return Ok(0.0);
    }
    Ok((n + 1.0) * (n + 1.0).log2() - n * n.log2())
}

fn check_photons(n: f64) -> Result<()> {
    if n < 0.0 {
        return Err(Error::NegativePhotons(n));
    }
    validate_photons("photons_per_mode", n)
}
