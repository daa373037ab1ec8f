//! Gram-matrix analysis of coherent-state keying alphabets.
//!
//! Every figure of merit in this crate is computed from the Gram matrix of an
//! alphabet of pure coherent states:
//!
//! - [`alphabet`] builds the Gram matrices of CFSK, PSK and the discrete-mode
//!   dCFSK alphabet (including the Fourier-series machinery the latter needs).
//! - [`spectral`] holds the dense Hermitian linear algebra: eigendecomposition,
//!   PSD square root, von Neumann entropy and Toeplitz/circulant detectors.
//! - [`discrimination`] computes square-root-measurement success
//!   probabilities, the constant-diagonal optimality test and the upper/lower
//!   bounds on the optimal success probability.
//! - [`rates`] computes Holevo quantities, mode efficiencies and the lossy
//!   bosonic capacity baseline.
//! - [`tuning`] searches alphabet parameters for a chosen objective.
//!
//! ```
//! use cfsk_core::alphabet::{gram_psk, PskParams};
//! use cfsk_core::discrimination::srm_success;
//!
//! let gram = gram_psk(&PskParams::new(4, 1.0).unwrap());
//! let (p_srm, _) = srm_success(&gram).unwrap();
//! assert!(p_srm > 0.25 && p_srm < 1.0);
//! ```

pub mod alphabet;
pub mod discrimination;
pub mod error;
pub mod quadrature;
pub mod rates;
pub mod spectral;
pub mod tuning;

pub use alphabet::{
    CfskParams, DcfskParams, FourierExpansion, GramMatrix, PhaseOffsetMode, PskParams,
};
pub use discrimination::DiscriminationReport;
pub use error::{Error, Result};
pub use rates::RateReport;
pub use tuning::{Objective, TuningResult};

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;
