use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter fell outside its admissible range.
    #[error("invalid parameter `{name}` = {value}: must lie in {range}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    /// A Fourier coefficient of the expanded pulse shape is genuinely
    /// negative, so it cannot be used as an energy fraction.
    #[error(
        "negative Fourier coefficient c_{index} = {value:e} for M = {m}, L = {order}, \
         delta_omega_t = {delta_omega_t}"
    )]
    NegativeCoefficient {
        m: usize,
        order: usize,
        delta_omega_t: f64,
        index: i64,
        value: f64,
    },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not Hermitian (max |A - A^H| = {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("density matrix trace {trace} is not 1")]
    NotNormalized { trace: f64 },

    #[error("Hermitian eigensolver did not converge")]
    NoConvergence,

    #[error("quadrature did not reach tolerance within {evaluations} evaluations")]
    QuadratureBudget { evaluations: usize },

    #[error("value {value} outside [{lo}, {hi}]")]
    OutOfRange { value: f64, lo: f64, hi: f64 },

    #[error("negative photon number {0}")]
    NegativePhotons(f64),
}

impl Error {
    /// Whether the error is a configuration problem, as opposed to a numerical
    /// failure or a regime violation.
    pub fn is_configuration(&self) -> bool {
        matches!(
            self,
            Error::InvalidParameter { .. }
                | Error::DimensionMismatch { .. }
                | Error::OutOfRange { .. }
                | Error::NegativePhotons(_)
        )
    }
}
