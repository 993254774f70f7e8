use thiserror::Error;

/// Errors produced by domain validation and the numerical kernels.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("temperature must be positive, got {0}")]
    NonPositiveTemperature(f64),

    #[error("matrix is not Hermitian (max deviation {max_dev:.3e})")]
    NotHermitian { max_dev: f64 },

    #[error("not a valid density matrix: {0}")]
    InvalidDensityMatrix(String),

    #[error("resonant coupler: detuning of qubit {qubit} is zero, Schrieffer-Wolff reduction undefined")]
    ResonantCoupler { qubit: usize },

    #[error("effective coupling is zero; no sudden-death temperature exists")]
    ZeroCoupling,

    #[error("coupler ground-state probability {prob:.3e} too small to condition on")]
    ProjectionFailed { prob: f64 },

    #[error("eigensolver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("invalid sweep specification: {0}")]
    InvalidSweep(String),
}

pub type Result<T> = std::result::Result<T, Error>;
