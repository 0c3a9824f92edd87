use thiserror::Error;

/// Errors raised by the numerical routines in this crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("grids do not match")]
    GridMismatch,

    #[error("signal is not normalized (squared norm {norm:.3e})")]
    Normalization { norm: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("grid window does not cover the pulse: {0}")]
    Coverage(String),

    #[error("target has no positive-frequency content")]
    DegenerateTarget,

    #[error("seed is infeasible: negative-frequency weight {eta:.6} is not below 1/2")]
    InfeasibleSeed { eta: f64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("series did not converge: {0}")]
    Convergence(String),

    #[error("smearing is degenerate: {0}")]
    DegenerateMeasurement(String),

    #[error("Fock truncation too small: {0}")]
    Truncation(String),

    #[error("internal consistency check failed: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
