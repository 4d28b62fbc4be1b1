//! Error types shared across the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Invalid medium parameters (exponents, dimension).
    #[error("parameter error: {0}")]
    Parameter(String),

    /// A region or evaluation point lies outside the admissible domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A documented precondition of an operation was violated.
    #[error("contract error: {0}")]
    Contract(String),

    /// An iterative solve did not reach its tolerance within the budget.
    #[error("convergence error: {msg} (last residual {residual:.3e})")]
    Convergence { msg: String, residual: f64 },

    /// Non-finite values or failed quadrature.
    #[error("numeric error: {0}")]
    Numeric(String),

    /// The adaptive time step collapsed below the representable floor.
    #[error("stiffness error: dt underflow ({dt:.3e})")]
    Stiffness { dt: f64 },

    /// Bad experiment configuration (missing inputs, unwritable output, ...).
    #[error("configuration error: {0}")]
    Config(String),

    /// A verdict could not be reached at the available resolution.
    #[error("inconclusive: {0}")]
    Inconclusive(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parameter(_) | Error::Domain(_) | Error::Contract(_) | Error::Config(_) => 2,
            Error::Convergence { .. } | Error::Numeric(_) | Error::Stiffness { .. } => 3,
            Error::Inconclusive(_) => 4,
        }
    }

    /// Stable machine-readable kind tag for error records.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parameter(_) => "parameter",
            Error::Domain(_) => "domain",
            Error::Contract(_) => "contract",
            Error::Convergence { .. } => "convergence",
            Error::Numeric(_) => "numeric",
            Error::Stiffness { .. } => "stiffness",
            Error::Config(_) => "config",
            Error::Inconclusive(_) => "inconclusive",
        }
    }
}
