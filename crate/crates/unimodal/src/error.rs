use thiserror::Error;

/// Errors surfaced by the toolkit. The CLI maps these onto exit codes:
/// precondition/domain failures are code 3, exhausted numeric budgets code 4.
#[derive(Debug, Error)]
pub enum Error {
    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("quadrature budget exceeded ({context}): partial sum {partial:.6e}, error estimate {err_estimate:.3e} after {evals} evaluations")]
    QuadratureBudget {
        context: String,
        partial: f64,
        err_estimate: f64,
        evals: usize,
    },

    #[error("requested value {requested:.6e} above tabulated maximum {achievable:.6e}")]
    Range { requested: f64, achievable: f64 },

    #[error("unimodality violated: value {value:.6e} at r = {r:.6e} below noise floor")]
    UnimodalityViolation { r: f64, value: f64 },

    #[error("integrability check failed: {0}")]
    Integrability(String),

    #[error("unsupported route: {0}")]
    Unsupported(String),

    #[error("statistical error {stderr:.3e} exceeds {limit:.0}% of value {value:.3e}")]
    InsufficientSamples { value: f64, stderr: f64, limit: f64 },

    #[error("non-convergent extrapolation: tail {0:?}")]
    Extrapolation(Vec<f64>),

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Exit code the CLI reports for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Precondition(_) | Error::Domain(_) | Error::Range { .. } | Error::Config(_) => 3,
            Error::QuadratureBudget { .. } | Error::Extrapolation(_) => 4,
            _ => 1,
        }
    }
}
