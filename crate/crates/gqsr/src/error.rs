use thiserror::Error;

/// Everything that can go wrong in the library.
///
/// The CLI maps each variant onto an exit code through [`Error::exit_code`].
#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown species `{name}`; available: {available}")]
    UnknownSpecies { name: String, available: String },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("quadrature did not converge: estimate {estimate:e}, error {error:e} > tolerance {tol:e}")]
    NoConvergence { estimate: f64, error: f64, tol: f64 },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("memory budget exceeded: need {needed} bytes, budget {budget} bytes; use a larger cell size")]
    MemoryBudget { needed: usize, budget: usize },

    #[error("config: {0}")]
    Config(String),

    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// 0 ok, 1 validation, 2 numerical, 3 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::UnknownSpecies { .. }
            | Error::Invalid(_)
            | Error::NotApplicable(_)
            | Error::Config(_) => 1,
            Error::NoConvergence { .. } | Error::Numerical(_) | Error::MemoryBudget { .. } => 2,
            Error::Io(_) | Error::Csv(_) | Error::Json(_) => 3,
        }
    }
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::Invalid(msg.into())
}

/// Fails unless `x` is finite and strictly positive.
pub(crate) fn positive(name: &str, x: f64) -> Result<f64> {
    if x.is_finite() && x > 0.0 {
        Ok(x)
    } else {
        Err(invalid(format!("{name} must be finite and > 0, got {x}")))
    }
}

/// Fails unless `x` is finite and non-negative.
pub(crate) fn non_negative(name: &str, x: f64) -> Result<f64> {
    if x.is_finite() && x >= 0.0 {
        Ok(x)
    } else {
        Err(invalid(format!("{name} must be finite and >= 0, got {x}")))
    }
}
