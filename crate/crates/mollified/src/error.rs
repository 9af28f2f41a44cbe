use thiserror::Error;

/// Error type shared by all fallible operations in this crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A parameter lies outside its admissible domain.
    #[error("invalid {param}: {reason}")]
    Domain {
        param: &'static str,
        reason: String,
    },

    /// An iterative routine exhausted its budget. `last` holds the final
    /// iterate so callers can inspect how far the routine got.
    #[error("{context} did not converge within {budget} iterations (last iterate {last:?})")]
    NonConvergence {
        context: &'static str,
        budget: usize,
        last: Vec<f64>,
    },

    /// A computation produced a result outside its guaranteed accuracy.
    #[error("numerical failure in {context}: {reason}")]
    Numerical {
        context: &'static str,
        reason: String,
    },
}

impl Error {
    pub fn domain(param: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain {
            param,
            reason: reason.into(),
        }
    }

    pub fn numerical(context: &'static str, reason: impl Into<String>) -> Self {
        Error::Numerical {
            context,
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
