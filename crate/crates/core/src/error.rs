use thiserror::Error;

/// Errors reported by the analysis routines.
///
/// `NonSimpleEigenvalue`, `NoConvergence`, and `NumericalRefusal` describe
/// numerical refusals: the input was well-formed but the requested quantity
/// is not defined (or not certifiable) at it. The remaining variants are
/// input validation failures.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("shape precondition violated: {0}")]
    ShapeMismatch(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("non-simple eigenvalue: {0}")]
    NonSimpleEigenvalue(String),
    #[error("no convergence: {0}")]
    NoConvergence(String),
    #[error("numerical refusal: {0}")]
    NumericalRefusal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for refusals on numerical grounds (as opposed to malformed input).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NonSimpleEigenvalue(_) | Error::NoConvergence(_) | Error::NumericalRefusal(_)
        )
    }
}
