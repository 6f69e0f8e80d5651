use thiserror::Error;

/// Everything that can go wrong in this crate.
///
/// [`Error::Consistency`] is special: it means two independent computations
/// of the same quantity disagreed, which points at a bug rather than bad input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Validation(String),

    #[error("e = {e}: not negative definite (not a singularity graph)")]
    NotNegativeDefinite { e: String },

    #[error("excluded: cyclic quotient (genus 0 with {arms} arm(s)); star formulas need t >= 3 when g = 0")]
    CyclicQuotient { arms: usize },

    #[error("genus > 0: {what} (g = {genus})")]
    PositiveGenus { genus: u32, what: &'static str },

    #[error("singular matrix")]
    SingularMatrix,

    #[error("matrix is not negative definite")]
    MatrixNotNegativeDefinite,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub(crate) fn consistency(msg: impl Into<String>) -> Self {
        Error::Consistency(msg.into())
    }

    /// True when the error signals a disagreement between independent routes.
    pub fn is_consistency(&self) -> bool {
        matches!(self, Error::Consistency(_))
    }
}
