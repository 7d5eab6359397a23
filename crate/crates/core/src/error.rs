use thiserror::Error;

/// Errors raised by the algebra kernel and the constructions built on it.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("denominator vanishes identically after substitution")]
    DenominatorVanishes,

    /// A restricted weight-function term kept a denominator factor that no
    /// numerator factor cancels. Valid input never produces this.
    #[error("denominator factor {factor} does not cancel in term {term}")]
    NonCancellingDenominator { factor: String, term: usize },

    #[error("singular matrix: elimination found rank {rank} < {dim}")]
    SingularMatrix { rank: usize, dim: usize },

    #[error("size guard `{guard}` violated: {detail}")]
    GuardViolation { guard: &'static str, detail: String },

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("no solution of degree at most {degree_bound}")]
    NoSolution { degree_bound: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
