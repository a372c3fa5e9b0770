use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("vector must have at least one entry")]
    EmptyVector,

    #[error("length mismatch: x has {left} entries, y has {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("entry {index} is not finite ({value})")]
    NonFinite { index: usize, value: f64 },

    #[error("entry {index} must be strictly positive, got {value}")]
    NonPositive { index: usize, value: f64 },

    #[error("{what}: argument {value} is outside the domain {domain}")]
    Domain {
        what: &'static str,
        value: f64,
        domain: String,
    },

    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("degenerate evaluation of {what} at x = {x}")]
    Degenerate { what: &'static str, x: f64 },

    #[error("{skipped} of {total} evaluation points were degenerate (limit {limit_pct}%)")]
    TooManyDegenerate {
        skipped: usize,
        total: usize,
        limit_pct: u32,
    },

    #[error("invalid grid: {0}")]
    Grid(String),

    #[error("parse error in `{input}`: {reason}")]
    Parse { input: String, reason: String },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("malformed theorem instance: {0}")]
    MalformedInstance(String),

    #[error("root bracketing failed: {0}")]
    Bracket(String),
}

impl Error {
    pub(crate) fn parse(input: &str, reason: impl Into<String>) -> Self {
        Error::Parse {
            input: input.to_string(),
            reason: reason.into(),
        }
    }

    /// True for failures caused by floating-point degeneracy rather than bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Degenerate { .. } | Error::TooManyDegenerate { .. } | Error::Bracket(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
