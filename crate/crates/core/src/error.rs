use thiserror::Error;

/// Failure modes shared by every module.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("operands live over different fields or automorphisms")]
    FieldMismatch,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("matrix is singular")]
    Singular,
    #[error("polynomial has zero constant term")]
    ZeroConstantTerm,
    #[error("{0}")]
    Domain(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("budget exceeded: {what} needs {needed}, limit is {limit}")]
    Budget { what: String, needed: u128, limit: u128 },
    #[error("uncorrectable word: {0}")]
    Uncorrectable(String),
    #[error("certification failed: {0}")]
    Certification(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn dim(msg: impl Into<String>) -> Self {
        Error::Dimension(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    pub(crate) fn budget(what: impl Into<String>, needed: u128, limit: u128) -> Self {
        Error::Budget { what: what.into(), needed, limit }
    }
}

/// Checks `needed <= limit`, reporting `what` otherwise.
pub(crate) fn check_budget(what: &str, needed: u128, limit: u128) -> Result<()> {
    if needed > limit {
        Err(Error::budget(what, needed, limit))
    } else {
        Ok(())
    }
}
