use thiserror::Error;

/// Failure modes shared by every module.
///
/// `Capacity` and friends are expected at the edges of what the desk-scale
/// reference machinery can handle; `Invariant` always indicates a bug or a
/// broken upstream contract.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("decomposition not found (best imbalance {best_imbalance} > allowed {allowed})")]
    DecompositionNotFound {
        best_imbalance: usize,
        allowed: usize,
    },
    #[error("tree decomposition construction failed: {0}")]
    TreeDecomposition(String),
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

/// Coarse classification used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Input,
    Capacity,
    Internal,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Input(_) | Error::Parse { .. } => ErrorKind::Input,
            Error::Capacity(_)
            | Error::DecompositionNotFound { .. }
            | Error::TreeDecomposition(_) => ErrorKind::Capacity,
            Error::Contract(_) | Error::Invariant(_) => ErrorKind::Internal,
        }
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
