//! Crate-level error and its mapping to process exit codes.

use thiserror::Error;

use crate::decompose::DecomposeError;
use crate::fj::FjError;
use crate::format::FormatError;
use crate::identity::BuildError;
use crate::weyl::GroupError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown form `{0}`")]
    UnknownForm(String),
    #[error("{0}")]
    Usage(String),
    #[error("build failed: {0}")]
    Build(#[from] BuildError),
    #[error(transparent)]
    Decompose(#[from] DecomposeError),
    #[error("invalid form file: {0}")]
    Format(#[from] FormatError),
    #[error(transparent)]
    Series(#[from] FjError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Failure classes with stable exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Bad arguments, unknown names, unreadable or malformed input.
    Usage,
    /// A generator could not be constructed.
    Build,
    /// An algebraic operation on valid input failed.
    Algebraic,
}

impl ErrorKind {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorKind::Usage => 2,
            ErrorKind::Build => 3,
            ErrorKind::Algebraic => 4,
        }
    }
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::UnknownForm(_) | Error::Usage(_) | Error::Format(_) => ErrorKind::Usage,
            Error::Group(GroupError::UnknownElement(_)) => ErrorKind::Usage,
            Error::Build(_) => ErrorKind::Build,
            Error::Decompose(_) | Error::Series(_) | Error::Group(_) => ErrorKind::Algebraic,
        }
    }
}
