use std::fmt;

use thiserror::Error;

/// A density-matrix invariant that failed validation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Invariant {
    Square,
    Finite,
    Hermitian,
    Trace,
    Psd,
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Invariant::Square => "square",
            Invariant::Finite => "finite",
            Invariant::Hermitian => "hermitian",
            Invariant::Trace => "trace",
            Invariant::Psd => "psd",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid state ({invariant}): {detail}")]
    Validation { invariant: Invariant, detail: String },

    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn validation(invariant: Invariant, detail: impl Into<String>) -> Self {
        Error::Validation {
            invariant,
            detail: detail.into(),
        }
    }

    /// The failed invariant, for validation errors.
    pub fn invariant(&self) -> Option<Invariant> {
        match self {
            Error::Validation { invariant, .. } => Some(*invariant),
            _ => None,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
