use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),

    #[error("validation failed ({invariant}): {detail}")]
    Validation { invariant: String, detail: String },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 2 usage or parse, 3 validation, 4 numerical.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Validation { .. } => 3,
            CliError::Numerical(_) => 4,
        }
    }

    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }
}

impl From<bellkit::Error> for CliError {
    fn from(e: bellkit::Error) -> Self {
        match e {
            bellkit::Error::Domain(msg) => CliError::Usage(msg),
            bellkit::Error::DimensionMismatch { expected, found } => CliError::Validation {
                invariant: "dimension".into(),
                detail: format!("expected {expected}, found {found}"),
            },
            bellkit::Error::Validation { invariant, detail } => CliError::Validation {
                invariant: invariant.to_string(),
                detail,
            },
            bellkit::Error::Numerical(msg) => CliError::Numerical(msg),
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(std::io::Error::other(e))
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
