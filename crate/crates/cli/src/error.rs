use std::io;

use thiserror::Error;

/// Failures of the command-line layer, each tied to an exit status.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] queencover_core::Error),
    #[error(transparent)]
    Record(#[from] RecordError),
    #[error("verification failed: {0}")]
    Mismatch(String),
    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: io::Error,
    },
}

impl CliError {
    pub fn io(context: impl Into<String>, source: io::Error) -> Self {
        CliError::Io { context: context.into(), source }
    }

    /// 2 for bad input, 3 for a refused budget, 4 for a broken invariant.
    pub fn exit_code(&self) -> i32 {
        use queencover_core::Error as E;
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(E::BudgetExceeded { .. }) => 3,
            CliError::Core(E::Invariant(_)) | CliError::Mismatch(_) => 4,
            CliError::Core(_) => 2,
            CliError::Record(RecordError::Validation { .. }) => 4,
            CliError::Record(_) => 2,
            CliError::Io { .. } => 1,
        }
    }
}

/// Problems reading a stored result record.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum RecordError {
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("unsupported schema_version {found} (this build reads {supported})")]
    UnsupportedVersion { found: u64, supported: u32 },
    #[error("invalid field `{field}`: {message}")]
    Validation { field: String, message: String },
}
