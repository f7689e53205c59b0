use std::path::PathBuf;

use thiserror::Error;

/// Exit code for a computation that ran but reached a negative mathematical verdict.
pub const EXIT_MATH: i32 = 2;
/// Exit code for bad invocations, unreadable files and malformed documents.
pub const EXIT_USAGE: i32 = 1;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("schema error at {location}: {message}")]
    Schema { location: String, message: String },
    /// The input is well formed but the requested object does not exist:
    /// no filtration, non-divisive data, no integral extension.
    #[error("{0}")]
    Math(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Math(_) => EXIT_MATH,
            _ => EXIT_USAGE,
        }
    }

    pub fn schema(location: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Schema {
            location: location.into(),
            message: message.into(),
        }
    }
}
