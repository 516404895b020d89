use thiserror::Error;

/// Exit status for success.
pub const EXIT_OK: i32 = 0;
/// Exit status when a numerical check fails.
pub const EXIT_NUMERICAL: i32 = 1;
/// Exit status for invalid arguments.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Library(#[from] qseries::Error),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
    #[error("cannot serialize output: {0}")]
    Serialize(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Library(qseries::Error::Overflow { .. } | qseries::Error::Capacity { .. }) => {
                EXIT_USAGE
            }
            _ => EXIT_NUMERICAL,
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Serialize(e.to_string())
    }
}
