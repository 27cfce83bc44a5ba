use brauerkit_core::Error;
use thiserror::Error as ThisError;

#[derive(Debug, ThisError)]
pub enum CliError {
    /// Malformed arguments or input files. Exit code 2.
    #[error("{0}")]
    Parse(String),
    /// A library operation rejected its input. Exit code 1.
    #[error(transparent)]
    Domain(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Domain(Error::Parse(_)) => 2,
            CliError::Domain(_) => 1,
        }
    }

    pub fn variant_name(&self) -> &'static str {
        match self {
            CliError::Parse(_) => "Parse",
            CliError::Domain(e) => e.variant_name(),
        }
    }
}
