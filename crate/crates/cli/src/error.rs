use std::path::Path;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    ExactCap(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Input(_) => 3,
            CliError::ExactCap(_) => 4,
        }
    }

    /// Attaches the input path to a library error.
    pub fn from_lib(path: &Path, e: ktruss::Error) -> Self {
        match e {
            ktruss::Error::Parse { line, message } => CliError::Input(format!("{}:{line}: {message}", path.display())),
            ktruss::Error::Io(io) => CliError::Input(format!("{}: {io}", path.display())),
            e @ ktruss::Error::ExactCapExceeded { .. } => CliError::ExactCap(e.to_string()),
            e => CliError::Usage(e.to_string()),
        }
    }

    pub fn io(what: &Path, e: std::io::Error) -> Self {
        CliError::Input(format!("{}: {e}", what.display()))
    }
}
