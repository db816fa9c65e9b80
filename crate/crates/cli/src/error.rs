use std::fmt;

use polarispec_core::Error as CoreError;

/// CLI failure, grouped by exit status.
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Numerical(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io(_) => 4,
        }
    }

    /// Prefixes the message with the config key it concerns.
    pub fn at(self, key: &str) -> Self {
        match self {
            CliError::Config(m) => CliError::Config(format!("{key}: {m}")),
            CliError::Numerical(m) => CliError::Numerical(format!("{key}: {m}")),
            CliError::Io(m) => CliError::Io(m),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "config error: {m}"),
            CliError::Numerical(m) => write!(f, "numerical error: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Validation(m) => CliError::Config(m),
            CoreError::Io(e) => CliError::Io(e.to_string()),
            CoreError::Csv(e) => CliError::Io(e.to_string()),
            other => CliError::Numerical(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
