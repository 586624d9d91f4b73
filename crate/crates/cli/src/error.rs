use std::fmt;

pub const EXIT_INPUT: u8 = 2;
pub const EXIT_INVARIANT: u8 = 3;

/// An error carrying its process exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError { code: EXIT_INPUT, message: message.into() }
    }

    pub fn invariant(message: impl Into<String>) -> Self {
        CliError { code: EXIT_INVARIANT, message: message.into() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<torsion_core::Error> for CliError {
    fn from(e: torsion_core::Error) -> Self {
        match e {
            torsion_core::Error::Invariant(_) => CliError::invariant(e.to_string()),
            _ => CliError::input(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::input(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::input(format!("invalid JSON: {e}"))
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::input(format!("invalid CSV: {e}"))
    }
}

pub type CliResult<T> = Result<T, CliError>;
