use std::fmt;
use std::process::ExitCode;

pub const MISMATCH: u8 = 1;
pub const ANALYSIS: u8 = 2;
pub const USAGE: u8 = 64;
pub const DATA: u8 = 65;
pub const NO_INPUT: u8 = 66;
pub const CANT_CREATE: u8 = 73;
pub const IO: u8 = 74;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        Self::new(USAGE, message)
    }

    pub fn with_context(mut self, path: &std::path::Path) -> Self {
        self.message = format!("{}: {}", path.display(), self.message);
        self
    }

    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(self.code)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<permcrypt::Error> for CliError {
    fn from(e: permcrypt::Error) -> Self {
        use permcrypt::Error::*;
        let code = match &e {
            InvalidDimension { .. } | InvalidDegree(_) | OrderTooLarge(_) => USAGE,
            NotInSubgroup(_) | UnsupportedStructure(_) | NonCoprimeModuli(..) => ANALYSIS,
            _ => DATA,
        };
        Self::new(code, e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        Self::new(IO, e.to_string())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
