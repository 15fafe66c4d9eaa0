use std::fmt;

/// Failure of a run, carrying its process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Inconsistent or incomplete flags (exit 1).
    Usage(String),
    /// The library rejected the request (exit 2).
    Domain(pseudospin_core::Error, String),
    /// Writing outputs failed (exit 2).
    Io(String),
    /// At least one verification check failed (exit 3).
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Domain(..) | CliError::Io(_) => 2,
            CliError::Verification(_) => 3,
        }
    }

    pub fn io(e: impl fmt::Display) -> Self {
        CliError::Io(e.to_string())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(s) => write!(f, "usage: {s}"),
            CliError::Domain(e, ctx) => write!(f, "{ctx}: {e}"),
            CliError::Io(s) => write!(f, "output: {s}"),
            CliError::Verification(s) => write!(f, "verification failed: {s}"),
        }
    }
}

impl std::error::Error for CliError {}

/// Attaches context to a library error.
pub trait Context<T> {
    fn context(self, ctx: impl FnOnce() -> String) -> Result<T, CliError>;
}

impl<T> Context<T> for pseudospin_core::Result<T> {
    fn context(self, ctx: impl FnOnce() -> String) -> Result<T, CliError> {
        self.map_err(|e| CliError::Domain(e, ctx()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Usage(String::new()).exit_code(), 1);
        assert_eq!(CliError::Domain(pseudospin_core::Error::SPole(0.0), String::new()).exit_code(), 2);
        assert_eq!(CliError::Io(String::new()).exit_code(), 2);
        assert_eq!(CliError::Verification(String::new()).exit_code(), 3);
    }
}
