//! Error type carrying the process exit code. The codes are part of the
//! scripting contract:
//!
//! 0 settled / all checks passed
//! 1 a verification check failed
//! 2 bad configuration or usage
//! 3 inconclusive result (an undeclared tail limit blocks the answer)
//! 4 I/O failure
//! 5 the requested computation is not supported for this operator family

use specsum_core::Error as CoreError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("usage error: {0}")]
    Usage(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("verification failed: {0}")]
    VerifyFailed(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::VerifyFailed(_) => 1,
            CliError::Config(_) | CliError::Usage(_) => 2,
            CliError::Inconclusive(_) => 3,
            CliError::Io(_) => 4,
            CliError::Unsupported(_) => 5,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::UndeclaredLimit(m) => CliError::Inconclusive(m),
            CoreError::UnsupportedModel(m) => CliError::Unsupported(m),
            CoreError::InsufficientData(m) => CliError::Unsupported(m),
            other => CliError::Config(other.to_string()),
        }
    }
}
