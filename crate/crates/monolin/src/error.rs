use monolin_core::Error as CoreError;

use crate::oracle::OracleError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Core(#[from] CoreError),
    #[error("internal error: {0}")]
    Internal(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    /// 1 for bad input, 2 for broken internal invariants.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Internal(_) => 2,
            _ => 1,
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::Core(c) => CliError::Core(c),
            other => CliError::Input(other.to_string()),
        }
    }
}
