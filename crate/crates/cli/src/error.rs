use std::path::PathBuf;

use eqnielsen_core::Error as CoreError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("schema error: {0}")]
    Schema(String),
    #[error("{0}")]
    Core(CoreError),
    #[error("oracle mismatch: {0}")]
    Mismatch(String),
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    /// 2 input, 3 resource cap, 4 oracle mismatch, 5 internal inconsistency.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Read { .. } | CliError::Schema(_) => 2,
            CliError::Write { .. } => 2,
            CliError::Core(e) if e.is_resource_cap() => 3,
            CliError::Core(CoreError::Input(_)) => 2,
            CliError::Core(_) => 5,
            CliError::Mismatch(_) => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
