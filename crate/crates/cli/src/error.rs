use std::path::PathBuf;

use thiserror::Error;

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),

    #[error("config: {0}")]
    Config(String),

    #[error(transparent)]
    Core(#[from] gaudin_core::Error),

    #[error("{0}: {1}")]
    Io(PathBuf, std::io::Error),

    #[error("{0}: malformed artifact: {1}")]
    Artifact(PathBuf, serde_json::Error),

    #[error("no build or verify artifacts in {0}; run `build` or `verify` with --out {0} first")]
    MissingArtifacts(PathBuf),
}

impl CliError {
    /// The message without the category prefix.
    pub fn message(&self) -> String {
        match self {
            CliError::Usage(m) | CliError::Config(m) => m.clone(),
            other => other.to_string(),
        }
    }
}
