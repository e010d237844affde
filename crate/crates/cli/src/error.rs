use std::fmt::Display;
use std::path::Path;

use modelsel_core::feature_model::ModelError;
use modelsel_core::heuristics::HeuristicError;
use modelsel_core::profiler::ProfileError;
use modelsel_core::transition::TransitionError;
use thiserror::Error;

/// Failures, split by exit code: 1 for domain failures, 2 for I/O and
/// syntax failures.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Syntax(String),
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Io { .. } | CliError::Syntax(_) => 2,
        }
    }

    pub fn io(path: &Path, source: std::io::Error) -> CliError {
        CliError::Io {
            path: path.display().to_string(),
            source,
        }
    }

    pub fn syntax(path: &Path, err: impl Display) -> CliError {
        CliError::Syntax(format!("{}: {err}", path.display()))
    }
}

impl From<ProfileError> for CliError {
    fn from(e: ProfileError) -> Self {
        match e {
            ProfileError::UnknownTarget(_)
            | ProfileError::UnsupportedTarget { .. }
            | ProfileError::AllNull(_)
            | ProfileError::InvalidProfile(_) => CliError::Domain(e.to_string()),
            _ => CliError::Syntax(e.to_string()),
        }
    }
}

impl From<HeuristicError> for CliError {
    fn from(e: HeuristicError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<TransitionError> for CliError {
    fn from(e: TransitionError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<ModelError> for CliError {
    fn from(e: ModelError) -> Self {
        match e {
            ModelError::TooLarge { .. } => CliError::Domain(e.to_string()),
            _ => CliError::Syntax(e.to_string()),
        }
    }
}
