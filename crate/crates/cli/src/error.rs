use std::fmt;

use ktf_core::catalog::CatalogError;
use ktf_core::engine::EngineError;
use ktf_core::search::SearchError;
use ktf_core::{ModelError, WordError};

#[derive(Debug)]
pub enum CliError {
    /// Bad input: exit code 2.
    Usage(String),
    /// A check ran and came out negative: exit code 1.
    Failed(String),
    /// An internal invariant broke: exit code 3.
    Internal(String),
    /// The reader closed standard output early.
    Closed,
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Internal(_) => 3,
            CliError::Closed => 0,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Failed(m) | CliError::Internal(m) => f.write_str(m),
            CliError::Closed => f.write_str("output closed"),
        }
    }
}

impl From<WordError> for CliError {
    fn from(e: WordError) -> Self {
        match e {
            WordError::BadToken(_)
            | WordError::IndexOutOfRange { .. }
            | WordError::ZeroTopologies => CliError::Usage(e.to_string()),
            _ => CliError::Internal(e.to_string()),
        }
    }
}

impl From<ModelError> for CliError {
    fn from(e: ModelError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<CatalogError> for CliError {
    fn from(e: CatalogError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<EngineError> for CliError {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::Word(w) => w.into(),
            EngineError::SizeGuard { .. } | EngineError::ModelMismatch(_) => {
                CliError::Internal(e.to_string())
            }
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<SearchError> for CliError {
    fn from(e: SearchError) -> Self {
        match e {
            SearchError::NotFoundWithinLimit { .. } => CliError::Failed(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            return CliError::Closed;
        }
        CliError::Internal(e.to_string())
    }
}
