//! Error-to-exit-status mapping: 1 usage, 2 input, 3 selection.

use boardport_core::codegen::PlanError;
use boardport_core::hardware_graph::HardwareError;
use boardport_core::platform_kb::RepoError;
use boardport_core::recommender::IndexError;
use boardport_core::source_analysis::{AnalysisError, ParseError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Selection(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Input(_) => 2,
            CliError::Selection(_) => 3,
        }
    }
}

impl From<RepoError> for CliError {
    fn from(err: RepoError) -> Self {
        CliError::Input(err.to_string())
    }
}

impl From<HardwareError> for CliError {
    fn from(err: HardwareError) -> Self {
        CliError::Input(err.to_string())
    }
}

impl From<IndexError> for CliError {
    fn from(err: IndexError) -> Self {
        CliError::Input(err.to_string())
    }
}

impl From<AnalysisError> for CliError {
    fn from(err: AnalysisError) -> Self {
        CliError::Input(err.to_string())
    }
}

impl From<ParseError> for CliError {
    fn from(err: ParseError) -> Self {
        CliError::Input(err.to_string())
    }
}

impl From<PlanError> for CliError {
    fn from(err: PlanError) -> Self {
        CliError::Selection(err.to_string())
    }
}
