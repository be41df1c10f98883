use std::process::ExitCode;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("invariant check failed: {0} violation(s)")]
    CheckFailed(usize),
    #[error("{0}")]
    Degenerate(String),
    #[error("convergence failure: {0}")]
    NotConverged(String),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::CheckFailed(_) => 1,
            CliError::Config(_) | CliError::Io(_) => 2,
            CliError::Degenerate(_) => 3,
            CliError::NotConverged(_) => 4,
        })
    }
}

impl From<yring::Error> for CliError {
    fn from(e: yring::Error) -> Self {
        match e {
            yring::Error::DegenerateRing { .. } | yring::Error::SingularMatrix { .. } => {
                CliError::Degenerate(e.to_string())
            }
            yring::Error::NotConverged { .. } => CliError::NotConverged(e.to_string()),
            yring::Error::InvalidArgument(msg) => CliError::Config(msg),
        }
    }
}
