use thiserror::Error;

use crate::run::RunArtifacts;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("line {line}: {msg}")]
    Config { line: usize, msg: String },

    #[error("missing required key `{0}`")]
    MissingKey(&'static str),

    #[error("fit needs at least {need} usable points, found {found}")]
    InsufficientPoints { need: usize, found: usize },

    #[error("solver stopped at t = {t}: {source}")]
    Solver {
        t: f64,
        source: ddpe_core::Error,
        /// Everything recorded before the failure.
        partial: Box<RunArtifacts>,
    },

    #[error(transparent)]
    Core(#[from] ddpe_core::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("{0}")]
    Invalid(String),
}

impl HarnessError {
    /// Process exit code for the CLI: 2 for configuration problems, 3 for
    /// solver failures, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Config { .. } | HarnessError::MissingKey(_) => 2,
            HarnessError::Solver { .. } => 3,
            HarnessError::Core(ddpe_core::Error::Instability { .. }) => 3,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, HarnessError>;
