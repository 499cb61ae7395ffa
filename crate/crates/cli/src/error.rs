use thiserror::Error;

/// Process exit codes.
pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 1;
pub const EXIT_INCONSISTENT: u8 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot parse distribution `{spec}`: {message}")]
    Spec { spec: String, message: String },
    #[error("{0}")]
    Input(#[from] poincare_core::Error),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("POINCARE_TAIL_EPS: {0}")]
    Env(String),
    #[error("unknown case `{0}`")]
    UnknownCase(String),
    #[error("analysis failed: {0}")]
    Internal(poincare_core::Error),
    #[error("output: {0}")]
    Output(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Internal(_) | CliError::Output(_) => EXIT_INCONSISTENT,
            _ => EXIT_INPUT,
        }
    }
}
