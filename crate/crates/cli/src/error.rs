use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("I/O error: {0}")]
    Io(String),
    #[error("{0}")]
    NoSolution(String),
    #[error("{0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Io(_) => 2,
            CliError::NoSolution(_) => 3,
            CliError::Verification(_) => 4,
        }
    }
}

impl From<spinlogic::Error> for CliError {
    fn from(e: spinlogic::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}
