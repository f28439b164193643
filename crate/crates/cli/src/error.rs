use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Io(String),
    #[error("optimizer: {0}")]
    Optimizer(hedoc_core::Error),
    #[error("shooting: {0}")]
    Shooting(hedoc_core::Error),
    #[error("planning: {0}")]
    Planning(hedoc_core::Error),
}

impl CliError {
    /// 0 success, 1 configuration or I/O, 2 optimizer/shooting, 3 planning.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Io(_) => 1,
            CliError::Optimizer(_) | CliError::Shooting(_) => 2,
            CliError::Planning(_) => 3,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
