use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Domain(#[from] hyperkg::error::Error),
    #[error("{0}")]
    Usage(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) => 2,
            CliError::Verification(_) => 3,
            CliError::Usage(_) => 64,
            CliError::Io(_) | CliError::Csv(_) | CliError::Json(_) => 1,
        }
    }

    /// The reader closed stdout early, as with `hyperkg ... | head`.
    pub fn is_broken_pipe(&self) -> bool {
        let kind = match self {
            CliError::Io(e) => Some(e.kind()),
            CliError::Json(e) => e.io_error_kind(),
            CliError::Csv(e) => match e.kind() {
                csv::ErrorKind::Io(io) => Some(io.kind()),
                _ => None,
            },
            _ => None,
        };
        kind == Some(std::io::ErrorKind::BrokenPipe)
    }
}
