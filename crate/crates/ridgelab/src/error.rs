use std::path::PathBuf;

/// Harness errors, each mapped to a process exit code.
#[derive(Debug, thiserror::Error)]
pub enum AppError {
    #[error("line {line}: {msg}")]
    ConfigLine { line: usize, msg: String },
    #[error("{0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: line {line}: {msg}")]
    Format { path: PathBuf, line: usize, msg: String },
    #[error("tolerance check failed: {0}")]
    Tolerance(String),
    #[error(transparent)]
    Core(#[from] ridge_core::Error),
}

impl AppError {
    pub fn exit_code(&self) -> i32 {
        match self {
            AppError::ConfigLine { .. } | AppError::Config(_) => 2,
            AppError::Tolerance(_) => 3,
            AppError::Io { .. } | AppError::Format { .. } => 4,
            AppError::Core(e) => match e {
                ridge_core::Error::NotDecayed(_) | ridge_core::Error::Singular | ridge_core::Error::ZeroVariation => 3,
                _ => 2,
            },
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        AppError::Io { path: path.into(), source }
    }
}

pub type AppResult<T> = Result<T, AppError>;
