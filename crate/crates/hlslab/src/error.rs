use std::path::PathBuf;

use hlslab_core::Error as CoreError;

pub type Result<T, E = AppError> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum AppError {
    #[error(transparent)]
    Core(#[from] CoreError),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// An input file (element, certificate, config) could not be read.
    #[error("cannot read {path}: {source}")]
    Unreadable {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{context}: {message}")]
    Format { context: String, message: String },

    #[error("invalid input: {0}")]
    Input(String),
}

impl AppError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        AppError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn unreadable(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        AppError::Unreadable {
            path: path.into(),
            source,
        }
    }

    pub fn format(context: impl Into<String>, message: impl ToString) -> Self {
        AppError::Format {
            context: context.into(),
            message: message.to_string(),
        }
    }

    /// 2 for bad input, 3 for exhausted resources.
    pub fn exit_code(&self) -> u8 {
        match self {
            AppError::Core(CoreError::Resource { .. } | CoreError::NotConverged { .. }) => 3,
            AppError::Core(_) | AppError::Unreadable { .. } | AppError::Format { .. } | AppError::Input(_) => 2,
            AppError::Io { .. } => 3,
        }
    }
}
