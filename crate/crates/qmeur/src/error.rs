use std::io;
use std::path::PathBuf;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{source_name}: parse error: {message}")]
    /// `message` already names the line and column.
    Parse { source_name: String, line: usize, column: usize, message: String },
    #[error("{source_name}: invalid `{field}`: {message}")]
    Validation { source_name: String, field: &'static str, message: String },
    #[error("`{field}`: dimension mismatch, expected {expected}, found {found}")]
    DimensionMismatch { field: &'static str, expected: usize, found: usize },
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("csv output: {0}")]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Core(#[from] qmeur_core::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Self::Io { path: path.into(), source }
    }

    pub(crate) fn validation(source_name: &str, field: &'static str, message: impl ToString) -> Self {
        Self::Validation { source_name: source_name.to_owned(), field, message: message.to_string() }
    }
}
