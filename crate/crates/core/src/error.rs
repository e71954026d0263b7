use thiserror::Error;

use crate::enumerate::EnumerationError;
use crate::io::LoadError;
use crate::morphism::ClassifyError;

/// Errors that stop a command before any mathematical verdict is reached.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Load(#[from] LoadError),
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error("{0}")]
    Usage(String),
    #[error("output: {0}")]
    Output(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
