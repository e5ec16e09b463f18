use thiserror::Error;

use crate::exactlin::ExactError;
use crate::homspaces::HomError;
use crate::structures::StructureError;

/// Errors raised by the analysis layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Hom(#[from] HomError),
    /// A documented precondition does not hold.
    #[error("contract violation: {0}")]
    Contract(String),
    /// A computed witness failed its independent re-check.
    #[error("witness failed verification: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
