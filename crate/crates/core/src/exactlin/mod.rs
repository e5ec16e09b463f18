//! Exact arithmetic over ℚ and 𝔽p, tensor-indexed linear maps, and linear solving.

mod linmap;
mod scalar;
mod solve;
mod space;

use thiserror::Error;

pub use linmap::{flatten, unflatten, volume, LinMap};
pub use scalar::{is_prime, Field, Scalar, PRIME_LIMIT};
pub use solve::{from_columns, inverse, kernel, rank, solve_linear, LinSolution};
pub use space::{matrix_of, Residual, SolutionSpace};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ExactError {
    #[error("{0}")]
    Parse(String),
    #[error("modulus {0} is not a prime below 2^61")]
    BadModulus(u64),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}
