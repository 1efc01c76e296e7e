use thiserror::Error;

use crate::poly::Polynomial;

/// Errors raised across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: String, right: String },

    #[error("unknown variable {0}")]
    UnknownVariable(String),

    #[error("unknown block {0}")]
    UnknownBlock(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("antisymmetry fails at (i, j, k) = ({i}, {j}, {k})")]
    Antisymmetry { i: usize, j: usize, k: usize },

    #[error("Jacobi identity fails for basis triple ({i}, {j}, {k})")]
    Jacobi { i: usize, j: usize, k: usize },

    #[error("homomorphism property fails for basis pair ({i}, {j})")]
    Homomorphism { i: usize, j: usize },

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("polynomial is not invariant: Killing field {index} leaves residual {residual}")]
    NotInvariant { index: usize, residual: Polynomial },

    #[error("field refused: {reason}; witness {witness}")]
    Refused { reason: String, witness: Polynomial },

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("duplicate solver registration for {0}")]
    DuplicateSolver(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
