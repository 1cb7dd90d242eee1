use thiserror::Error;

use crate::scalar::Field;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("not a cocycle: {0}")]
    NotCocycle(String),

    #[error("invalid deformation: {0}")]
    InvalidDeformation(String),

    #[error("invalid quantum structure: {0}")]
    InvalidQuantum(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
