use thiserror::Error;

/// Errors produced by model fitting, prediction and data handling.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("shape mismatch: expected {expected} columns, got {got}")]
    ShapeMismatch { expected: usize, got: usize },

    #[error("cannot fit: class '{0}' has no training samples")]
    EmptyClass(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("parse error at row {row}, column {col}: {msg}")]
    Parse { row: usize, col: usize, msg: String },

    #[error("pdb parse error at line {line}: {msg}")]
    Pdb { line: usize, msg: String },

    #[error("class '{class}' has {count} samples, fewer than k = {k} folds")]
    ClassTooSmall {
        class: String,
        count: usize,
        k: usize,
    },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("model file format version {0} is not supported")]
    FormatVersion(u32),
}

pub type Result<T> = std::result::Result<T, Error>;
