use thiserror::Error;

/// Errors produced by constructors and operations in this crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("non-finite entry at ({row}, {col})")]
    NonFiniteEntry { row: usize, col: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("not Hermitian: defect {defect:.3e} exceeds {tol:.3e}")]
    NotHermitian { defect: f64, tol: f64 },

    #[error("not positive semidefinite: minimum eigenvalue {min_eigenvalue:.3e}")]
    NotPositiveSemidefinite { min_eigenvalue: f64 },

    #[error("trace must be 1, got {trace}")]
    InvalidTrace { trace: f64 },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("non-finite value while evaluating `{context}`")]
    NonFinite { context: &'static str },

    #[error("numerical failure in {context}: {detail}")]
    NumericalFailure {
        context: &'static str,
        detail: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
