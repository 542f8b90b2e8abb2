use thiserror::Error;

/// Errors raised by the algebra, duality, metric and product operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum AlgebraError {
    #[error("dimension {0} is outside the supported range 1..={max}", max = crate::blade::MAX_DIM)]
    DimensionOutOfRange(usize),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("grade {grade} is outside 0..={dim}")]
    GradeOutOfRange { grade: usize, dim: usize },

    #[error("basis index {index} is outside 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("expected {expected} coefficients, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("coefficient {index} is not finite")]
    NonFinite { index: usize },

    #[error("input carries grade {found} data where grade {expected} was required")]
    NotHomogeneous { expected: usize, found: usize },

    #[error("matrix is {rows}x{cols}, expected {dim}x{dim}")]
    MatrixShape { rows: usize, cols: usize, dim: usize },

    #[error("matrix is singular or degenerate (|det| = {det:e})")]
    Singular { det: f64 },

    #[error("matrix is not symmetric (max asymmetry {asymmetry:e})")]
    Asymmetric { asymmetry: f64 },

    #[error("oracle paths are limited to n <= {max}, got {dim}")]
    OracleTooLarge { dim: usize, max: usize },

    #[error("grade overflow: {grade} exceeds dimension {dim}")]
    GradeOverflow { grade: usize, dim: usize },

    #[error("internal inconsistency: {0}")]
    Inconsistent(&'static str),
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;
