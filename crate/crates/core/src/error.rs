use thiserror::Error;

/// Errors produced while building matrices, states and bounds.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },

    #[error("matrix must have positive dimension")]
    EmptyMatrix,

    #[error("matrix entry ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is not Hermitian (max |M_jk - conj(M_kj)| = {asymmetry:e})")]
    NotHermitian { asymmetry: f64 },

    #[error("matrix is not positive semidefinite (eigenvalue {eigenvalue:e})")]
    NotPsd { eigenvalue: f64 },

    #[error("trace must be 1, found {trace}")]
    TraceNotOne { trace: f64 },

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal residual {residual:e})")]
    NoConvergence { sweeps: usize, residual: f64 },

    #[error("state vector is zero")]
    ZeroVector,

    #[error("state vector norm {norm} is not 1")]
    NotNormalized { norm: f64 },

    #[error("Bloch vector length {length} exceeds 1")]
    OutsideBlochBall { length: f64 },

    #[error("at least {min} observables are required, found {found}")]
    TooFewObservables { found: usize, min: usize },

    #[error("dimension {dim} is too small, need at least {min}")]
    DimensionTooSmall { dim: usize, min: usize },

    #[error("permutation search needs {} tuples, budget is {budget}", display_tuples(.tuples))]
    BudgetExceeded { tuples: Option<u128>, budget: u64 },

    #[error("parameter {name} = {value} outside [{min}, {max}]")]
    ParameterOutOfRange {
        name: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),
}

fn display_tuples(tuples: &Option<u128>) -> String {
    match tuples {
        Some(n) => n.to_string(),
        None => "more than 2^128".to_string(),
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
