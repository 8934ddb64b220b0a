//! Dense symmetric matrix arithmetic and eigendecomposition.

mod hermitian;
mod jacobi;
mod matrix;

pub use hermitian::HermitianMatrix;
pub use jacobi::{
    eig_symmetric, singular_values, spectrum, Spectrum, SymmetricEigen, OFF_DIAGONAL_TOLERANCE,
    ROTATION_CAP_FACTOR,
};
pub use matrix::{
    all_ones, complement, rayleigh_quotient, rho_prime, SymmetricMatrix, SYMMETRY_TOLERANCE,
};

pub(crate) use matrix::neumaier_sum;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("matrix must have at least one row")]
    Empty,
    #[error("expected {expected} entries, got {got}")]
    DataLength { expected: usize, got: usize },
    #[error("entry ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },
    #[error("matrix is not symmetric at ({row}, {col}): gap {gap:e}")]
    NonSymmetric { row: usize, col: usize, gap: f64 },
    #[error("matrix is not a 0/1 matrix")]
    NotBinary,
    #[error("zero vector has no Rayleigh quotient")]
    ZeroVector,
    #[error("Jacobi iteration did not converge after {rotations} rotations (off-diagonal {off_diagonal:e})")]
    NoConvergence { rotations: usize, off_diagonal: f64 },
}
