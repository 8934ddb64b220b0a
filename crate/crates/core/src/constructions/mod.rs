//! Generators for the explicit matrices and graphs.

mod block;
mod qpt;
mod tightness;
mod union;

pub use block::{block_graph, block_matrix, block_plan, block_plan_with_k, canonical_k, BlockPlan};
pub use qpt::{degree_catalog, is_prime, qpt_graph, DegreeCatalog};
pub use tightness::{harmonic, tightness_disc_structured, tightness_matrix, tightness_step_vector};
pub use union::sparse_union;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConstructionError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("t must lie in 1..={p}, got {t}")]
    BadT { p: u64, t: u64 },
    #[error("size parameter must be positive")]
    ZeroSize,
    #[error("density must lie in (0, 1), got {0}")]
    BadDensity(f64),
    #[error("floor({p} * {n}) is zero, so the clique would be empty")]
    EmptyClique { n: usize, p: f64 },
}
