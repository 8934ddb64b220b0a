//! Discrepancy, second singular values and the pseudo-random constructions
//! that relate them.

pub mod constructions;
pub mod discrepancy;
pub mod enumerate;
pub mod formats;
pub mod graph;
pub mod linalg;
pub mod quantization;
pub mod sampling;
pub mod spectral_bounds;
pub mod suite;

pub use discrepancy::{DiscMode, DiscResult, Search};
pub use graph::{Graph, VertexSet};
pub use linalg::{Spectrum, SymmetricMatrix};
