//! Verifiers for edge-distribution and spectral bounds.

mod chung;
mod family;
mod laplacian;
mod report;
mod thomason;

pub use chung::{chung_alpha_check, ChungReport, SetSearch, CHUNG_EXHAUSTIVE_MAX_N};
pub use family::{family_properties, FamilyMember, FamilyReport, MemberProperties};
pub use laplacian::{laplacian_spectrum, LaplacianSpectrum};
pub use report::{BoundReport, Violation, MAX_STORED_VIOLATIONS};
pub use thomason::{
    thomason_check, thomason_exhaustive, thomason_hypotheses, thomason_sampled, ThomasonEntry, ThomasonHypotheses,
    HYPOTHESIS_TOLERANCE, VIOLATION_TOLERANCE,
};

use thiserror::Error;

use crate::linalg::LinalgError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoundsError {
    #[error("graph is not regular")]
    NotRegular,
    #[error("graph has degree zero")]
    ZeroDegree,
    #[error("graph has no edges")]
    EmptyGraph,
    #[error("family needs at least 3 members, got {0}")]
    FamilyTooSmall(usize),
    #[error("exhaustive search supports n <= {max}, got {n}")]
    TooLarge { n: usize, max: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
