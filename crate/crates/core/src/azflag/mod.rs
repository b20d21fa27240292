//! Nested-flag volume computations on the threefold: restriction of the
//! anticanonical Zariski chambers to a vertical fiber, two-parameter
//! decompositions on that fiber, and the resulting lower bounds for the
//! stability threshold.

use crate::ambient::AmbientError;
use crate::exactnum::ExactError;
use crate::surface::SurfaceError;

/// Errors from building or evaluating a flag case.
#[derive(Debug, thiserror::Error)]
pub enum FlagError {
    #[error("unknown case `{0}`")]
    UnknownCase(String),
    #[error("case data invalid: {0}")]
    InvalidCase(String),
    #[error("restriction to the fiber is inconsistent: {0}")]
    RestrictionMismatch(String),
    #[error("volume does not vanish on the outer boundary: {0}")]
    BoundaryMismatch(String),
    #[error(transparent)]
    Ambient(#[from] AmbientError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}
