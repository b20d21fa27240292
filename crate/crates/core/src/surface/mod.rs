//! Sextic del Pezzo fibers: intersection lattices, parametric Zariski
//! decompositions of two-parameter divisor families, and the numeric
//! oracle used to cross-check them.

mod lattice;
mod oracle;
mod zariski;

pub use lattice::{DPLattice, NegativeCurve, SurfaceClass};
pub use oracle::{numeric_zariski_oracle, oracle_sweep, oracle_sweep_seq, NumericZariski, SweepReport};
pub use zariski::{
    check_wall_continuity, support_at_point, support_with_insertion_order, vol_at, vol_surface,
    zariski_surface, SurfaceChamber, SurfaceZariski,
};

use crate::exactnum::ExactError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("lattice mismatch: expected rank {expected}, class has {got} coordinates")]
    LatticeMismatch { expected: usize, got: usize },
    #[error("invalid lattice data: {0}")]
    InvalidLattice(String),
    #[error("divisor family must be affine in (u, v): {0}")]
    NotAffineFamily(String),
    #[error("support gram matrix is singular for curves {0:?}")]
    SingularSupport(Vec<usize>),
    #[error("support growth did not stabilise within {0} rounds")]
    SupportGrowthExceeded(usize),
    #[error("support {support:?} is not negative definite on {region}")]
    NotNegativeDefinite { support: Vec<usize>, region: String },
    #[error("chamber validation failed on {region}: {reason}")]
    ChamberValidation { region: String, reason: String },
    #[error("refinement did not terminate after {0} regions")]
    RefinementOverflow(usize),
    #[error(transparent)]
    Exact(#[from] ExactError),
}
