//! Exact verification kernel for the K-stability of the smooth Fano
//! threefold of Picard rank 4 and anticanonical degree 24, realised as a
//! divisor of multidegree (1,1,1,1) in a product of four projective lines.
//!
//! Everything downstream of a printed fraction is computed in exact rational
//! arithmetic: intersection numbers on the ambient product, cone membership
//! and thresholds, parametric Zariski decompositions on sextic del Pezzo
//! fibers, and the two-step flag functionals that bound the stability
//! threshold from below.  Floating point appears only in the independent
//! numeric oracles used to cross-check the exact path.

pub mod ambient;
pub mod azflag;
pub mod exactnum;
mod linalg;
pub mod surface;
