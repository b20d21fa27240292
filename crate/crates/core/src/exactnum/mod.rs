//! Exact scalars, sparse bivariate polynomials and plane regions with
//! affine boundaries, together with symbolic integration over such regions.
//!
//! The two polynomial variables are always called `u` and `v`: `u` is the
//! parameter of a one-dimensional family of divisors on the threefold and
//! `v` the parameter of the induced family on a surface fiber.

mod poly;
mod rational;
mod region;

pub use poly::{AffineU, Poly2};
pub use rational::Rational;
pub use region::{
    integrate_region, integrate_univariate_u, midpoint_integrate, midpoint_integrate_seq, Region,
};

use thiserror::Error;

/// Errors raised by constructors and conversions in this module.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("invalid rational literal `{0}`")]
    ParseRational(String),
    #[error("polynomial is not affine in u: {0}")]
    NotAffineInU(String),
    #[error("polynomial depends on v: {0}")]
    NotUnivariateU(String),
    #[error("invalid region: {0}")]
    InvalidRegion(String),
    #[error("invalid split: {0}")]
    InvalidSplit(String),
}
