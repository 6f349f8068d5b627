//! Exact computations with finite-dimensional left Leibniz algebras over
//! ℚ(i), with formal parameters.
//!
//! The pieces, bottom-up:
//!
//! - [`scalar`]: rational functions over the Gaussian rationals.
//! - [`linalg`]: dense matrices with exact row reduction.
//! - [`algebra`]: structure constants, series, centers, Leib(A).
//! - [`form`]: the bilinear form of a nilpotent algebra with one-dimensional
//!   square, congruence canonical blocks, pencil invariants.
//! - [`classify`]: regeneration of the classification tables.
//! - [`iso`]: isomorphism invariants and witnesses.
//! - [`cli`]: the `leibniz-lab` command.

pub mod algebra;
pub mod cli;
pub mod classify;
pub mod form;
pub mod iso;
pub mod linalg;
pub mod scalar;

pub use algebra::{StructureConstants, Subspace};
pub use linalg::Matrix;
pub use scalar::{GaussRational, ParameterConstraint, Scalar, ScalarError};
