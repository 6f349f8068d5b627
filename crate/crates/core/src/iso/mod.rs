//! Isomorphism invariants, congruence-based isomorphism with explicit
//! witnesses for nilpotent algebras with one-dimensional square, the
//! eigenvalue-ratio invariant of the diagonal 3-dimensional family, and
//! random basis-change fuzzing.

mod dim1;
mod fuzz;
mod invariants;
mod report;
mod type2;

pub use dim1::{isomorphic_dim1_nilpotent, IsoVerdict};
pub use fuzz::{random_basis_fuzz, random_invertible, FuzzFailure, FuzzReport};
pub use invariants::{iso_invariants, IsoInvariants};
pub use report::{check_isomorphism, IsoReport, Verdict};
pub use type2::{type2_ratio_invariant, RatioPair};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IsoError {
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
}
