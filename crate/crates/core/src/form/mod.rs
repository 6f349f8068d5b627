//! Bilinear forms of nilpotent algebras with one-dimensional square, their
//! congruence canonical blocks, and congruence testing through the Kronecker
//! invariants of the pencil `λM + μMᵀ`.

mod block;
mod bridge;
mod decompose;
mod matrix;
mod pencil;
mod upoly;
mod witness;

pub use block::{format_blocks, parse_blocks, BlockKind, CanonicalBlock};
pub use bridge::{algebra_from_blocks, algebra_from_form, form_from_algebra, form_with_layout};
pub use decompose::{
    block_invariants, canonical_decomposition, decompose_invariants, dictionary,
    has_zero_summand, is_congruent, normalize_blocks,
};
pub use matrix::{FormMatrix, ParseMatrixError};
pub use pencil::{
    constant_invariants, pencil_invariants, pencil_invariants_in, smith_diagonal, DivisorBase,
    ElementaryDivisor, PencilInvariants, PencilMode,
};
pub use upoly::{split_roots, UPoly};
pub use witness::{char_poly, congruence_witness, scaled_congruence_witness, ScaledWitness};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormError {
    #[error("invalid block {0}")]
    InvalidBlock(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("pencil invariants need constant entries; substitute parameters first")]
    ParameterNotSupported,
    #[error("no block combination matches the invariants ({0})")]
    DictionaryMiss(String),
}
