//! Leibniz algebras given by structure constants, and the structural data
//! attached to them: products, Leib(A), central and derived series, centers,
//! basis changes, direct sums.
//!
//! Throughout, "Leibniz" means *left* Leibniz: every left multiplication
//! `L_a = [a, ·]` is a derivation,
//! `[a,[b,c]] = [[a,b],c] + [b,[a,c]]`.

mod io;
mod structure;
mod subspace;

pub use io::{
    algebra_to_json, algebras_to_json, load_algebra, load_algebras, parse_algebra,
    parse_algebras, AlgebraDocument, AlgebraIoError, ProductEntry,
};
pub use structure::{AlgebraError, StructureConstants};
pub use subspace::Subspace;
