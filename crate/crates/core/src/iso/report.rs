//! One isomorphism verdict for two arbitrary algebras, combining invariant
//! separation with the structured tests that can actually prove
//! isomorphism.

use serde::Serialize;

use super::{iso_invariants, isomorphic_dim1_nilpotent, type2_ratio_invariant, IsoError, IsoInvariants};
use crate::algebra::StructureConstants;
use crate::classify::permutation_isomorphism;
use crate::linalg::Matrix;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Isomorphic,
    NotIsomorphic,
    /// All computed invariants agree but no applicable test decides.
    Undecided,
}

#[derive(Clone, Debug, Serialize)]
pub struct IsoReport {
    pub verdict: Verdict,
    /// Which test produced the verdict.
    pub method: &'static str,
    /// `P` with `change_of_basis(A, P) = B`, verified.
    pub witness: Option<Matrix>,
    pub invariants: [IsoInvariants; 2],
    pub seed: u64,
}

/// Separates by invariants first; then nilpotent algebras with
/// one-dimensional square go through congruence, the diagonal 3-dimensional
/// family through its eigenvalue-ratio pair, and anything else through a
/// search over basis permutations.
pub fn check_isomorphism(
    a: &StructureConstants,
    b: &StructureConstants,
    seed: u64,
) -> Result<IsoReport, IsoError> {
    if !a.is_constant() || !b.is_constant() {
        return Err(IsoError::PreconditionFailed(
            "isomorphism checks need constant parameters; substitute values first".into(),
        ));
    }
    let invariants = [iso_invariants(a), iso_invariants(b)];
    let report = |verdict, method, witness| IsoReport {
        verdict,
        method,
        witness,
        invariants: invariants.clone(),
        seed,
    };
    if invariants[0] != invariants[1] {
        return Ok(report(Verdict::NotIsomorphic, "invariants", None));
    }
    if invariants[0].pencil.is_some() {
        let v = isomorphic_dim1_nilpotent(a, b, seed)?;
        let verdict = if v.isomorphic {
            Verdict::Isomorphic
        } else {
            Verdict::NotIsomorphic
        };
        return Ok(report(verdict, "congruence", v.witness));
    }
    if let (Ok(x), Ok(y)) = (type2_ratio_invariant(a), type2_ratio_invariant(b)) {
        let verdict = if x == y {
            Verdict::Isomorphic
        } else {
            Verdict::NotIsomorphic
        };
        return Ok(report(verdict, "ratio-invariant", None));
    }
    if let Some(r) = permutation_isomorphism(a, b) {
        let n = a.dim();
        let mut p = Matrix::zeros(n, n);
        for (i, &j) in r.permutation.iter().enumerate() {
            p.set(j, i, Scalar::one());
        }
        if a.change_of_basis(&p).is_ok_and(|x| x.same_products(b)) {
            return Ok(report(Verdict::Isomorphic, "basis-permutation", Some(p)));
        }
    }
    Ok(report(Verdict::Undecided, "invariants", None))
}
