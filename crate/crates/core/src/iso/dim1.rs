use serde::Serialize;

use super::IsoError;
use crate::algebra::StructureConstants;
use crate::form::{form_with_layout, is_congruent, scaled_congruence_witness};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoVerdict {
    pub isomorphic: bool,
    /// `P` with `change_of_basis(A, P) = B`, when one was found. Always
    /// re-checked before being returned.
    pub witness: Option<Matrix>,
}

/// Largest form size for which a witness is attempted.
const WITNESS_MAX_SIZE: usize = 7;

/// Isomorphism of nilpotent algebras with `dim A² = 1` and constant
/// parameters, decided by congruence of their forms.
pub fn isomorphic_dim1_nilpotent(
    a: &StructureConstants,
    b: &StructureConstants,
    seed: u64,
) -> Result<IsoVerdict, IsoError> {
    let prepare = |x: &StructureConstants, which: &str| {
        if !x.is_constant() {
            return Err(IsoError::PreconditionFailed(format!(
                "{which} has free parameters"
            )));
        }
        form_with_layout(x).map_err(|e| IsoError::PreconditionFailed(format!("{which}: {e}")))
    };
    let (m, _, pa) = prepare(a, "first algebra")?;
    let (n, _, pb) = prepare(b, "second algebra")?;
    let congruent = is_congruent(&m, &n).map_err(|e| IsoError::PreconditionFailed(e.to_string()))?;
    if !congruent {
        return Ok(IsoVerdict {
            isomorphic: false,
            witness: None,
        });
    }
    let witness = (m.size() <= WITNESS_MAX_SIZE)
        .then(|| {
            let (mc, nc) = (m.to_constant()?, n.to_constant()?);
            let w = scaled_congruence_witness(&mc, &nc, seed)?;
            // x_i ↦ Σ_j S_ji x_j on the complement, x_n ↦ t·x_n
            let q = w
                .s
                .transpose()
                .to_scalar()
                .direct_sum(&Matrix::from_rows(vec![vec![Scalar::constant(w.t)]]));
            let p = pb.inverse()?.mul(&q).mul(&pa);
            let image = a.change_of_basis(&p).ok()?;
            image.same_products(b).then_some(p)
        })
        .flatten();
    Ok(IsoVerdict {
        isomorphic: true,
        witness,
    })
}
