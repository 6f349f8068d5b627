use serde::Serialize;

use super::IsoError;
use crate::algebra::StructureConstants;
use crate::form::{char_poly, split_roots};
use crate::linalg::{Field, GMatrix};
use crate::scalar::{GaussRational, Scalar};

/// An unordered pair `{r, 1/r}`, stored smaller first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RatioPair(pub Scalar, pub Scalar);

impl std::fmt::Display for RatioPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{{}, {}}}", self.0, self.1)
    }
}

fn fail(why: &str) -> IsoError {
    IsoError::PreconditionFailed(why.to_string())
}

/// For `A` with `A/A²` one-dimensional, `[A², A] = 0` and `dim A² = 2`: the
/// ratios of the two eigenvalues of `L_x` on `A²`, for any `x ∉ A²`.
/// Changing `x` within its coset scales or leaves `L_x|A²` unchanged, so the
/// pair is an isomorphism invariant.
pub fn type2_ratio_invariant(a: &StructureConstants) -> Result<RatioPair, IsoError> {
    if !a.is_constant() {
        return Err(fail("parameters must be constant"));
    }
    let sq = a.derived_algebra();
    if sq.dim() != 2 || a.dim() != 3 {
        return Err(fail("expected dim A = 3 and dim A² = 2"));
    }
    let basis = sq.basis_vectors();
    for u in &basis {
        for i in 0..a.dim() {
            if a.bracket_unchecked(u, &a.basis_vector(i)).iter().any(|c| !c.is_zero()) {
                return Err(fail("A² does not annihilate A from the left"));
            }
        }
    }
    let x = (0..a.dim())
        .map(|i| a.basis_vector(i))
        .find(|v| !sq.contains(v))
        .expect("A² is proper");
    // L_x on A² in the echelon basis; coordinates are read off the pivots
    let pivots = sq.pivots();
    let mut l = GMatrix::zeros(2, 2);
    for (col, u) in basis.iter().enumerate() {
        let image = a.bracket_unchecked(&x, u);
        for (row, &p) in pivots.iter().enumerate() {
            l.set(row, col, image[p].as_constant().expect("constant algebra"));
        }
    }
    let (roots, rest) = split_roots(&char_poly(&l));
    if rest.degree().unwrap_or(0) > 0 {
        return Err(fail("eigenvalues of L_x on A² are not in Q(i)"));
    }
    let mut eig: Vec<GaussRational> = Vec::new();
    for (r, mult) in &roots {
        let shifted = l.sub(&GMatrix::identity(2).scale(r));
        if 2 - shifted.rank() != *mult {
            return Err(fail("L_x on A² is not diagonalizable"));
        }
        eig.extend(std::iter::repeat(r.clone()).take(*mult));
    }
    if eig.iter().any(Field::is_zero) {
        return Err(fail("L_x on A² is singular"));
    }
    let r = eig[0].mul(&eig[1].recip());
    let inv = r.recip();
    let (lo, hi) = if r <= inv { (r, inv) } else { (inv, r) };
    Ok(RatioPair(Scalar::constant(lo), Scalar::constant(hi)))
}
