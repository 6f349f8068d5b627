//! Nilpotent algebras with one-dimensional square versus bilinear forms.
//!
//! If `A² = span{w}` then `[u, v] = f(u, v)·w` on a complement `V` of `w`,
//! and the algebra is determined by the matrix of `f`.

use super::{CanonicalBlock, FormError, FormMatrix};
use crate::algebra::StructureConstants;
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// The form of `A` on the coordinate complement of `A²`, and the spanning
/// vector `w` of `A²` (its first echelon basis vector).
pub fn form_from_algebra(a: &StructureConstants) -> Result<(FormMatrix, Vec<Scalar>), FormError> {
    let (m, w, _) = form_with_layout(a)?;
    Ok((m, w))
}

/// As [`form_from_algebra`], also returning the change-of-basis matrix `P`
/// that puts `A` in standard layout: `change_of_basis(A, P)` is
/// `algebra_from_form(M)`.
pub fn form_with_layout(
    a: &StructureConstants,
) -> Result<(FormMatrix, Vec<Scalar>, Matrix), FormError> {
    if !a.verify_leibniz() {
        return Err(FormError::PreconditionFailed("not a Leibniz algebra".into()));
    }
    let square = a.derived_algebra();
    if square.dim() != 1 {
        return Err(FormError::PreconditionFailed(format!(
            "dim A² = {}, expected 1",
            square.dim()
        )));
    }
    if !a.is_nilpotent() {
        return Err(FormError::PreconditionFailed("algebra is not nilpotent".into()));
    }
    let n = a.dim();
    let w = square.basis_vectors().remove(0);
    let p = square.pivots()[0];
    // Nilpotency with dim A² = 1 forces w to be two-sided annihilated;
    // checked rather than assumed.
    for i in 0..n {
        let e = a.basis_vector(i);
        let zero = |v: Vec<Scalar>| v.iter().all(Scalar::is_zero);
        if !zero(a.bracket_unchecked(&e, &w)) || !zero(a.bracket_unchecked(&w, &e)) {
            return Err(FormError::PreconditionFailed(
                "A² is not annihilated by A".into(),
            ));
        }
    }
    let complement: Vec<usize> = (0..n).filter(|&i| i != p).collect();
    let m = complement.len();
    let mut f = Matrix::zeros(m, m);
    for (r, &i) in complement.iter().enumerate() {
        for (c, &j) in complement.iter().enumerate() {
            f.set(r, c, a.product(i, j)[p].clone());
        }
    }
    let mut layout = Matrix::zeros(n, n);
    for (r, &i) in complement.iter().enumerate() {
        layout.set(r, i, Scalar::one());
    }
    for (j, x) in w.iter().enumerate() {
        layout.set(n - 1, j, x.clone());
    }
    let form = FormMatrix::new(f).with_constraints(a.constraints().to_vec());
    Ok((form, w, layout))
}

/// `[x_i, x_j] = M[i][j]·x_n`, all products with `x_n` zero.
pub fn algebra_from_form(m: &FormMatrix) -> StructureConstants {
    let k = m.size();
    let n = k + 1;
    let mut a = StructureConstants::abelian(n);
    for i in 0..k {
        for j in 0..k {
            let c = m.get(i, j);
            if !c.is_zero() {
                let mut v = vec![Scalar::zero(); n];
                v[k] = c.clone();
                a.set_product(i, j, &v);
            }
        }
    }
    a.with_constraints(m.constraints().to_vec())
}

pub fn algebra_from_blocks(blocks: &[CanonicalBlock]) -> StructureConstants {
    algebra_from_form(&FormMatrix::direct_sum(blocks))
}
