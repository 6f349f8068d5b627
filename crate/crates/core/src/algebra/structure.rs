use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::Subspace;
use crate::linalg::Matrix;
use crate::scalar::{GaussRational, ParameterConstraint, Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("change-of-basis matrix is singular")]
    SingularMatrix,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// An `n`-dimensional algebra with `[x_i, x_j] = Σ_k c[i][j][k] x_k`.
///
/// Indices are 0-based in the API; file formats and display use `x1..xn`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstants {
    dim: usize,
    tensor: Vec<Scalar>,
    constraints: Vec<ParameterConstraint>,
    label: Option<String>,
    basis_names: Option<Vec<String>>,
}

impl StructureConstants {
    /// The abelian algebra of dimension `dim`.
    pub fn abelian(dim: usize) -> Self {
        Self {
            dim,
            tensor: vec![Scalar::zero(); dim * dim * dim],
            constraints: Vec::new(),
            label: None,
            basis_names: None,
        }
    }

    /// Builds an algebra from `(i, j, [(k, coeff)])` product rules, 0-based.
    pub fn from_products<I>(dim: usize, products: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, Vec<(usize, Scalar)>)>,
    {
        let mut a = Self::abelian(dim);
        for (i, j, res) in products {
            let mut v = vec![Scalar::zero(); dim];
            for (k, c) in res {
                v[k] = &v[k] + &c;
            }
            a.set_product(i, j, &v);
        }
        a
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn with_constraints(mut self, constraints: Vec<ParameterConstraint>) -> Self {
        for c in constraints {
            self.add_constraint(c);
        }
        self
    }

    pub fn with_basis_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.dim);
        self.basis_names = Some(names);
        self
    }

    pub fn add_constraint(&mut self, c: ParameterConstraint) {
        if let Some(existing) = self.constraints.iter_mut().find(|e| e.param == c.param) {
            for v in c.excluded {
                if !existing.excluded.contains(&v) {
                    existing.excluded.push(v);
                }
            }
        } else {
            self.constraints.push(c);
            self.constraints.sort_by(|a, b| a.param.cmp(&b.param));
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn set_label(&mut self, label: Option<String>) {
        self.label = label;
    }

    pub fn constraints(&self) -> &[ParameterConstraint] {
        &self.constraints
    }

    pub fn basis_names(&self) -> Option<&[String]> {
        self.basis_names.as_deref()
    }

    /// Display name of basis vector `i` (0-based).
    pub fn basis_name(&self, i: usize) -> String {
        match &self.basis_names {
            Some(n) => n[i].clone(),
            None => format!("x{}", i + 1),
        }
    }

    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    pub fn entry(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.tensor[self.idx(i, j, k)]
    }

    /// Coordinates of `[x_i, x_j]`.
    pub fn product(&self, i: usize, j: usize) -> &[Scalar] {
        let start = self.idx(i, j, 0);
        &self.tensor[start..start + self.dim]
    }

    pub fn set_product(&mut self, i: usize, j: usize, v: &[Scalar]) {
        assert_eq!(v.len(), self.dim);
        let start = self.idx(i, j, 0);
        self.tensor[start..start + self.dim].clone_from_slice(v);
    }

    /// Tensors agree entry by entry (labels and constraints ignored).
    pub fn same_products(&self, other: &StructureConstants) -> bool {
        self.dim == other.dim && self.tensor == other.tensor
    }

    /// Nonzero products `(i, j)` in row-major order.
    pub fn nonzero_products(&self) -> impl Iterator<Item = (usize, usize, &[Scalar])> {
        (0..self.dim).flat_map(move |i| {
            (0..self.dim).filter_map(move |j| {
                let p = self.product(i, j);
                p.iter().any(|x| !x.is_zero()).then_some((i, j, p))
            })
        })
    }

    /// Formal parameters appearing in the tensor.
    pub fn params(&self) -> BTreeSet<String> {
        self.tensor.iter().flat_map(Scalar::params).collect()
    }

    pub fn is_constant(&self) -> bool {
        self.tensor.iter().all(Scalar::is_constant)
    }

    fn check_len(&self, v: &[Scalar]) -> Result<(), AlgebraError> {
        if v.len() != self.dim {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dim,
                got: v.len(),
            });
        }
        Ok(())
    }

    /// Bilinear extension of the product to arbitrary vectors.
    pub fn bracket(&self, u: &[Scalar], v: &[Scalar]) -> Result<Vec<Scalar>, AlgebraError> {
        self.check_len(u)?;
        self.check_len(v)?;
        Ok(self.bracket_unchecked(u, v))
    }

    pub(crate) fn bracket_unchecked(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim;
        let mut out = vec![Scalar::zero(); n];
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                let p = self.product(i, j);
                if p.iter().all(Scalar::is_zero) {
                    continue;
                }
                let w = ui * vj;
                for (o, c) in out.iter_mut().zip(p) {
                    if !c.is_zero() {
                        *o = &*o + &(&w * c);
                    }
                }
            }
        }
        out
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim];
        v[i] = Scalar::one();
        v
    }

    /// `[x_a,[x_b,x_c]] − [[x_a,x_b],x_c] − [x_b,[x_a,x_c]]`.
    pub fn leibniz_defect(&self, a: usize, b: usize, c: usize) -> Vec<Scalar> {
        let xa = self.basis_vector(a);
        let xb = self.basis_vector(b);
        let xc = self.basis_vector(c);
        let lhs = self.bracket_unchecked(&xa, self.product(b, c));
        let r1 = self.bracket_unchecked(self.product(a, b), &xc);
        let r2 = self.bracket_unchecked(&xb, self.product(a, c));
        lhs.iter()
            .zip(&r1)
            .zip(&r2)
            .map(|((l, x), y)| &(l - x) - y)
            .collect()
    }

    /// True iff the left Leibniz identity holds on all basis triples,
    /// identically in the parameters.
    pub fn verify_leibniz(&self) -> bool {
        let n = self.dim;
        if let Some(t) = self.constant_tensor() {
            return constant_leibniz(&t, n);
        }
        (0..n).all(|a| {
            (0..n).all(|b| (0..n).all(|c| self.leibniz_defect(a, b, c).iter().all(Scalar::is_zero)))
        })
    }

    fn constant_tensor(&self) -> Option<Vec<GaussRational>> {
        self.tensor.iter().map(Scalar::as_constant).collect()
    }

    /// Span of `[u, w]` over basis vectors `u ∈ U`, `w ∈ W`.
    pub fn bracket_span(&self, left: &Subspace, right: &Subspace) -> Subspace {
        let lv = left.basis_vectors();
        let rv = right.basis_vectors();
        let mut out = Vec::new();
        for u in &lv {
            for w in &rv {
                out.push(self.bracket_unchecked(u, w));
            }
        }
        Subspace::span(self.dim, out)
    }

    /// `A² = [A, A]`.
    pub fn derived_algebra(&self) -> Subspace {
        Subspace::span(self.dim, self.nonzero_products().map(|(_, _, p)| p.to_vec()))
    }

    /// `Leib(A) = span{[a, a]}`, via polarization:
    /// span of `[x_i,x_i]` and `[x_i,x_j] + [x_j,x_i]`.
    pub fn leib_ideal(&self) -> Subspace {
        let n = self.dim;
        let mut vecs = Vec::new();
        for i in 0..n {
            vecs.push(self.product(i, i).to_vec());
            for j in i + 1..n {
                vecs.push(
                    self.product(i, j)
                        .iter()
                        .zip(self.product(j, i))
                        .map(|(a, b)| a + b)
                        .collect(),
                );
            }
        }
        Subspace::span(n, vecs)
    }

    /// `A¹ = A, A^i = [A, A^{i-1}]`, stopping at the first repeat. The last
    /// element is the stable term.
    pub fn lower_central_series(&self) -> Vec<Subspace> {
        let full = Subspace::full(self.dim);
        self.chain(|prev| self.bracket_span(&full, prev))
    }

    /// `A⁽¹⁾ = A, A⁽ⁱ⁾ = [A⁽ⁱ⁻¹⁾, A⁽ⁱ⁻¹⁾]`, stopping at the first repeat.
    pub fn derived_series(&self) -> Vec<Subspace> {
        self.chain(|prev| self.bracket_span(prev, prev))
    }

    fn chain(&self, step: impl Fn(&Subspace) -> Subspace) -> Vec<Subspace> {
        let mut out = vec![Subspace::full(self.dim)];
        loop {
            let next = step(out.last().unwrap());
            if &next == out.last().unwrap() {
                return out;
            }
            out.push(next);
        }
    }

    /// Term `i` (1-based) of the lower central series.
    pub fn lower_central_term(&self, i: usize) -> Subspace {
        let s = self.lower_central_series();
        s[(i.max(1) - 1).min(s.len() - 1)].clone()
    }

    /// Term `i` (1-based) of the derived series.
    pub fn derived_term(&self, i: usize) -> Subspace {
        let s = self.derived_series();
        s[(i.max(1) - 1).min(s.len() - 1)].clone()
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().last().unwrap().is_zero()
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().unwrap().is_zero()
    }

    pub fn is_lie(&self) -> bool {
        self.leib_ideal().is_zero()
    }

    /// `Z^l(A) = {a : [a, x] = 0 for all x}`.
    pub fn left_center(&self) -> Subspace {
        Subspace::span(self.dim, self.left_center_system().nullspace())
    }

    /// `{a : [x, a] = 0 for all x}`.
    pub fn right_center(&self) -> Subspace {
        Subspace::span(self.dim, self.right_center_system().nullspace())
    }

    /// Two-sided annihilator: left and right centers intersected.
    pub fn center(&self) -> Subspace {
        let sys = self.left_center_system().vstack(&self.right_center_system());
        Subspace::span(self.dim, sys.nullspace())
    }

    fn left_center_system(&self) -> Matrix {
        let n = self.dim;
        let mut m = Matrix::zeros(n * n, n);
        for j in 0..n {
            for k in 0..n {
                for i in 0..n {
                    m.set(j * n + k, i, self.entry(i, j, k).clone());
                }
            }
        }
        m
    }

    fn right_center_system(&self) -> Matrix {
        let n = self.dim;
        let mut m = Matrix::zeros(n * n, n);
        for i in 0..n {
            for k in 0..n {
                for j in 0..n {
                    m.set(i * n + k, j, self.entry(i, j, k).clone());
                }
            }
        }
        m
    }

    /// Two-sided ideal test: `[A, I] ⊆ I` and `[I, A] ⊆ I`.
    pub fn is_ideal(&self, sub: &Subspace) -> bool {
        let full = Subspace::full(self.dim);
        self.bracket_span(&full, sub).is_subspace_of(sub)
            && self.bracket_span(sub, &full).is_subspace_of(sub)
    }

    /// For an ideal `I`, whether the induced product on `A/I` is
    /// skew-symmetric (`[x,y] + [y,x] ∈ I` and `[x,x] ∈ I`).
    pub fn quotient_is_skew(&self, ideal: &Subspace) -> bool {
        let n = self.dim;
        (0..n).all(|i| {
            ideal.contains(self.product(i, i))
                && (i + 1..n).all(|j| {
                    let s: Vec<Scalar> = self
                        .product(i, j)
                        .iter()
                        .zip(self.product(j, i))
                        .map(|(a, b)| a + b)
                        .collect();
                    ideal.contains(&s)
                })
        })
    }

    /// The algebra in the basis `y_i = Σ_j P[i][j] x_j`.
    pub fn change_of_basis(&self, p: &Matrix) -> Result<StructureConstants, AlgebraError> {
        if p.rows() != self.dim || p.cols() != self.dim {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dim,
                got: p.rows(),
            });
        }
        let q = p.inverse().ok_or(AlgebraError::SingularMatrix)?;
        let n = self.dim;
        let mut out = StructureConstants {
            dim: n,
            tensor: vec![Scalar::zero(); n * n * n],
            constraints: self.constraints.clone(),
            label: self.label.clone(),
            basis_names: None,
        };
        let rows = p.to_rows();
        for a in 0..n {
            for b in 0..n {
                let w = self.bracket_unchecked(&rows[a], &rows[b]);
                if w.iter().all(Scalar::is_zero) {
                    continue;
                }
                // coordinates of w in the y-basis: w · P⁻¹
                let coords: Vec<Scalar> = (0..n)
                    .map(|l| {
                        let col: Vec<Scalar> = (0..n).map(|k| q.get(k, l).clone()).collect();
                        crate::linalg::dot(&w, &col)
                    })
                    .collect();
                out.set_product(a, b, &coords);
            }
        }
        Ok(out)
    }

    /// `A ⊕ B` with `A` on the first `dim(A)` coordinates.
    pub fn direct_sum(&self, other: &StructureConstants) -> StructureConstants {
        let (n1, n2) = (self.dim, other.dim);
        let n = n1 + n2;
        let mut out = StructureConstants::abelian(n);
        for (i, j, p) in self.nonzero_products() {
            let mut v = p.to_vec();
            v.resize(n, Scalar::zero());
            out.set_product(i, j, &v);
        }
        for (i, j, p) in other.nonzero_products() {
            let mut v = vec![Scalar::zero(); n1];
            v.extend(p.iter().cloned());
            out.set_product(n1 + i, n1 + j, &v);
        }
        for c in self.constraints.iter().chain(&other.constraints) {
            out.add_constraint(c.clone());
        }
        out
    }

    /// Binds parameters to values; constraints on bound parameters are
    /// checked and then dropped.
    pub fn substitute(
        &self,
        bindings: &BTreeMap<String, Scalar>,
    ) -> Result<StructureConstants, AlgebraError> {
        let tensor = self
            .tensor
            .iter()
            .map(|v| v.substitute(bindings, &self.constraints))
            .collect::<Result<Vec<_>, _>>()?;
        let constraints = self
            .constraints
            .iter()
            .filter(|c| !bindings.contains_key(&c.param))
            .cloned()
            .collect();
        Ok(StructureConstants {
            dim: self.dim,
            tensor,
            constraints,
            label: self.label.clone(),
            basis_names: self.basis_names.clone(),
        })
    }

    /// Renames parameters in the tensor and constraints.
    pub fn rename_params(&self, map: &BTreeMap<String, String>) -> StructureConstants {
        let mut out = StructureConstants {
            dim: self.dim,
            tensor: self.tensor.iter().map(|v| v.rename_params(map)).collect(),
            constraints: Vec::new(),
            label: self.label.clone(),
            basis_names: self.basis_names.clone(),
        };
        for c in &self.constraints {
            let name = map.get(&c.param).cloned().unwrap_or_else(|| c.param.clone());
            out.add_constraint(ParameterConstraint::new(name, c.excluded.clone()));
        }
        out
    }

    /// Relabels basis vectors: new `x_{perm[i]}` is old `x_i`.
    pub fn permute_basis(&self, perm: &[usize]) -> StructureConstants {
        let n = self.dim;
        assert_eq!(perm.len(), n);
        let mut out = StructureConstants::abelian(n);
        out.constraints = self.constraints.clone();
        out.label = self.label.clone();
        for (i, j, p) in self.nonzero_products() {
            let mut v = vec![Scalar::zero(); n];
            for (k, c) in p.iter().enumerate() {
                v[perm[k]] = c.clone();
            }
            out.set_product(perm[i], perm[j], &v);
        }
        out
    }
}

/// Leibniz check on a constant tensor. The identity is homogeneous, so the
/// tensor is scaled to Gaussian integers and checked without normalizing
/// fractions.
fn constant_leibniz(t: &[GaussRational], n: usize) -> bool {
    let d = t.iter().fold(BigInt::one(), |acc, x| acc.lcm(&x.denom_lcm()));
    let scaled: Vec<(BigInt, BigInt)> = t
        .iter()
        .map(|x| {
            let part = |r: &BigRational| r.numer() * (&d / r.denom());
            (part(&x.re), part(&x.im))
        })
        .collect();
    let at = |i: usize, j: usize, k: usize| &scaled[(i * n + j) * n + k];
    let is_zero = |x: &(BigInt, BigInt)| x.0.is_zero() && x.1.is_zero();
    // acc += sign · x · y in ℤ[i]
    let fma = |acc: &mut (BigInt, BigInt), x: &(BigInt, BigInt), y: &(BigInt, BigInt), neg: bool| {
        let re = &x.0 * &y.0 - &x.1 * &y.1;
        let im = &x.0 * &y.1 + &x.1 * &y.0;
        if neg {
            acc.0 -= re;
            acc.1 -= im;
        } else {
            acc.0 += re;
            acc.1 += im;
        }
    };
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let mut defect = vec![(BigInt::zero(), BigInt::zero()); n];
                for j in 0..n {
                    let (bc, ab, ac) = (at(b, c, j), at(a, b, j), at(a, c, j));
                    for (k, dk) in defect.iter_mut().enumerate() {
                        if !is_zero(bc) {
                            fma(dk, bc, at(a, j, k), false);
                        }
                        if !is_zero(ab) {
                            fma(dk, ab, at(j, c, k), true);
                        }
                        if !is_zero(ac) {
                            fma(dk, ac, at(b, j, k), true);
                        }
                    }
                }
                if !defect.iter().all(is_zero) {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic() -> StructureConstants {
        // [x1,x1] = x2, [x1,x2] = x2
        StructureConstants::from_products(
            2,
            [
                (0, 0, vec![(1, Scalar::one())]),
                (0, 1, vec![(1, Scalar::one())]),
            ],
        )
    }

    #[test]
    fn bracket_of_generators() {
        let a = cyclic();
        let x1 = a.basis_vector(0);
        assert_eq!(a.bracket(&x1, &x1).unwrap(), a.basis_vector(1));
        let zero = vec![Scalar::zero(); 2];
        assert_eq!(a.bracket(&zero, &x1).unwrap(), zero);
        assert!(matches!(
            a.bracket(&[Scalar::one()], &x1),
            Err(AlgebraError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn leibniz_identity_checks() {
        assert!(cyclic().verify_leibniz());
        assert!(StructureConstants::abelian(3).verify_leibniz());
        // [x1,x1] = x1: LHS x1, RHS 2·x1
        let bad = StructureConstants::from_products(1, [(0, 0, vec![(0, Scalar::one())])]);
        assert!(!bad.verify_leibniz());
    }

    #[test]
    fn cyclic_is_solvable_not_nilpotent() {
        let a = cyclic();
        assert!(!a.is_nilpotent());
        assert!(a.is_solvable());
        assert!(!a.is_lie());
        let x2 = Subspace::span(2, [a.basis_vector(1)]);
        let lcs = a.lower_central_series();
        assert_eq!(lcs.last().unwrap(), &x2);
        assert_eq!(a.lower_central_term(5), x2);
        assert_eq!(a.derived_term(2), x2);
        assert!(a.derived_term(3).is_zero());
    }

    #[test]
    fn abelian_predicates() {
        let a = StructureConstants::abelian(3);
        assert!(a.is_nilpotent() && a.is_solvable() && a.is_lie());
        assert!(a.derived_algebra().is_zero());
        assert!(a.center().is_full());
    }

    #[test]
    fn change_of_basis_identity_and_inverse() {
        let a = cyclic();
        assert!(a.change_of_basis(&Matrix::identity(2)).unwrap().same_products(&a));
        let p = Matrix::from_ints(&[&[2, 1], &[1, 1]]);
        let b = a.change_of_basis(&p).unwrap();
        let back = b.change_of_basis(&p.inverse().unwrap()).unwrap();
        assert!(back.same_products(&a));
        assert_eq!(
            a.change_of_basis(&Matrix::from_ints(&[&[1, 1], &[1, 1]])),
            Err(AlgebraError::SingularMatrix)
        );
    }

    #[test]
    fn direct_sum_keeps_properties() {
        let d = StructureConstants::abelian(1).direct_sum(&StructureConstants::abelian(1));
        assert!(d.same_products(&StructureConstants::abelian(2)));
        let s = cyclic().direct_sum(&StructureConstants::abelian(1));
        assert!(s.is_solvable() && !s.is_nilpotent());
        let summand = Subspace::span(3, [s.basis_vector(0), s.basis_vector(1)]);
        assert!(s.is_ideal(&summand));
    }

    #[test]
    fn permutation_relabels() {
        let a = cyclic();
        let b = a.permute_basis(&[1, 0]);
        // [x2,x2] = x1, [x2,x1] = x1
        assert_eq!(b.product(1, 1), &[Scalar::one(), Scalar::zero()]);
        assert_eq!(b.product(1, 0), &[Scalar::one(), Scalar::zero()]);
    }

    mod props {
        use super::*;
        use crate::classify::{dim3_solvable_table, nilpotent_table};
        use proptest::prelude::*;

        fn invertible(n: usize) -> impl Strategy<Value = Matrix> {
            proptest::collection::vec((-2i64..=2, -1i64..=1), n * n)
                .prop_map(move |v| {
                    let rows = v
                        .chunks(n)
                        .map(|r| {
                            r.iter()
                                .map(|&(re, im)| Scalar::constant(GaussRational::from_parts((re, 1), (im, 1))))
                                .collect()
                        })
                        .collect();
                    Matrix::from_rows(rows)
                })
                .prop_filter("invertible", |m| !m.determinant().is_zero())
        }

        fn sample() -> impl Strategy<Value = StructureConstants> {
            let values = [("c", 2), ("c1", 2), ("c2", 3), ("alpha", 3)]
                .into_iter()
                .map(|(k, v)| (k.to_string(), Scalar::from_int(v)))
                .collect::<BTreeMap<_, _>>();
            let mut pool: Vec<StructureConstants> =
                nilpotent_table(5).into_iter().map(|e| e.algebra).collect();
            pool.extend(dim3_solvable_table().into_iter().map(|e| e.algebra));
            let pool: Vec<StructureConstants> = pool
                .iter()
                .map(|a| {
                    let keep: BTreeMap<_, _> = values
                        .iter()
                        .filter(|(k, _)| a.params().contains(*k))
                        .map(|(k, v)| (k.clone(), v.clone()))
                        .collect();
                    a.substitute(&keep).unwrap()
                })
                .collect();
            proptest::sample::select(pool)
        }

        fn dims(a: &StructureConstants) -> Vec<usize> {
            vec![
                a.derived_algebra().dim(),
                a.leib_ideal().dim(),
                a.center().dim(),
                a.left_center().dim(),
                a.right_center().dim(),
                a.lower_central_term(3).dim(),
                a.derived_term(2).dim(),
            ]
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]

            #[test]
            fn basis_change_preserves_structure(
                (a, p) in sample().prop_flat_map(|a| {
                    let n = a.dim();
                    (Just(a), invertible(n))
                })
            ) {
                let b = a.change_of_basis(&p).unwrap();
                prop_assert!(b.verify_leibniz());
                prop_assert_eq!(b.is_nilpotent(), a.is_nilpotent());
                prop_assert_eq!(b.is_solvable(), a.is_solvable());
                prop_assert_eq!(b.is_lie(), a.is_lie());
                prop_assert_eq!(dims(&b), dims(&a));
                let back = b.change_of_basis(&p.inverse().unwrap()).unwrap();
                prop_assert!(back.same_products(&a));
            }
        }
    }
}
