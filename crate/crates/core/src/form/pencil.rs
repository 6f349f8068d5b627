//! Kronecker invariants of the pencil `λM + μMᵀ`.
//!
//! Two matrices are congruent exactly when these pencils are strictly
//! equivalent, and strict equivalence is decided by minimal indices plus
//! finite and infinite elementary divisors.

use std::fmt;

use serde::{Serialize, Serializer};

use super::upoly::{split_roots, split_roots_approx, UPoly};
use super::{FormError, FormMatrix};
use crate::linalg::{Field, Mat};
use crate::scalar::{GaussRational, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PencilMode {
    /// Entries must be constants; divisors are split into linear factors
    /// over ℚ(i) where possible.
    #[default]
    Constant,
    /// Entries may involve parameters. Ranks are generic, and each invariant
    /// factor is reported through its square-free decomposition rather than
    /// split into prime powers.
    Generic,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DivisorBase {
    /// `λ − r`.
    Root(GaussRational),
    /// A monic factor with no roots in ℚ(i) (constant mode), or a square-free
    /// part of an invariant factor (generic mode).
    Factor(UPoly<Scalar>),
}

impl DivisorBase {
    pub fn degree(&self) -> usize {
        match self {
            DivisorBase::Root(_) => 1,
            DivisorBase::Factor(p) => p.degree().unwrap_or(0),
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            DivisorBase::Root(r) => UPoly::linear(r).to_text("λ"),
            DivisorBase::Factor(p) => p.to_text("λ"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementaryDivisor {
    pub base: DivisorBase,
    pub exponent: usize,
}

impl fmt::Display for ElementaryDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = self.base.to_text();
        let b = if b == "λ" { b } else { format!("({b})") };
        if self.exponent == 1 {
            write!(f, "{b}")
        } else {
            write!(f, "{b}^{}", self.exponent)
        }
    }
}

impl Serialize for ElementaryDivisor {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Strict-equivalence fingerprint of `λM + μMᵀ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PencilInvariants {
    pub size: usize,
    /// Rank of `M` itself.
    pub rank: usize,
    /// Rank of the pencil over the field of rational functions in `λ`.
    pub normal_rank: usize,
    pub left_indices: Vec<usize>,
    pub right_indices: Vec<usize>,
    pub finite_divisors: Vec<ElementaryDivisor>,
    /// Exponents `e` of the divisors `μ^e`.
    pub infinite_divisors: Vec<usize>,
}

impl PencilInvariants {
    /// Kronecker bookkeeping: the blocks `L_ε` (ε × ε+1), `L_ηᵀ` (η+1 × η)
    /// and the regular part must fill the pencil exactly.
    pub fn is_consistent(&self) -> bool {
        let regular: usize = self
            .finite_divisors
            .iter()
            .map(|d| d.base.degree() * d.exponent)
            .sum::<usize>()
            + self.infinite_divisors.iter().sum::<usize>();
        let eps: usize = self.right_indices.iter().sum();
        let eta: usize = self.left_indices.iter().sum();
        let cols = eps + self.right_indices.len() + eta + regular;
        let rows = eps + eta + self.left_indices.len() + regular;
        cols == self.size
            && rows == self.size
            && self.left_indices.len() == self.size - self.normal_rank
            && self.right_indices.len() == self.size - self.normal_rank
    }
}

impl fmt::Display for PencilInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[usize]| {
            v.iter()
                .map(usize::to_string)
                .collect::<Vec<_>>()
                .join(",")
        };
        let fin: Vec<String> = self.finite_divisors.iter().map(|d| d.to_string()).collect();
        write!(
            f,
            "size {} rank {} normal-rank {} left [{}] right [{}] finite [{}] infinite [{}]",
            self.size,
            self.rank,
            self.normal_rank,
            list(&self.left_indices),
            list(&self.right_indices),
            fin.join(", "),
            list(&self.infinite_divisors)
        )
    }
}

/// Constant-mode invariants.
pub fn pencil_invariants(m: &FormMatrix) -> Result<PencilInvariants, FormError> {
    pencil_invariants_in(m, PencilMode::Constant)
}

pub fn pencil_invariants_in(
    m: &FormMatrix,
    mode: PencilMode,
) -> Result<PencilInvariants, FormError> {
    match mode {
        PencilMode::Constant => {
            let g = m.to_constant().ok_or(FormError::ParameterNotSupported)?;
            Ok(constant_invariants(&g))
        }
        PencilMode::Generic => {
            let raw = kronecker(m.matrix());
            let mut finite = Vec::new();
            for f in &raw.invariant_factors {
                for (s, e) in f.squarefree() {
                    finite.push(ElementaryDivisor {
                        base: DivisorBase::Factor(s),
                        exponent: e,
                    });
                }
            }
            Ok(raw.finish(finite))
        }
    }
}

/// Invariants of a matrix over ℚ(i).
pub fn constant_invariants(m: &Mat<GaussRational>) -> PencilInvariants {
    rank_invariants(m).unwrap_or_else(|| smith_invariants(m))
}

/// The same invariants read off the Smith forms of both pencil
/// orientations. Exact but slow: coefficients swell during elimination.
fn smith_invariants(m: &Mat<GaussRational>) -> PencilInvariants {
    let raw = kronecker(m);
    let mut finite = Vec::new();
    for f in &raw.invariant_factors {
        let (roots, rest) = split_roots(f);
        for (r, e) in roots {
            finite.push(ElementaryDivisor {
                base: DivisorBase::Root(r),
                exponent: e,
            });
        }
        for (s, e) in rest.squarefree() {
            finite.push(ElementaryDivisor {
                base: DivisorBase::Factor(to_scalar_poly(&s)),
                exponent: e,
            });
        }
    }
    raw.finish(finite)
}

/// Rank-only computation of the invariants for the pencil `P(x) = Mᵀ + xM`
/// of normal rank `r`. At a point `μ` the block Toeplitz matrix `W_k(μ)`
/// (diagonal `P(μ)`, subdiagonal `M`, `k` blocks) has rank
/// `k·r − Σ min(k, mᵢ)` over the partial multiplicities `mᵢ` at `μ`;
/// singular blocks contribute full rank everywhere. Candidate eigenvalues
/// are the roots of one nonzero maximal minor, and a root's multiplicity
/// there bounds the sum of its partial multiplicities. The finite degree
/// must come out as `r − Σε − Ση − (infinite degree)`, otherwise some
/// eigenvalue lies outside ℚ(i) or was missed, and `None` is returned.
fn rank_invariants(m: &Mat<GaussRational>) -> Option<PencilInvariants> {
    let n = m.rows();
    let mt = m.transpose();
    let at = |mu: &GaussRational| mt.add(&m.scale(mu));
    // a nonzero maximal minor has at most n roots, so one of n + 1 points
    // attains the normal rank
    let mut normal_rank = 0;
    let mut generic = GaussRational::zero();
    for x in (0..=n as i64).map(GaussRational::from_int) {
        let r = at(&x).rank();
        if r > normal_rank || x.is_zero() {
            (normal_rank, generic) = (r, x);
        }
        if normal_rank == n {
            break;
        }
    }
    let missing = n - normal_rank;
    let right = minimal_indices(m, &mt, missing);
    let left = minimal_indices(&mt, m, missing);

    let mut infinite = local_multiplicities(m, &mt, normal_rank, None);
    infinite.sort_unstable();
    let singular: usize = right.iter().chain(&left).sum();
    let finite_degree = normal_rank
        .checked_sub(singular + infinite.iter().sum::<usize>())?;

    let mut finite = Vec::new();
    if finite_degree > 0 {
        let h = maximal_minor(m, normal_rank, &generic)?;
        let (roots, _) = split_roots_approx(&h);
        for (mu, bound) in roots {
            for e in local_multiplicities(&at(&mu), m, normal_rank, Some(bound)) {
                finite.push(ElementaryDivisor {
                    base: DivisorBase::Root(mu.clone()),
                    exponent: e,
                });
            }
        }
    }
    if finite.iter().map(|d| d.exponent).sum::<usize>() != finite_degree {
        return None;
    }
    finite.sort();
    Some(PencilInvariants {
        size: n,
        rank: m.rank(),
        normal_rank,
        left_indices: left,
        right_indices: right,
        finite_divisors: finite,
        infinite_divisors: infinite,
    })
}

/// Partial multiplicities of `d + t·s` at `t = 0`, for a pencil of normal
/// rank `r`. A known `bound` on their sum ends the search as soon as it is
/// reached.
fn local_multiplicities(
    d: &Mat<GaussRational>,
    s: &Mat<GaussRational>,
    r: usize,
    bound: Option<usize>,
) -> Vec<usize> {
    let (rows, cols) = (d.rows(), d.cols());
    // at_least[j] = #{i : mᵢ ≥ j + 1}
    let mut at_least: Vec<usize> = Vec::new();
    let mut prev_deficiency = 0;
    for k in 1..=rows + 1 {
        let mut w = Mat::zeros(k * rows, k * cols);
        for blk in 0..k {
            for i in 0..rows {
                for j in 0..cols {
                    w.set(blk * rows + i, blk * cols + j, d.get(i, j).clone());
                    if blk + 1 < k {
                        w.set((blk + 1) * rows + i, blk * cols + j, s.get(i, j).clone());
                    }
                }
            }
        }
        let deficiency = k * r - w.rank();
        let count = deficiency - prev_deficiency;
        if count == 0 {
            break;
        }
        at_least.push(count);
        prev_deficiency = deficiency;
        if bound == Some(deficiency) {
            break;
        }
    }
    let mut out = Vec::new();
    for (j, &c) in at_least.iter().enumerate() {
        let next = at_least.get(j + 1).copied().unwrap_or(0);
        out.extend(std::iter::repeat_n(j + 1, c - next));
    }
    out
}

/// A nonzero maximal minor of `P(x)` as a polynomial, up to a constant: a
/// multiple of the gcd of all of them, hence vanishing at every finite
/// eigenvalue. Interpolated from `r + 1` values.
fn maximal_minor(
    m: &Mat<GaussRational>,
    r: usize,
    generic: &GaussRational,
) -> Option<UPoly<GaussRational>> {
    let mt = m.transpose();
    let (rows, cols) = mt.add(&m.scale(generic)).basis_minor();
    if rows.len() != r {
        return None;
    }
    let (a, b) = (m.select(&rows, &cols), mt.select(&rows, &cols));
    let nodes: Vec<i64> = (0..=r as i64).collect();
    let values = b.pencil_determinants(&a, &nodes);
    let points: Vec<GaussRational> = nodes.into_iter().map(GaussRational::from_int).collect();
    Some(interpolate(&points, &values))
}

/// Newton divided differences, expanded to coefficients.
fn interpolate(points: &[GaussRational], values: &[GaussRational]) -> UPoly<GaussRational> {
    let n = points.len();
    let mut dd = values.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            let den = (&points[i] - &points[i - level]).inv().expect("distinct nodes");
            dd[i] = &(&dd[i] - &dd[i - 1]) * &den;
        }
    }
    let mut acc = UPoly::zero();
    for i in (0..n).rev() {
        acc = acc.mul(&UPoly::linear(&points[i])).add(&UPoly::constant(dd[i].clone()));
    }
    acc
}

fn to_scalar_poly(p: &UPoly<GaussRational>) -> UPoly<Scalar> {
    UPoly::from_coeffs(p.coeffs().iter().cloned().map(Scalar::constant).collect())
}

struct RawKronecker<F> {
    size: usize,
    rank: usize,
    normal_rank: usize,
    invariant_factors: Vec<UPoly<F>>,
    infinite: Vec<usize>,
    left: Vec<usize>,
    right: Vec<usize>,
}

impl<F: Field> RawKronecker<F> {
    fn finish(self, mut finite: Vec<ElementaryDivisor>) -> PencilInvariants {
        finite.sort();
        PencilInvariants {
            size: self.size,
            rank: self.rank,
            normal_rank: self.normal_rank,
            left_indices: self.left,
            right_indices: self.right,
            finite_divisors: finite,
            infinite_divisors: self.infinite,
        }
    }
}

fn kronecker<F: Field>(m: &Mat<F>) -> RawKronecker<F> {
    let n = m.rows();
    let mt = m.transpose();
    let pencil = |a: &Mat<F>, b: &Mat<F>| -> Vec<Vec<UPoly<F>>> {
        // entries b + x·a
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| UPoly::from_coeffs(vec![b.get(i, j).clone(), a.get(i, j).clone()]))
                    .collect()
            })
            .collect()
    };
    let invariant_factors: Vec<UPoly<F>> = smith_diagonal(pencil(m, &mt))
        .into_iter()
        .filter(|d| !d.is_one())
        .collect();
    let reversed = smith_diagonal(pencil(&mt, m));
    let normal_rank = reversed.len();
    let mut infinite: Vec<usize> = reversed
        .iter()
        .map(UPoly::zero_order)
        .filter(|&e| e > 0)
        .collect();
    infinite.sort_unstable();
    let missing = n - normal_rank;
    RawKronecker {
        size: n,
        rank: m.rank(),
        normal_rank,
        invariant_factors,
        infinite,
        right: minimal_indices(m, &mt, missing),
        left: minimal_indices(&mt, m, missing),
    }
}

/// Right minimal indices of `λA + B`: degrees of a minimal polynomial basis
/// of its kernel. With `T_d` the coefficient map of degree-`d` kernel
/// vectors, `dim ker T_d − dim ker T_{d−1}` counts the indices `≤ d`.
fn minimal_indices<F: Field>(a: &Mat<F>, b: &Mat<F>, count: usize) -> Vec<usize> {
    let n = a.rows();
    let mut out = Vec::new();
    let mut prev_kernel = 0;
    let mut prev_le = 0;
    let mut d = 0;
    while out.len() < count {
        let mut t = Mat::zeros((d +2) * n, (d + 1) * n);
        for blk in 0..=d {
            for i in 0..n {
                for j in 0..n {
                    t.set(blk * n + i, blk * n + j, b.get(i, j).clone());
                    t.set((blk + 1) * n + i, blk * n + j, a.get(i, j).clone());
                }
            }
        }
        let kernel = (d + 1) * n - t.rank();
        let le = kernel - prev_kernel;
        for _ in prev_le..le {
            out.push(d);
        }
        prev_kernel = kernel;
        prev_le = le;
        d += 1;
        assert!(d <= n + 1, "minimal index search did not terminate");
    }
    out
}

/// Nonzero diagonal of the Smith normal form, monic and in divisibility
/// order.
pub fn smith_diagonal<F: Field>(mut a: Vec<Vec<UPoly<F>>>) -> Vec<UPoly<F>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = min_degree_entry(&a, t) else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let pivot = a[t][t].clone();
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].divrem(&pivot).0;
                for j in t..cols {
                    let v = a[i][j].sub(&q.mul(&a[t][j]));
                    a[i][j] = v;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].divrem(&pivot).0;
                for row in a.iter_mut().skip(t) {
                    let v = row[j].sub(&q.mul(&row[t]));
                    row[j] = v;
                }
            }
            // A nonzero remainder in the pivot row or column has smaller
            // degree than the pivot: move it into place and repeat.
            let stray = (t + 1..rows)
                .map(|i| (i, t))
                .chain((t + 1..cols).map(|j| (t, j)))
                .filter(|&(i, j)| !a[i][j].is_zero())
                .min_by_key(|&(i, j)| a[i][j].degree());
            if let Some((i, j)) = stray {
                a.swap(t, i);
                for row in a.iter_mut() {
                    row.swap(t, j);
                }
                continue;
            }
            // The pivot must divide the rest of the submatrix.
            let bad_row = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !a[i][j].is_zero() && !a[i][j].divrem(&pivot).1.is_zero())
            });
            match bad_row {
                Some(i) => {
                    for j in t..cols {
                        let v = a[t][j].add(&a[i][j]);
                        a[t][j] = v;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].monic());
    }
    diag
}

fn min_degree_entry<F: Field>(a: &[Vec<UPoly<F>>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, p) in row.iter().enumerate().skip(t) {
            if let Some(d) = p.degree() {
                if best.is_none_or(|(bd, _, _)| d < bd) {
                    best = Some((d, i, j));
                }
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::form::CanonicalBlock;

    fn g(n: i64) -> GaussRational {
        GaussRational::from_int(n)
    }

    fn root(r: i64, e: usize) -> ElementaryDivisor {
        ElementaryDivisor {
            base: DivisorBase::Root(g(r)),
            exponent: e,
        }
    }

    #[test]
    fn one_by_one_cases() {
        let z = pencil_invariants(&FormMatrix::zero(1)).unwrap();
        assert_eq!((z.rank, z.left_indices.clone(), z.right_indices.clone()), (0, vec![0], vec![0]));
        assert!(z.finite_divisors.is_empty() && z.infinite_divisors.is_empty());

        let one = pencil_invariants(&FormMatrix::from_ints(&[&[1]])).unwrap();
        assert_eq!(one.finite_divisors, vec![root(-1, 1)]);
        assert!(one.left_indices.is_empty() && one.right_indices.is_empty());
    }

    #[test]
    fn a3_has_one_index_each_side() {
        let p = pencil_invariants(&FormMatrix::direct_sum(&[CanonicalBlock::a(3)])).unwrap();
        assert_eq!(p.left_indices, vec![1]);
        assert_eq!(p.right_indices, vec![1]);
        assert!(p.finite_divisors.is_empty() && p.infinite_divisors.is_empty());
        assert!(p.is_consistent());
    }

    #[test]
    fn smith_of_diagonal_polys() {
        // diag(x, x+1) has invariant factors 1, x(x+1)
        let x = UPoly::<GaussRational>::x();
        let x1 = UPoly::from_coeffs(vec![g(1), g(1)]);
        let m = vec![vec![x.clone(), UPoly::zero()], vec![UPoly::zero(), x1.clone()]];
        assert_eq!(smith_diagonal(m), vec![UPoly::one(), x.mul(&x1)]);
    }

    #[test]
    fn ranks_agree_with_smith() {
        use crate::form::dictionary;
        let mut blocks = dictionary(4);
        blocks.push(CanonicalBlock::b(2, Scalar::from_int(2)));
        blocks.push(CanonicalBlock::b(4, Scalar::i()));
        let s = Mat::from_ints(&[&[1, 2, 0, 1], &[0, 1, 1, 0], &[1, 0, 1, 2], &[0, 1, 0, 1]]);
        assert!(s.inverse().is_some());
        for (k, x) in blocks.iter().enumerate() {
            let y = &blocks[(3 * k + 1) % blocks.len()];
            let mut cases = vec![
                FormMatrix::direct_sum(&[x.clone()]),
                FormMatrix::direct_sum(&[x.clone(), y.clone()]),
            ];
            if x.size() == 4 {
                cases.push(cases[0].clone());
            }
            for (i, f) in cases.into_iter().enumerate() {
                let mut g = f.to_constant().unwrap();
                if i == 2 {
                    g = s.transpose().mul(&g).mul(&s);
                }
                assert_eq!(rank_invariants(&g), Some(smith_invariants(&g)), "{x} / {y}");
            }
        }
    }

    #[test]
    fn non_split_eigenvalues_fall_back() {
        // det(Mᵀ + xM) = x² − 7x + 1
        let m = Mat::from_ints(&[&[1, 3], &[0, 1]]);
        assert_eq!(rank_invariants(&m), None);
        let p = constant_invariants(&m);
        assert!(matches!(p.finite_divisors[0].base, DivisorBase::Factor(_)));
    }

    #[test]
    fn parametric_needs_generic_mode() {
        let m = FormMatrix::direct_sum(&[CanonicalBlock::b(2, Scalar::param("c"))]);
        assert_eq!(pencil_invariants(&m), Err(FormError::ParameterNotSupported));
        let p = pencil_invariants_in(&m, PencilMode::Generic).unwrap();
        // λ² + (c + 1/c)λ + 1 is square-free for generic c
        assert_eq!(p.finite_divisors.len(), 1);
        assert_eq!(p.finite_divisors[0].exponent, 1);
        assert!(p.is_consistent());
    }
}
