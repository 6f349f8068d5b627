//! Dense matrices with exact row reduction, generic over the coefficient
//! field. [`Matrix`] holds [`Scalar`]s (rational functions in the
//! parameters); [`GMatrix`] holds plain Gaussian rationals and is what the
//! pencil and witness code uses for speed.
//!
//! Ranks and null spaces over [`Scalar`] are generic in the parameters: an
//! entry counts as a pivot whenever it is not identically zero as a rational
//! function.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;

mod bareiss;

use crate::scalar::{GaussRational, ParameterConstraint, Scalar, ScalarError};

/// The field operations the matrix code needs.
pub trait Field: Clone + Eq + Hash + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse of a nonzero element.
    fn recip(&self) -> Self;
    fn to_text(&self) -> String;

    fn matrix_rank(m: &Mat<Self>) -> usize {
        m.rref().1.len()
    }

    fn matrix_determinant(m: &Mat<Self>) -> Self {
        m.eliminated_determinant()
    }
}

macro_rules! impl_field {
    ($t:ty $(; $($extra:tt)*)?) => {
        impl Field for $t {
            fn zero() -> Self {
                <$t>::zero()
            }
            fn one() -> Self {
                <$t>::one()
            }
            fn from_int(n: i64) -> Self {
                <$t>::from_int(n)
            }
            fn is_zero(&self) -> bool {
                <$t>::is_zero(self)
            }
            fn is_one(&self) -> bool {
                <$t>::is_one(self)
            }
            fn add(&self, rhs: &Self) -> Self {
                self + rhs
            }
            fn sub(&self, rhs: &Self) -> Self {
                self - rhs
            }
            fn mul(&self, rhs: &Self) -> Self {
                self * rhs
            }
            fn neg(&self) -> Self {
                -self
            }
            fn recip(&self) -> Self {
                <$t>::inv(self).expect("inverse of zero")
            }
            fn to_text(&self) -> String {
                <$t>::to_text(self)
            }
            $($($extra)*)?
        }
    };
}

impl_field!(Scalar);
impl_field!(GaussRational;
    fn matrix_rank(m: &Mat<Self>) -> usize {
        bareiss::rank(m)
    }
    fn matrix_determinant(m: &Mat<Self>) -> Self {
        bareiss::determinant(m)
    }
);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

pub type Matrix = Mat<Scalar>;
pub type GMatrix = Mat<GaussRational>;

impl<F: Field> Mat<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    /// Builds a matrix from rows; all rows must have the same length.
    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| F::from_int(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = &F> {
        self.data.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(F::is_zero)
    }

    pub fn transpose(&self) -> Mat<F> {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Mat<F>) -> Mat<F> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j).add(&a.mul(b));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Mat<F>) -> Mat<F> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, rhs: &Mat<F>) -> Mat<F> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn scale(&self, k: &F) -> Mat<F> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.mul(k)).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| dot(self.row(i), v))
            .collect()
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Mat<F>) -> Mat<F> {
        let mut out = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Mat<F>) -> Mat<F> {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Mat {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Reduced row echelon form and pivot columns. Zero rows are dropped.
    pub fn rref(&self) -> (Mat<F>, Vec<usize>) {
        let mut rows: Vec<Vec<F>> = self.to_rows();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..self.cols {
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let inv = rows[r][col].recip();
            if !inv.is_one() {
                for v in rows[r].iter_mut() {
                    if !v.is_zero() {
                        *v = v.mul(&inv);
                    }
                }
            }
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i == r || row[col].is_zero() {
                    continue;
                }
                let f = row[col].clone();
                for (v, p) in row.iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *v = v.sub(&f.mul(p));
                    }
                }
            }
            pivots.push(col);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        rows.truncate(r);
        let m = if rows.is_empty() {
            Self::zeros(0, self.cols)
        } else {
            Self::from_rows(rows)
        };
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        F::matrix_rank(self)
    }

    /// Basis of `{v : self·v = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![F::zero(); self.cols];
                v[f] = F::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = r.get(row, f).neg();
                }
                v
            })
            .collect()
    }

    pub fn determinant(&self) -> F {
        assert!(self.is_square());
        F::matrix_determinant(self)
    }

    /// Determinant by elimination with field division.
    pub fn eliminated_determinant(&self) -> F {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.to_rows();
        let mut det = F::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&i| !a[i][col].is_zero()) else {
                return F::zero();
            };
            if p != col {
                a.swap(p, col);
                det = det.neg();
            }
            let piv = a[col][col].clone();
            det = det.mul(&piv);
            let inv = piv.recip();
            for i in col + 1..n {
                if a[i][col].is_zero() {
                    continue;
                }
                let f = a[i][col].mul(&inv);
                for j in col..n {
                    let v = a[i][j].sub(&f.mul(&a[col][j]));
                    a[i][j] = v;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Mat<F>> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(Self::zeros(0, 0));
        }
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, F::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::identity(self.rows);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn trace(&self) -> F {
        (0..self.rows.min(self.cols)).fold(F::zero(), |acc, i| acc.add(self.get(i, i)))
    }

    pub fn map<G>(&self, f: impl Fn(&F) -> G) -> Mat<G> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// The `rows × cols` block whose top-left corner is `(r0, c0)`.
    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        let mut out = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.set(i, j, self.get(r0 + i, c0 + j).clone());
            }
        }
        out
    }
}

impl Matrix {
    pub fn substitute(
        &self,
        bindings: &BTreeMap<String, Scalar>,
        constraints: &[ParameterConstraint],
    ) -> Result<Matrix, ScalarError> {
        let data = self
            .data
            .iter()
            .map(|v| v.substitute(bindings, constraints))
            .collect::<Result<_, _>>()?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn is_constant(&self) -> bool {
        self.data.iter().all(Scalar::is_constant)
    }

    /// The same matrix over plain Gaussian rationals, if no entry involves a
    /// parameter.
    pub fn to_constant(&self) -> Option<GMatrix> {
        let data = self
            .data
            .iter()
            .map(Scalar::as_constant)
            .collect::<Option<Vec<_>>>()?;
        Some(Mat {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }
}

impl GMatrix {
    pub fn to_scalar(&self) -> Matrix {
        self.map(|x| Scalar::constant(x.clone()))
    }
}

impl GMatrix {
    /// Row and column indices of a nonzero minor of size `rank`.
    pub fn basis_minor(&self) -> (Vec<usize>, Vec<usize>) {
        bareiss::basis_minor(self)
    }

    /// `det(self + x·a)` at each point, up to one common nonzero factor.
    pub fn pencil_determinants(&self, a: &GMatrix, points: &[i64]) -> Vec<GaussRational> {
        bareiss::pencil_determinants(self, a, points)
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> GMatrix {
        GMatrix::from_rows(
            rows.iter()
                .map(|&i| cols.iter().map(|&j| self.get(i, j).clone()).collect())
                .collect(),
        )
    }
}

pub fn dot<F: Field>(a: &[F], b: &[F]) -> F {
    let mut acc = F::zero();
    for (x, y) in a.iter().zip(b) {
        if x.is_zero() || y.is_zero() {
            continue;
        }
        acc = acc.add(&x.mul(y));
    }
    acc
}

/// Serialized as a list of rows.
impl<F: Field + serde::Serialize> serde::Serialize for Mat<F> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

impl<F: Field> fmt::Display for Mat<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(F::to_text).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_nullspace() {
        let m = Matrix::from_ints(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(m.rank(), 2);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(m.mul_vec(&ns[0]).iter().all(Scalar::is_zero));
    }

    #[test]
    fn inverse_round_trip() {
        let m = Matrix::from_ints(&[&[2, 1], &[7, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        assert!(Matrix::from_ints(&[&[1, 2], &[2, 4]]).inverse().is_none());
        assert_eq!(m.determinant(), Scalar::one());
    }

    #[test]
    fn generic_rank_with_parameter() {
        let c = Scalar::param("c");
        let m = Matrix::from_rows(vec![
            vec![Scalar::one(), c.clone()],
            vec![c.clone(), Scalar::one()],
        ]);
        // det = 1 - c², nonzero as a rational function
        assert_eq!(m.rank(), 2);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn entry() -> impl Strategy<Value = GaussRational> {
            // small support so that singular matrices are common
            (-2i64..=2, 1i64..=3, -1i64..=1).prop_map(|(a, d, b)| GaussRational::from_parts((a, d), (b, 1)))
        }

        fn gmatrix() -> impl Strategy<Value = GMatrix> {
            (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| {
                proptest::collection::vec(proptest::collection::vec(entry(), c), r)
                    .prop_map(GMatrix::from_rows)
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(128))]

            #[test]
            fn fraction_free_matches_field_elimination(m in gmatrix()) {
                prop_assert_eq!(m.rank(), m.rref().1.len());
                if m.is_square() {
                    prop_assert_eq!(m.determinant(), m.eliminated_determinant());
                }
            }
        }
    }
}
