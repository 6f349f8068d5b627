use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// A subspace of `F^n`, stored as the nonzero rows of its reduced row
/// echelon basis. Because the echelon form is canonical, two subspaces are
/// equal exactly when their stored bases are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Self {
            ambient,
            basis: Matrix::zeros(0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self {
            ambient,
            basis: Matrix::identity(ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of the given vectors (each of length `ambient`).
    pub fn span<I>(ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = Vec<Scalar>>,
    {
        let rows: Vec<Vec<Scalar>> = vectors
            .into_iter()
            .filter(|v| v.iter().any(|x| !x.is_zero()))
            .inspect(|v| assert_eq!(v.len(), ambient, "vector length mismatch"))
            .collect();
        if rows.is_empty() {
            return Self::zero(ambient);
        }
        let (basis, pivots) = Matrix::from_rows(rows).rref();
        Self {
            ambient,
            basis,
            pivots,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Scalar>> {
        self.basis.to_rows()
    }

    /// Pivot columns of the echelon basis.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        if v.iter().all(Scalar::is_zero) {
            return true;
        }
        // Reduce v against the echelon basis; it lies in the span iff the
        // remainder vanishes.
        let mut r = v.to_vec();
        for (row, &p) in self.pivots.iter().enumerate() {
            if r[p].is_zero() {
                continue;
            }
            let f = r[p].clone();
            for (x, b) in r.iter_mut().zip(self.basis.row(row)) {
                if !b.is_zero() {
                    *x = &*x - &(&f * b);
                }
            }
        }
        r.iter().all(Scalar::is_zero)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis_vectors().iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::span(
            self.ambient,
            self.basis_vectors().into_iter().chain(other.basis_vectors()),
        )
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.ambient);
        }
        // Solve a·U = b·W: null space of [Uᵀ | -Wᵀ].
        let (k, l) = (self.dim(), other.dim());
        let mut sys = Matrix::zeros(self.ambient, k + l);
        for col in 0..k {
            for r in 0..self.ambient {
                sys.set(r, col, self.basis.get(col, r).clone());
            }
        }
        for col in 0..l {
            for r in 0..self.ambient {
                sys.set(r, k + col, -other.basis.get(col, r));
            }
        }
        let vecs = sys.nullspace().into_iter().map(|coeffs| {
            let mut v = vec![Scalar::zero(); self.ambient];
            for (i, a) in coeffs[..k].iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (x, b) in v.iter_mut().zip(self.basis.row(i)) {
                    *x = &*x + &(a * b);
                }
            }
            v
        });
        Subspace::span(self.ambient, vecs)
    }

    /// Direct sum of subspaces of different ambient spaces, placed in
    /// `F^{n₁+n₂}`.
    pub fn embed_sum(&self, other: &Subspace) -> Subspace {
        let n = self.ambient + other.ambient;
        let left = self.basis_vectors().into_iter().map(|mut v| {
            v.resize(n, Scalar::zero());
            v
        });
        let right = other.basis_vectors().into_iter().map(|v| {
            let mut w = vec![Scalar::zero(); self.ambient];
            w.extend(v);
            w
        });
        Subspace::span(n, left.chain(right))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    #[test]
    fn canonical_echelon_equality() {
        let a = Subspace::span(3, [v(&[1, 1, 0]), v(&[0, 1, 1])]);
        let b = Subspace::span(3, [v(&[1, 2, 1]), v(&[2, 2, 0])]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn intersection_and_sum() {
        let a = Subspace::span(3, [v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let b = Subspace::span(3, [v(&[0, 1, 0]), v(&[0, 0, 1])]);
        let i = a.intersection(&b);
        assert_eq!(i, Subspace::span(3, [v(&[0, 1, 0])]));
        assert!(a.sum(&b).is_full());
        assert!(i.is_subspace_of(&a) && i.is_subspace_of(&b));
        assert!(!a.contains(&v(&[0, 0, 1])));
    }
}
