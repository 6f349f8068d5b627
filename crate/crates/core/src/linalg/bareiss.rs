//! Fraction-free elimination over the Gaussian integers. Rows are scaled to
//! integral entries first; Bareiss keeps every intermediate entry a minor of
//! the scaled matrix, so nothing needs a gcd.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::GMatrix;
use crate::scalar::GaussRational;

#[derive(Clone, Debug, PartialEq, Eq)]
struct GInt {
    re: BigInt,
    im: BigInt,
}

impl GInt {
    fn one() -> Self {
        Self { re: BigInt::one(), im: BigInt::zero() }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn zero() -> Self {
        Self { re: BigInt::zero(), im: BigInt::zero() }
    }

    fn mul(&self, o: &Self) -> Self {
        Self {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    /// `self·a − b·c`, divided exactly by `d`.
    fn bareiss(&self, a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        let x = self.mul(a);
        let y = b.mul(c);
        let (re, im) = (x.re - y.re, x.im - y.im);
        if d.im.is_zero() {
            if d.re.is_one() {
                return Self { re, im };
            }
            return Self { re: re / &d.re, im: im / &d.re };
        }
        // (re + im·i)(d̄) / |d|²
        let n = &d.re * &d.re + &d.im * &d.im;
        Self {
            re: (&re * &d.re + &im * &d.im) / &n,
            im: (&im * &d.re - &re * &d.im) / &n,
        }
    }
}

/// Integral rows, and the product of the row scale factors.
fn integral_rows(m: &GMatrix) -> (Vec<Vec<GInt>>, BigInt) {
    let mut scale = BigInt::one();
    let rows = (0..m.rows())
        .map(|i| {
            let l = m
                .row(i)
                .iter()
                .map(GaussRational::denom_lcm)
                .fold(BigInt::one(), |a, b| a.lcm(&b));
            let row = m
                .row(i)
                .iter()
                .map(|x| GInt {
                    re: (&x.re * BigRational::from_integer(l.clone())).to_integer(),
                    im: (&x.im * BigRational::from_integer(l.clone())).to_integer(),
                })
                .collect();
            scale *= l;
            row
        })
        .collect();
    (rows, scale)
}

struct Elimination {
    rank: usize,
    /// The determinant of the scaled matrix when the rank is full.
    last_pivot: GInt,
    negate: bool,
    /// Original indices of the pivot rows, and the pivot columns.
    rows: Vec<usize>,
    cols: Vec<usize>,
}

fn eliminate(a: &mut [Vec<GInt>], cols: usize) -> Elimination {
    let rows = a.len();
    let mut prev = GInt::one();
    let mut r = 0;
    let mut negate = false;
    let mut order: Vec<usize> = (0..rows).collect();
    let mut pivot_cols = Vec::new();
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            order.swap(p, r);
            negate = !negate;
        }
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot = &top[r];
        for row in rest.iter_mut() {
            let lead = std::mem::replace(&mut row[col], GInt::zero());
            for j in col + 1..cols {
                row[j] = row[j].bareiss(&pivot[col], &lead, &pivot[j], &prev);
            }
        }
        prev = top[r][col].clone();
        pivot_cols.push(col);
        r += 1;
    }
    order.truncate(r);
    Elimination {
        rank: r,
        last_pivot: prev,
        negate,
        rows: order,
        cols: pivot_cols,
    }
}

pub(super) fn rank(m: &GMatrix) -> usize {
    let (mut a, _) = integral_rows(m);
    eliminate(&mut a, m.cols()).rank
}

/// Rows and columns of a nonzero minor of maximal size.
pub(super) fn basis_minor(m: &GMatrix) -> (Vec<usize>, Vec<usize>) {
    let (mut a, _) = integral_rows(m);
    let e = eliminate(&mut a, m.cols());
    (e.rows, e.cols)
}

pub(super) fn determinant(m: &GMatrix) -> GaussRational {
    let n = m.rows();
    if n == 0 {
        return GaussRational::one();
    }
    let (mut a, scale) = integral_rows(m);
    let Elimination { rank: r, last_pivot: last, negate, .. } = eliminate(&mut a, n);
    if r < n {
        return GaussRational::zero();
    }
    let s = BigRational::from_integer(scale);
    let d = GaussRational::new(
        BigRational::from_integer(last.re) / &s,
        BigRational::from_integer(last.im) / s,
    );
    if negate {
        -&d
    } else {
        d
    }
}

/// `det(B + x·A)` at each integer point, all scaled by one common nonzero
/// constant (the entries are cleared of denominators together).
pub(super) fn pencil_determinants(b: &GMatrix, a: &GMatrix, points: &[i64]) -> Vec<GaussRational> {
    let n = b.rows();
    let l = b
        .entries()
        .chain(a.entries())
        .map(GaussRational::denom_lcm)
        .fold(BigInt::one(), |x, y| x.lcm(&y));
    let lr = BigRational::from_integer(l);
    let integral = |m: &GMatrix| -> Vec<GInt> {
        m.entries()
            .map(|x| GInt {
                re: (&x.re * &lr).to_integer(),
                im: (&x.im * &lr).to_integer(),
            })
            .collect()
    };
    let (bi, ai) = (integral(b), integral(a));
    points
        .iter()
        .map(|&x| {
            let x = BigInt::from(x);
            let mut rows: Vec<Vec<GInt>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            let (p, q) = (&bi[i * n + j], &ai[i * n + j]);
                            GInt { re: &p.re + &x * &q.re, im: &p.im + &x * &q.im }
                        })
                        .collect()
                })
                .collect();
            let e = eliminate(&mut rows, n);
            if e.rank < n {
                return GaussRational::zero();
            }
            let d = GaussRational::new(
                BigRational::from_integer(e.last_pivot.re),
                BigRational::from_integer(e.last_pivot.im),
            );
            if e.negate {
                -&d
            } else {
                d
            }
        })
        .collect()
}
