//! Univariate polynomials over a [`Field`], used for the pencil variable.

use std::fmt::Write as _;

use num_bigint::{BigInt, Sign};
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use crate::linalg::Field;
use crate::scalar::GaussRational;

/// Coefficients low to high, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UPoly<F> {
    coeffs: Vec<F>,
}

impl<F: Field> UPoly<F> {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The variable itself.
    pub fn x() -> Self {
        Self::from_coeffs(vec![F::zero(), F::one()])
    }

    /// `x − r`.
    pub fn linear(r: &F) -> Self {
        Self::from_coeffs(vec![r.neg(), F::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(F::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; the zero polynomial has none.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    /// Multiplicity of the root `0`.
    pub fn zero_order(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::from_coeffs((0..n).map(|k| self.coeff(k).add(&rhs.coeff(k))).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::from_coeffs((0..n).map(|k| self.coeff(k).sub(&rhs.coeff(k))).collect())
    }

    pub fn neg(&self) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(F::neg).collect())
    }

    pub fn scale(&self, k: &F) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c.mul(k)).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        Self::from_coeffs(out)
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = d.coeffs[dd].recip();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![F::zero(); r.len() - dd];
        for k in (dd..r.len()).rev() {
            if r[k].is_zero() {
                continue;
            }
            let f = r[k].mul(&inv);
            for (j, c) in d.coeffs.iter().enumerate() {
                if !c.is_zero() {
                    r[k - dd + j] = r[k - dd + j].sub(&f.mul(c));
                }
            }
            q[k - dd] = f;
        }
        (Self::from_coeffs(q), Self::from_coeffs(r))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.mul(&F::from_int(k as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(), |acc, c| acc.mul(x).add(c))
    }

    /// Yun's square-free decomposition of a monic polynomial:
    /// `(s, e)` pairs with `self = Π s^e`, each `s` square-free, monic and
    /// non-constant.
    pub fn squarefree(&self) -> Vec<(Self, usize)> {
        let f = self.monic();
        let mut out = Vec::new();
        if f.degree().unwrap_or(0) == 0 {
            return out;
        }
        let fp = f.derivative();
        let a = f.gcd(&fp);
        let mut b = f.divrem(&a).0;
        let mut c = fp.divrem(&a).0;
        let mut d = c.sub(&b.derivative());
        let mut e = 1;
        loop {
            let g = b.gcd(&d);
            if g.degree().unwrap_or(0) > 0 {
                out.push((g.clone(), e));
            }
            b = b.divrem(&g).0;
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
            c = d.divrem(&g).0;
            d = c.sub(&b.derivative());
            e += 1;
        }
        out
    }

    /// Rendering with variable name `var`, highest degree first.
    pub fn to_text(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let text = c.to_text();
            let compound = text[1..].contains(['+', '-']) && k > 0;
            let (negative, t) = match text.strip_prefix('-') {
                Some(rest) if !compound => (true, rest.to_string()),
                _ => (false, text.clone()),
            };
            if negative {
                s.push('-');
            } else if !s.is_empty() {
                s.push('+');
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if k == 0 {
                s.push_str(&t);
            } else if t == "1" {
                s.push_str(&mono);
            } else if compound {
                let _ = write!(s, "({t})*{mono}");
            } else {
                let _ = write!(s, "{t}*{mono}");
            }
        }
        s
    }
}

/// Roots in ℚ(i) of a nonzero polynomial, with multiplicities, and the
/// monic cofactor that has no roots in ℚ(i).
///
/// Candidates come from the rational root theorem over the Gaussian
/// integers. Polynomials whose coefficient norms are too large to factor by
/// trial division are returned unsplit.
pub fn split_roots(p: &UPoly<GaussRational>) -> (Vec<(GaussRational, usize)>, UPoly<GaussRational>) {
    let mut rest = p.monic();
    let mut roots = Vec::new();
    let z = rest.zero_order();
    if z > 0 {
        roots.push((GaussRational::zero(), z));
        rest = UPoly::from_coeffs(rest.coeffs[z..].to_vec());
    }
    for (s, e) in rest.clone().squarefree() {
        for r in squarefree_roots(&s) {
            roots.push((r.clone(), e));
            let lin = UPoly::linear(&r).pow(e);
            rest = rest.divrem(&lin).0;
        }
    }
    roots.sort();
    (roots, rest)
}

/// As [`split_roots`], but roots are located numerically and then
/// reconstructed and verified exactly. Fast on huge coefficients; may miss a
/// root when double precision cannot resolve it, never reports a false one.
pub fn split_roots_approx(
    p: &UPoly<GaussRational>,
) -> (Vec<(GaussRational, usize)>, UPoly<GaussRational>) {
    let mut rest = p.monic();
    let mut roots = Vec::new();
    let z = rest.zero_order();
    if z > 0 {
        roots.push((GaussRational::zero(), z));
        rest = UPoly::from_coeffs(rest.coeffs[z..].to_vec());
    }
    for (s, e) in rest.clone().squarefree() {
        for r in approx_roots(&s) {
            roots.push((r.clone(), e));
            let lin = UPoly::linear(&r).pow(e);
            rest = rest.divrem(&lin).0;
        }
    }
    roots.sort();
    (roots, rest)
}

fn approx_roots(p: &UPoly<GaussRational>) -> Vec<GaussRational> {
    use num_complex::Complex64;
    let p = p.monic();
    let Some(d) = p.degree().filter(|&d| d > 0) else {
        return Vec::new();
    };
    if d == 1 {
        return vec![p.coeff(0).neg()];
    }
    let coeffs: Option<Vec<Complex64>> = p
        .coeffs()
        .iter()
        .map(|c| Some(Complex64::new(c.re.to_f64()?, c.im.to_f64()?)))
        .collect();
    let Some(coeffs) = coeffs.filter(|c| c.iter().all(|z| z.is_finite())) else {
        return Vec::new();
    };
    let eval = |z: Complex64| coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c);
    // Durand–Kerner from the usual spread-out start
    let bound = 1.0 + coeffs[..d].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..d).map(|k| seed.powu(k as u32) * bound.min(1e6)).collect();
    for _ in 0..1000 {
        let mut moved = 0.0f64;
        for k in 0..d {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..d {
                if j != k {
                    den *= z[k] - z[j];
                }
            }
            if den.norm() == 0.0 {
                continue;
            }
            let step = eval(z[k]) / den;
            z[k] -= step;
            moved = moved.max(step.norm() / z[k].norm().max(1.0));
        }
        if moved < 1e-15 {
            break;
        }
    }
    let mut out: Vec<GaussRational> = Vec::new();
    for w in z {
        'found: for re in nearby_fractions(w.re) {
            for im in nearby_fractions(w.im) {
                let r = GaussRational::new(re.clone(), im);
                if !out.contains(&r) && p.eval(&r).is_zero() {
                    out.push(r);
                    break 'found;
                }
            }
        }
    }
    out
}

/// Continued-fraction convergents of `x` within a relative `1e-9`, smallest
/// denominator first.
fn nearby_fractions(x: f64) -> Vec<BigRational> {
    let mut out = Vec::new();
    if !x.is_finite() {
        return out;
    }
    let tol = 1e-9 * x.abs().max(1.0);
    let (mut h0, mut h1) = (BigInt::from(0), BigInt::from(1));
    let (mut k0, mut k1) = (BigInt::from(1), BigInt::from(0));
    let mut y = x;
    for _ in 0..40 {
        let a = y.floor();
        if a.abs() > 9e15 {
            break;
        }
        let ai = BigInt::from(a as i64);
        let h = &ai * &h1 + &h0;
        let k = &ai * &k1 + &k0;
        (h0, h1) = (h1, h.clone());
        (k0, k1) = (k1, k.clone());
        let (Some(hf), Some(kf)) = (h.to_f64(), k.to_f64()) else { break };
        if (hf / kf - x).abs() <= tol {
            out.push(BigRational::new(h, k));
            if out.len() == 4 {
                break;
            }
        }
        let frac = y - a;
        if frac.abs() < 1e-300 {
            break;
        }
        y = 1.0 / frac;
    }
    out
}

/// Distinct roots in ℚ(i) of a square-free polynomial with nonzero constant
/// term.
fn squarefree_roots(p: &UPoly<GaussRational>) -> Vec<GaussRational> {
    let mut out = Vec::new();
    let mut p = p.monic();
    if p.degree() == Some(1) {
        return vec![p.coeff(0).neg()];
    }
    // Clear denominators: integer Gaussian coefficients.
    let l = p
        .coeffs()
        .iter()
        .map(GaussRational::denom_lcm)
        .fold(BigInt::one(), |a, b| a.lcm(&b));
    let scaled: Vec<(BigInt, BigInt)> = p
        .coeffs()
        .iter()
        .map(|c| {
            let re = &c.re * BigRational::from_integer(l.clone());
            let im = &c.im * BigRational::from_integer(l.clone());
            (re.to_integer(), im.to_integer())
        })
        .collect();
    let a0 = &scaled[0];
    let an = scaled.last().unwrap();
    let (Some(p_divs), Some(q_divs)) = (gaussian_divisors(a0), gaussian_divisors(an)) else {
        return out;
    };
    let q_reps: Vec<&(BigInt, BigInt)> = q_divs
        .iter()
        .filter(|(a, b)| a.is_positive() && !b.is_negative())
        .collect();
    for (pa, pb) in &p_divs {
        for (qa, qb) in &q_reps {
            let num = GaussRational::new(
                BigRational::from_integer(pa.clone()),
                BigRational::from_integer(pb.clone()),
            );
            let den = GaussRational::new(
                BigRational::from_integer(qa.clone()),
                BigRational::from_integer(qb.clone()),
            );
            let r = &num / &den;
            if out.contains(&r) {
                continue;
            }
            if p.eval(&r).is_zero() {
                p = p.divrem(&UPoly::linear(&r)).0;
                out.push(r);
                if p.degree() == Some(1) {
                    out.push(p.coeff(0).neg());
                    return out;
                }
                if p.degree() == Some(0) {
                    return out;
                }
            }
        }
    }
    out
}

/// Gaussian-integer divisors of `a + bi` (all associates), or `None` when the
/// norm is too large to factor by trial division.
fn gaussian_divisors((a, b): &(BigInt, BigInt)) -> Option<Vec<(BigInt, BigInt)>> {
    let norm = a * a + b * b;
    let n = norm.to_u64().filter(|&n| n <= 1u64 << 50)?;
    let mut out = Vec::new();
    for d in int_divisors(n) {
        for x in 0..=d.sqrt() {
            let y2 = d - x * x;
            let y = y2.sqrt();
            if y * y != y2 {
                continue;
            }
            for (sx, sy) in [(1i64, 1i64), (1, -1), (-1, 1), (-1, -1)] {
                let (gx, gy) = (BigInt::from(x) * sx, BigInt::from(y) * sy);
                if out.contains(&(gx.clone(), gy.clone())) {
                    continue;
                }
                // (a+bi)/(gx+gy i) must be a Gaussian integer.
                let nd = &gx * &gx + &gy * &gy;
                let re = a * &gx + b * &gy;
                let im = b * &gx - a * &gy;
                if (&re % &nd).sign() == Sign::NoSign && (&im % &nd).sign() == Sign::NoSign {
                    out.push((gx, gy));
                }
            }
        }
    }
    Some(out)
}

fn int_divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: i64) -> GaussRational {
        GaussRational::from_int(n)
    }

    fn poly(cs: &[i64]) -> UPoly<GaussRational> {
        UPoly::from_coeffs(cs.iter().map(|&c| g(c)).collect())
    }

    #[test]
    fn approximate_roots_are_exact() {
        // (x − 3/7)(x + 2 − i/5)(x² + 1)·(x − 1)²
        let r1 = GaussRational::from_ratio(3, 7);
        let r2 = GaussRational::from_parts((-2, 1), (1, 5));
        let p = UPoly::linear(&r1)
            .mul(&UPoly::linear(&r2))
            .mul(&poly(&[1, 0, 1]))
            .mul(&UPoly::linear(&g(1)).pow(2));
        let (roots, rest) = split_roots_approx(&p);
        let (exact, exact_rest) = split_roots(&p);
        assert_eq!(roots, exact);
        assert_eq!(rest, exact_rest);
        assert!(rest.is_one());
        // x² − 2 has no roots in Q(i)
        let (none, rest) = split_roots_approx(&poly(&[-2, 0, 1]));
        assert!(none.is_empty());
        assert_eq!(rest.degree(), Some(2));
    }

    #[test]
    fn divrem_and_gcd() {
        let a = poly(&[-1, 0, 1]); // x² − 1
        let b = poly(&[1, 1]); // x + 1
        let (q, r) = a.divrem(&b);
        assert_eq!(q, poly(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&poly(&[-1, 1]).mul(&poly(&[2, 1]))), poly(&[-1, 1]));
    }

    #[test]
    fn squarefree_groups_multiplicities() {
        // (x+1)^3 (x-2)
        let p = poly(&[1, 1]).pow(3).mul(&poly(&[-2, 1]));
        let sf = p.squarefree();
        assert_eq!(sf, vec![(poly(&[-2, 1]), 1), (poly(&[1, 1]), 3)]);
    }

    #[test]
    fn gaussian_roots() {
        // (x − i)(x + 1/2)^2 (x² + x + 1)
        let p = UPoly::linear(&GaussRational::i())
            .mul(&UPoly::linear(&GaussRational::from_ratio(-1, 2)).pow(2))
            .mul(&poly(&[1, 1, 1]));
        let (roots, rest) = split_roots(&p);
        assert_eq!(
            roots,
            vec![(GaussRational::from_ratio(-1, 2), 2), (GaussRational::i(), 1)]
        );
        assert_eq!(rest, poly(&[1, 1, 1]));
        // x² + 1 splits over ℚ(i)
        let (roots, rest) = split_roots(&poly(&[1, 0, 1]));
        assert_eq!(roots.len(), 2);
        assert!(rest.is_one());
    }

    #[test]
    fn text_rendering() {
        assert_eq!(poly(&[1, 2, 1]).to_text("x"), "x^2+2*x+1");
        assert_eq!(poly(&[0, -1]).to_text("x"), "-x");
        let p = UPoly::linear(&GaussRational::from_parts((1, 1), (1, 1)));
        assert_eq!(p.to_text("x"), "x-1-i");
    }
}
