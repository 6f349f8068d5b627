//! Explicit congruence witnesses, best effort.
//!
//! Solutions `(S, Y)` of the linear system `MS = YN`, `MᵀS = YNᵀ` with `S`
//! invertible give `SᵀMS = NG` for `G = YᵀS`, and `NG = GᵀN`, so every
//! polynomial in `G` is self-adjoint for `N`. On each generalized eigenspace
//! of `G` (eigenvalue `λⱼ`) a polynomial square root of `G/λⱼ` exists, and
//! removing it leaves `N·D` with `D = λⱼ` on the eigenspaces. Those are
//! orthogonal for `N` on both sides, so `N` splits as `⊕ Nⱼ` and each piece
//! only needs a scaling `TⱼᵀNⱼTⱼ = (t/λⱼ)Nⱼ`: a square root when the ratio
//! is a square in ℚ(i), otherwise a self-congruence found on a rational
//! point of a conic (this works for the pieces that admit every scaling,
//! such as the singular ones).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::upoly::{split_roots_approx, UPoly};
use crate::linalg::{Field, GMatrix};
use crate::scalar::GaussRational;

/// `Sᵀ M S = t N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledWitness {
    pub s: GMatrix,
    pub t: GaussRational,
}

/// Random combinations tried after the all-ones and unit ones.
const RANDOM_ATTEMPTS: usize = 4;
const SCALING_ATTEMPTS: usize = 8;

/// Some `S` and `t ≠ 0` with `Sᵀ M S = t N`, verified.
pub fn scaled_congruence_witness(m: &GMatrix, n: &GMatrix, seed: u64) -> Option<ScaledWitness> {
    search(m, n, seed, false)
}

/// Some `S` with `Sᵀ M S = N`, verified.
pub fn congruence_witness(m: &GMatrix, n: &GMatrix, seed: u64) -> Option<GMatrix> {
    search(m, n, seed, true).map(|w| w.s)
}

fn combine(basis: &[Vec<GaussRational>], coeffs: &[i64]) -> Vec<GaussRational> {
    let mut v = vec![GaussRational::zero(); basis[0].len()];
    for (c, b) in coeffs.iter().zip(basis) {
        if *c == 0 {
            continue;
        }
        let c = GaussRational::from_int(*c);
        for (x, y) in v.iter_mut().zip(b) {
            *x = &*x + &(&c * y);
        }
    }
    v
}

fn random_coeffs(rng: &mut ChaCha8Rng, len: usize) -> Vec<i64> {
    (0..len).map(|_| rng.gen_range(-3..=3)).collect()
}

fn search(m: &GMatrix, n: &GMatrix, seed: u64, exact: bool) -> Option<ScaledWitness> {
    let size = m.rows();
    if size != n.rows() || !m.is_square() || !n.is_square() {
        return None;
    }
    if size == 0 {
        return Some(ScaledWitness {
            s: GMatrix::zeros(0, 0),
            t: GaussRational::one(),
        });
    }
    if let Some(s) = symplectic_witness(m, n) {
        return Some(ScaledWitness {
            s,
            t: GaussRational::one(),
        });
    }
    let basis = solution_space(m, n);
    if basis.is_empty() {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..=basis.len() + RANDOM_ATTEMPTS {
        let coeffs: Vec<i64> = match attempt {
            0 => vec![1; basis.len()],
            a if a <= basis.len() => (0..basis.len()).map(|k| i64::from(k + 1 == a)).collect(),
            _ => random_coeffs(&mut rng, basis.len()),
        };
        let (s, y) = unpack(&combine(&basis, &coeffs), size);
        if let Some(w) = finish(m, n, &s, &y, exact, &mut rng) {
            return Some(w);
        }
    }
    None
}

/// Nondegenerate skew forms of equal size are all congruent: map both to
/// the standard symplectic form.
fn symplectic_witness(m: &GMatrix, n: &GMatrix) -> Option<GMatrix> {
    let skew = |a: &GMatrix| a.add(&a.transpose()).is_zero();
    if !skew(m) || !skew(n) {
        return None;
    }
    let s = symplectic_basis(m)?.mul(&symplectic_basis(n)?.inverse()?);
    (s.transpose().mul(m).mul(&s) == *n).then_some(s)
}

/// Columns `e₁, f₁, e₂, f₂, …` with `B(eᵢ, fᵢ) = 1` and all other pairs
/// orthogonal, for a nondegenerate skew `B`.
fn symplectic_basis(m: &GMatrix) -> Option<GMatrix> {
    let k = m.rows();
    let b = |u: &[GaussRational], v: &[GaussRational]| crate::linalg::dot(u, &m.mul_vec(v));
    let mut rest: Vec<Vec<GaussRational>> = GMatrix::identity(k).to_rows();
    let mut cols = Vec::with_capacity(k);
    while let Some(e) = rest.pop() {
        let j = rest.iter().position(|v| !b(&e, v).is_zero())?;
        let f = rest.remove(j);
        let f: Vec<GaussRational> = {
            let inv = b(&e, &f).inv()?;
            f.iter().map(|x| x * &inv).collect()
        };
        for v in rest.iter_mut() {
            let (a, c) = (b(&f, v), b(&e, v));
            for ((x, ei), fi) in v.iter_mut().zip(&e).zip(&f) {
                *x = &(&*x + &(&a * ei)) - &(&c * fi);
            }
        }
        cols.push(e);
        cols.push(f);
    }
    Some(GMatrix::from_rows(cols).transpose())
}

/// Basis of the solutions `(S, Y)`, flattened as `S` then `Y`, row-major.
fn solution_space(m: &GMatrix, n: &GMatrix) -> Vec<Vec<GaussRational>> {
    let k = m.rows();
    let unknowns = 2 * k * k;
    let s_var = |r: usize, c: usize| r * k + c;
    let y_var = |r: usize, c: usize| k * k + r * k + c;
    let mut sys = GMatrix::zeros(2 * k * k, unknowns);
    let mt = m.transpose();
    let nt = n.transpose();
    for (block, (a, b)) in [(m, n), (&mt, &nt)].into_iter().enumerate() {
        for i in 0..k {
            for j in 0..k {
                let row = block * k * k + i * k + j;
                // (A S)_{ij} − (Y B)_{ij}
                for l in 0..k {
                    let x = a.get(i, l);
                    if !x.is_zero() {
                        let cur = sys.get(row, s_var(l, j)).add(x);
                        sys.set(row, s_var(l, j), cur);
                    }
                    let z = b.get(l, j);
                    if !z.is_zero() {
                        let cur = sys.get(row, y_var(i, l)).sub(z);
                        sys.set(row, y_var(i, l), cur);
                    }
                }
            }
        }
    }
    sys.nullspace()
}

fn unpack(v: &[GaussRational], k: usize) -> (GMatrix, GMatrix) {
    let s = GMatrix::from_rows((0..k).map(|r| v[r * k..(r + 1) * k].to_vec()).collect());
    let y = GMatrix::from_rows(
        (0..k)
            .map(|r| v[k * k + r * k..k * k + (r + 1) * k].to_vec())
            .collect(),
    );
    (s, y)
}

/// Eigenvalues of `g` with multiplicities, if they all lie in ℚ(i) and
/// are nonzero.
fn split_spectrum(g: &GMatrix) -> Option<Vec<(GaussRational, usize)>> {
    let (roots, rest) = split_roots_approx(&char_poly(g));
    if !rest.is_one() || roots.iter().any(|(r, _)| r.is_zero()) {
        return None;
    }
    Some(roots)
}

/// `R = p(G)` with `R² = G·D⁻¹`, where `D` is `λⱼ` on each generalized
/// eigenspace.
fn unipotent_root(g: &GMatrix, roots: &[(GaussRational, usize)]) -> Option<GMatrix> {
    let p = hermite_sqrt(roots, true)?;
    Some(eval_matrix_poly(&p, g))
}

fn finish(
    m: &GMatrix,
    n: &GMatrix,
    s: &GMatrix,
    y: &GMatrix,
    exact: bool,
    rng: &mut ChaCha8Rng,
) -> Option<ScaledWitness> {
    s.inverse()?;
    let g = y.transpose().mul(s);
    let roots = split_spectrum(&g)?;
    let r = unipotent_root(&g, &roots)?;
    let s1 = s.mul(&r.inverse()?);

    // t: 1 when exact, otherwise the eigenvalue making most ratios squares
    let t = if exact {
        GaussRational::one()
    } else {
        roots
            .iter()
            .map(|(cand, _)| {
                let squares = roots
                    .iter()
                    .filter(|(l, _)| (cand / l).sqrt().is_some())
                    .count();
                (squares, cand.clone())
            })
            .max_by_key(|(k, _)| *k)
            .map(|(_, c)| c)?
    };

    let size = m.rows();
    let mut columns: Vec<Vec<GaussRational>> = Vec::new();
    let mut scalings: Vec<GMatrix> = Vec::new();
    for (lambda, mult) in &roots {
        let shifted = g.sub(&GMatrix::identity(size).map(|x| x * lambda));
        let space = shifted.pow(*mult as u32).nullspace();
        if space.len() != *mult {
            return None;
        }
        let q = GMatrix::from_rows(space.clone()).transpose();
        let piece = q.transpose().mul(n).mul(&q);
        let mu = &t / lambda;
        scalings.push(scale_form(&piece, &mu, rng)?);
        columns.extend(space);
    }
    let q = GMatrix::from_rows(columns).transpose();
    let block = scalings
        .iter()
        .skip(1)
        .fold(scalings[0].clone(), |acc, b| acc.direct_sum(b));
    let total = s1.mul(&q).mul(&block).mul(&q.inverse()?);
    let lhs = total.transpose().mul(m).mul(&total);
    (lhs == n.map(|x| x * &t)).then_some(ScaledWitness { s: total, t })
}

/// Some `T` with `Tᵀ K T = μ K`.
fn scale_form(k: &GMatrix, mu: &GaussRational, rng: &mut ChaCha8Rng) -> Option<GMatrix> {
    let size = k.rows();
    if let Some(root) = mu.sqrt() {
        return Some(GMatrix::identity(size).map(|x| x * &root));
    }
    // det(T)²·det K = μ^size·det K: hopeless for odd nondegenerate pieces
    if size % 2 == 1 && !k.determinant().is_zero() {
        return None;
    }
    let basis = solution_space(k, k);
    if basis.len() < 2 {
        return None;
    }
    let nn = GaussRational::from_int(size as i64);
    for _ in 0..SCALING_ATTEMPTS {
        // along the line X0 + s·X1, G(s) = A + sB + s²C
        let (x0, z0) = unpack(&combine(&basis, &random_coeffs(rng, basis.len())), size);
        let (x1, z1) = unpack(&combine(&basis, &random_coeffs(rng, basis.len())), size);
        let a = z0.transpose().mul(&x0);
        let b = z0.transpose().mul(&x1).add(&z1.transpose().mul(&x0));
        let c = z1.transpose().mul(&x1);
        // trace / size is the eigenvalue whenever G(s) has only one
        let (alpha, beta, gamma) = (&c.trace() / &nn, &b.trace() / &nn, &a.trace() / &nn);
        for s in conic_points(&alpha, &beta, &gamma, mu) {
            let x = x0.add(&x1.map(|v| v * &s));
            let z = z0.add(&z1.map(|v| v * &s));
            if x.inverse().is_none() {
                continue;
            }
            let g = z.transpose().mul(&x);
            let Some(roots) = split_spectrum(&g) else { continue };
            if roots.len() != 1 {
                continue;
            }
            let Some(w) = (&roots[0].0 / mu).sqrt() else { continue };
            let Some(r) = unipotent_root(&g, &roots) else { continue };
            let Some(rinv) = r.inverse() else { continue };
            let winv = w.inv()?;
            let t = x.mul(&rinv).map(|v| v * &winv);
            if t.transpose().mul(k).mul(&t) == k.map(|v| v * mu) {
                return Some(t);
            }
        }
    }
    None
}

/// Values `s` where `q(s) = αs² + βs + γ` could equal `μ` times a square:
/// direct solutions of `q(s) = μ`, and, when `q` has a root in ℚ(i), points
/// of the conic `q(s) = μw²` parametrized through that root.
fn conic_points(
    alpha: &GaussRational,
    beta: &GaussRational,
    gamma: &GaussRational,
    mu: &GaussRational,
) -> Vec<GaussRational> {
    let two = GaussRational::from_int(2);
    let four = GaussRational::from_int(4);
    let mut out = Vec::new();
    let quadratic_roots = |a: &GaussRational, b: &GaussRational, c: &GaussRational| {
        if a.is_zero() {
            return match b.is_zero() {
                true => Vec::new(),
                false => vec![-(c / b)],
            };
        }
        let disc = &(b * b) - &(&(&four * a) * c);
        match disc.sqrt() {
            Some(d) => {
                let den = &two * a;
                vec![&(&-b + &d) / &den, &(&-b - &d) / &den]
            }
            None => Vec::new(),
        }
    };
    out.extend(quadratic_roots(alpha, beta, &(gamma - mu)));
    if !alpha.is_zero() {
        let zeros = quadratic_roots(alpha, beta, gamma);
        if let [s0, s1] = zeros.as_slice() {
            // α(s − s0)(s − s1) = μ m²(s − s0)²  ⇒  s = (αs1 − μm²s0)/(α − μm²)
            for slope in 1..=3 {
                let m2 = GaussRational::from_int(slope * slope);
                let den = alpha - &(mu * &m2);
                if den.is_zero() {
                    continue;
                }
                let num = &(alpha * s1) - &(&(mu * &m2) * s0);
                out.push(&num / &den);
            }
        }
    }
    out
}

/// Characteristic polynomial `det(xI − G)` by Faddeev–LeVerrier.
pub fn char_poly(g: &GMatrix) -> UPoly<GaussRational> {
    let n = g.rows();
    let mut coeffs = vec![GaussRational::zero(); n + 1];
    coeffs[n] = GaussRational::one();
    let mut mk = GMatrix::zeros(n, n);
    let id = GMatrix::identity(n);
    for k in 1..=n {
        // M_k = G·M_{k−1} + c_{n−k+1}·I ; c_{n−k} = −tr(G·M_k)/k
        mk = g.mul(&mk).add(&id.map(|x| x * &coeffs[n - k + 1]));
        let tr = g.mul(&mk).trace();
        coeffs[n - k] = -(&tr / &GaussRational::from_int(k as i64));
    }
    UPoly::from_coeffs(coeffs)
}

/// Polynomial `p` with `p(x)² ≡ x` modulo `Π (x − νⱼ)^{mⱼ}`, from the
/// Taylor expansion of `√x` at each `νⱼ` glued by the Chinese remainder
/// theorem. Fails if some `νⱼ` has no square root in ℚ(i). With `local`,
/// the expansion is of `√(x/νⱼ)` instead, which always exists.
fn hermite_sqrt(eig: &[(GaussRational, usize)], local: bool) -> Option<UPoly<GaussRational>> {
    let mut modulus = UPoly::one();
    let mut acc = UPoly::zero();
    for (nu, mult) in eig {
        let s = if local { GaussRational::one() } else { nu.sqrt()? };
        // Σ_l binom(1/2, l) ν^{−l} (x − ν)^l, scaled by √ν
        let shift = UPoly::linear(nu);
        let nu_inv = nu.inv()?;
        let mut taylor = UPoly::zero();
        let mut binom = GaussRational::one();
        for l in 0..*mult {
            let term = shift.pow(l).scale(&(&binom * &nu_inv.pow(l as u32)));
            taylor = taylor.add(&term);
            // binom(1/2, l+1) = binom(1/2, l)·(1/2 − l)/(l + 1)
            let num = &GaussRational::from_ratio(1, 2) - &GaussRational::from_int(l as i64);
            binom = &(&binom * &num) / &GaussRational::from_int(l as i64 + 1);
        }
        let taylor = taylor.scale(&s);
        let local = shift.pow(*mult);
        acc = crt(&acc, &modulus, &taylor, &local)?;
        modulus = modulus.mul(&local);
    }
    Some(acc)
}

/// `x ≡ a (mod m)`, `x ≡ b (mod n)` for coprime `m`, `n`.
fn crt(
    a: &UPoly<GaussRational>,
    m: &UPoly<GaussRational>,
    b: &UPoly<GaussRational>,
    n: &UPoly<GaussRational>,
) -> Option<UPoly<GaussRational>> {
    let (g, u, _) = ext_gcd(m, n);
    if !g.is_one() {
        return None;
    }
    // x = a + m·u·(b − a) mod mn, since m·u ≡ 1 (mod n)
    let x = a.add(&m.mul(&u).mul(&b.sub(a)));
    Some(x.divrem(&m.mul(n)).1)
}

/// `(g, u, v)` with `u·a + v·b = g`, `g` monic.
fn ext_gcd<F: Field>(a: &UPoly<F>, b: &UPoly<F>) -> (UPoly<F>, UPoly<F>, UPoly<F>) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut u0, mut u1) = (UPoly::one(), UPoly::zero());
    let (mut v0, mut v1) = (UPoly::zero(), UPoly::one());
    while !r1.is_zero() {
        let (q, r) = r0.divrem(&r1);
        r0 = std::mem::replace(&mut r1, r);
        let u = u0.sub(&q.mul(&u1));
        u0 = std::mem::replace(&mut u1, u);
        let v = v0.sub(&q.mul(&v1));
        v0 = std::mem::replace(&mut v1, v);
    }
    match r0.leading().cloned() {
        Some(l) if !l.is_one() => {
            let inv = l.recip();
            (r0.scale(&inv), u0.scale(&inv), v0.scale(&inv))
        }
        _ => (r0, u0, v0),
    }
}

fn eval_matrix_poly(p: &UPoly<GaussRational>, h: &GMatrix) -> GMatrix {
    let n = h.rows();
    let id = GMatrix::identity(n);
    p.coeffs()
        .iter()
        .rev()
        .fold(GMatrix::zeros(n, n), |acc, c| acc.mul(h).add(&id.map(|x| x * c)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::form::{CanonicalBlock, FormMatrix};
    use crate::scalar::Scalar;

    fn constant(blocks: &[CanonicalBlock]) -> GMatrix {
        FormMatrix::direct_sum(blocks).to_constant().unwrap()
    }

    #[test]
    fn char_poly_of_small_matrix() {
        let g = GMatrix::from_ints(&[&[2, 1], &[0, 3]]);
        let p = char_poly(&g);
        let expect = UPoly::from_coeffs(vec![
            GaussRational::from_int(6),
            GaussRational::from_int(-5),
            GaussRational::one(),
        ]);
        assert_eq!(p, expect);
    }

    #[test]
    fn sqrt_of_unipotent() {
        // (I + N)^{1/2} with N² = 0
        let g = GMatrix::from_ints(&[&[1, 1], &[0, 1]]);
        let p = hermite_sqrt(&[(GaussRational::one(), 2)], false).unwrap();
        let r = eval_matrix_poly(&p, &g);
        assert_eq!(r.mul(&r), g);
    }

    #[test]
    fn b2_inversion_witness() {
        for c in [Scalar::from_int(2), Scalar::from_int(3), Scalar::i()] {
            let m = constant(&[CanonicalBlock::b(2, c.clone())]);
            let n = constant(&[CanonicalBlock::b(2, c.inv().unwrap())]);
            let s = congruence_witness(&m, &n, 7).expect("witness");
            assert_eq!(s.transpose().mul(&m).mul(&s), n);
        }
    }

    #[test]
    fn recovers_random_congruence() {
        let n = constant(&[CanonicalBlock::a(3), CanonicalBlock::c(1)]);
        let p = GMatrix::from_ints(&[&[1, 1, 0, 0], &[0, 1, 2, 0], &[0, 0, 1, 1], &[1, 0, 0, 1]]);
        let m = p.transpose().mul(&n).mul(&p);
        let w = scaled_congruence_witness(&m, &n, 1).expect("witness");
        let lhs = w.s.transpose().mul(&m).mul(&w.s);
        assert_eq!(lhs, n.map(|x| x * &w.t));
    }

    #[test]
    fn skew_forms_use_symplectic_bases() {
        let n = constant(&[CanonicalBlock::f(2), CanonicalBlock::f(2), CanonicalBlock::f(2)]);
        let p = GMatrix::from_ints(&[
            &[1, 2, 0, 0, 1, 0],
            &[0, 1, 0, 3, 0, 0],
            &[1, 0, 1, 0, 0, 2],
            &[0, 0, 0, 1, 1, 0],
            &[2, 0, 0, 0, 1, 1],
            &[0, 1, 1, 0, 0, 1],
        ]);
        assert!(p.inverse().is_some());
        let m = p.transpose().mul(&n).mul(&p);
        let s = congruence_witness(&m, &n, 0).expect("witness");
        assert_eq!(s.transpose().mul(&m).mul(&s), n);
    }
}
