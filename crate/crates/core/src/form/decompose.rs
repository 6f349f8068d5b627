//! Canonical decomposition by matching pencil data against a dictionary of
//! block invariants. The dictionary is computed from the block matrices
//! themselves, never transcribed.

use std::collections::BTreeMap;
use std::sync::{OnceLock, RwLock};

use super::pencil::{constant_invariants, DivisorBase, ElementaryDivisor, PencilInvariants};
use super::{BlockKind, CanonicalBlock, FormError, FormMatrix};
use crate::scalar::{GaussRational, Scalar};

/// One indecomposable piece of Kronecker data. The invariants of a direct
/// sum are the multiset union of the summands' atoms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Atom {
    Left(usize),
    Right(usize),
    Finite(DivisorBase, usize),
    Infinite(usize),
}

fn atoms(p: &PencilInvariants) -> Vec<Atom> {
    let mut v: Vec<Atom> = p
        .left_indices
        .iter()
        .map(|&k| Atom::Left(k))
        .chain(p.right_indices.iter().map(|&k| Atom::Right(k)))
        .chain(
            p.finite_divisors
                .iter()
                .map(|ElementaryDivisor { base, exponent }| Atom::Finite(base.clone(), *exponent)),
        )
        .chain(p.infinite_divisors.iter().map(|&e| Atom::Infinite(e)))
        .collect();
    v.sort();
    v
}

#[derive(Clone)]
struct Entry {
    block: CanonicalBlock,
    atoms: Vec<Atom>,
    rank: usize,
}

fn cache() -> &'static RwLock<BTreeMap<CanonicalBlock, Entry>> {
    static CACHE: OnceLock<RwLock<BTreeMap<CanonicalBlock, Entry>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Pencil invariants of a constant block, memoized.
pub fn block_invariants(block: &CanonicalBlock) -> PencilInvariants {
    let m = block
        .matrix()
        .to_constant()
        .expect("dictionary blocks have constant parameters");
    constant_invariants(&m)
}

fn entry(block: &CanonicalBlock) -> Entry {
    if let Some(e) = cache().read().unwrap().get(block) {
        return e.clone();
    }
    let inv = block_invariants(block);
    let e = Entry {
        block: block.clone(),
        atoms: atoms(&inv),
        rank: inv.rank,
    };
    cache().write().unwrap().insert(block.clone(), e.clone());
    e
}

/// Every parameter-free block of size at most `max_size`.
pub fn dictionary(max_size: usize) -> Vec<CanonicalBlock> {
    let mut out = Vec::new();
    for kind in BlockKind::ALL {
        if kind == BlockKind::B {
            continue;
        }
        for size in 1..=max_size {
            if kind.allows_size(size) {
                out.push(CanonicalBlock::new(kind, size, None).unwrap());
            }
        }
    }
    out
}

/// B blocks whose data could contain `atom`: a finite root `r ≠ ±1` points to
/// `B(−r)` (equivalently `B(−1/r)`), and the root `0` or an infinite
/// divisor points to `B(0)`.
fn b_candidates(atom: &Atom) -> Vec<CanonicalBlock> {
    let make = |e: usize, c: GaussRational| {
        CanonicalBlock::new(BlockKind::B, 2 * e, Some(Scalar::constant(c)))
            .ok()
            .map(|b| b.normalized())
    };
    match atom {
        Atom::Finite(DivisorBase::Root(r), e) => make(*e, -r).into_iter().collect(),
        Atom::Infinite(e) => make(*e, GaussRational::zero()).into_iter().collect(),
        _ => Vec::new(),
    }
}

/// Removes `sub` from the sorted multiset `set`, if contained.
fn remove_all(set: &[Atom], sub: &[Atom]) -> Option<Vec<Atom>> {
    let mut rest = set.to_vec();
    for a in sub {
        let pos = rest.iter().position(|x| x == a)?;
        rest.remove(pos);
    }
    Some(rest)
}

fn search(remaining: &[Atom], dict: &[Entry], chosen: &mut Vec<Entry>) -> bool {
    let Some(first) = remaining.first() else {
        return true;
    };
    let mut candidates: Vec<Entry> = dict
        .iter()
        .filter(|e| e.atoms.contains(first))
        .cloned()
        .collect();
    candidates.extend(b_candidates(first).iter().map(entry));
    for cand in candidates {
        if let Some(rest) = remove_all(remaining, &cand.atoms) {
            chosen.push(cand);
            if search(&rest, dict, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

/// The block multiset whose direct sum is congruent to `m`, with B
/// parameters normalized, sorted.
pub fn canonical_decomposition(m: &FormMatrix) -> Result<Vec<CanonicalBlock>, FormError> {
    let g = m.to_constant().ok_or(FormError::ParameterNotSupported)?;
    let inv = constant_invariants(&g);
    decompose_invariants(&inv)
}

pub fn decompose_invariants(inv: &PencilInvariants) -> Result<Vec<CanonicalBlock>, FormError> {
    let dict: Vec<Entry> = dictionary(inv.size).iter().map(entry).collect();
    let target = atoms(inv);
    let mut chosen = Vec::new();
    let miss = || FormError::DictionaryMiss(inv.to_string());
    if !search(&target, &dict, &mut chosen) {
        return Err(miss());
    }
    let size: usize = chosen.iter().map(|e| e.block.size()).sum();
    let rank: usize = chosen.iter().map(|e| e.rank).sum();
    if size != inv.size || rank != inv.rank {
        return Err(miss());
    }
    let mut blocks: Vec<CanonicalBlock> = chosen.into_iter().map(|e| e.block).collect();
    blocks.sort();
    Ok(blocks)
}

/// Normalizes B parameters and sorts, the form [`canonical_decomposition`]
/// returns.
pub fn normalize_blocks(blocks: &[CanonicalBlock]) -> Vec<CanonicalBlock> {
    let mut v: Vec<CanonicalBlock> = blocks.iter().map(CanonicalBlock::normalized).collect();
    v.sort();
    v
}

/// Congruence test via pencil invariants; matrices of different sizes are
/// never congruent.
pub fn is_congruent(m: &FormMatrix, n: &FormMatrix) -> Result<bool, FormError> {
    let a = m.to_constant().ok_or(FormError::ParameterNotSupported)?;
    let b = n.to_constant().ok_or(FormError::ParameterNotSupported)?;
    if a.rows() != b.rows() {
        return Ok(false);
    }
    Ok(constant_invariants(&a) == constant_invariants(&b))
}

/// Whether some nonzero `v` has `Mv = 0` and `Mᵀv = 0`, i.e. the form has an
/// `A1` summand. Works generically in the parameters.
pub fn has_zero_summand(m: &FormMatrix) -> bool {
    let stacked = m.matrix().vstack(&m.matrix().transpose());
    !stacked.nullspace().is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;

    fn decomp(blocks: &[CanonicalBlock]) -> Vec<CanonicalBlock> {
        canonical_decomposition(&FormMatrix::direct_sum(blocks)).unwrap()
    }

    #[test]
    fn each_block_decomposes_to_itself() {
        for b in dictionary(6) {
            assert_eq!(decomp(&[b.clone()]), vec![b.clone()], "block {b}");
        }
        for c in [0, 2, 3, -2] {
            for k in 1..=3 {
                let b = CanonicalBlock::b(2 * k, Scalar::from_int(c));
                assert_eq!(decomp(&[b.clone()]), vec![b.normalized()], "block {b}");
            }
        }
    }

    #[test]
    fn zero_matrix_is_a1s() {
        let d = canonical_decomposition(&FormMatrix::zero(3)).unwrap();
        assert_eq!(super::super::format_blocks(&d), "A1 A1 A1");
    }

    #[test]
    fn congruent_copy_keeps_decomposition() {
        let n = FormMatrix::direct_sum(&[CanonicalBlock::a(3), CanonicalBlock::c(1)]);
        let s = Matrix::from_ints(&[&[1, 2, 0, 1], &[0, 1, 3, 0], &[1, 0, 1, 1], &[0, 0, 2, 1]]);
        assert!(s.inverse().is_some());
        let m = n.congruent_by(&s);
        assert_eq!(
            canonical_decomposition(&m).unwrap(),
            vec![CanonicalBlock::a(3), CanonicalBlock::c(1)]
        );
        assert!(is_congruent(&m, &n).unwrap());
    }

    #[test]
    fn congruence_examples() {
        let b2 = |c: Scalar| FormMatrix::direct_sum(&[CanonicalBlock::b(2, c)]);
        assert!(is_congruent(&b2(Scalar::from_int(2)), &b2(Scalar::from_ratio(1, 2))).unwrap());
        assert!(!is_congruent(&b2(Scalar::from_int(2)), &b2(Scalar::from_int(3))).unwrap());
        let e2 = FormMatrix::direct_sum(&[CanonicalBlock::e(2)]);
        let f2 = FormMatrix::direct_sum(&[CanonicalBlock::f(2)]);
        assert!(!is_congruent(&e2, &f2).unwrap());
        assert!(!is_congruent(&e2, &FormMatrix::zero(3)).unwrap());
    }

    #[test]
    fn zero_summand_examples() {
        let f2_0 = FormMatrix::direct_sum(&[CanonicalBlock::f(2), CanonicalBlock::a(1)]);
        assert!(has_zero_summand(&f2_0));
        assert!(!has_zero_summand(&FormMatrix::direct_sum(&[CanonicalBlock::a(3)])));
        let bc = FormMatrix::direct_sum(&[CanonicalBlock::b(2, Scalar::param("c"))]);
        assert!(!has_zero_summand(&bc));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn block() -> impl Strategy<Value = CanonicalBlock> {
            let mut pool = dictionary(4);
            for c in [0, 2, 3, -2] {
                pool.push(CanonicalBlock::b(2, Scalar::from_int(c)));
                pool.push(CanonicalBlock::b(4, Scalar::from_int(c)));
            }
            pool.push(CanonicalBlock::b(2, Scalar::i()));
            proptest::sample::select(pool)
        }

        fn blocks() -> impl Strategy<Value = Vec<CanonicalBlock>> {
            proptest::collection::vec(block(), 1..4).prop_filter("size at most 6", |v| {
                v.iter().map(CanonicalBlock::size).sum::<usize>() <= 6
            })
        }

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

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn congruence_preserves_decomposition(
                (list, s) in blocks().prop_flat_map(|l| {
                    let n = l.iter().map(CanonicalBlock::size).sum();
                    (Just(l), invertible(n))
                })
            ) {
                let n = FormMatrix::direct_sum(&list);
                let m = n.congruent_by(&s);
                prop_assert_eq!(canonical_decomposition(&m).unwrap(), normalize_blocks(&list));
                let inv = constant_invariants(&m.to_constant().unwrap());
                prop_assert!(inv.is_consistent());
                prop_assert!(is_congruent(&m, &n).unwrap());
            }
        }
    }
}
