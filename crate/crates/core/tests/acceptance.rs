//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any
//! fails. Runs without the libtest harness so the lines print in order.

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use leibniz_lab::algebra::{algebras_to_json, parse_algebras};
use leibniz_lab::classify::{
    block_multisets, distinctness_report, match_paper_table, nilpotent_table, solvable_dim1_table,
    dim3_solvable_table,
};
use leibniz_lab::form::{
    algebra_from_blocks, canonical_decomposition, congruence_witness, dictionary, form_from_algebra,
    has_zero_summand, normalize_blocks, BlockKind, CanonicalBlock, FormMatrix,
};
use leibniz_lab::iso::{random_invertible, type2_ratio_invariant};
use leibniz_lab::{GaussRational, Scalar, StructureConstants};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn main() {
    let criteria: [(&str, Option<Duration>, fn() -> Check); 9] = [
        ("table counts", Some(Duration::from_secs(10)), counts),
        ("fixture matching", Some(Duration::from_secs(30)), fixture_matching),
        ("symbolic soundness", None, symbolic_soundness),
        ("cyclic algebra", None, cyclic),
        ("solvable families", None, solvable_families),
        ("ratio invariant", None, ratio_invariant),
        ("congruence engine", Some(Duration::from_secs(60)), congruence_engine),
        ("distinctness", None, distinctness),
        ("round trips", None, round_trips),
    ];
    let mut failures = 0;
    for (k, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut result = run();
        let took = start.elapsed();
        if let (Ok(detail), Some(limit)) = (&result, limit) {
            if took > *limit {
                result = Err(format!("{detail}; took {took:.1?}, limit {limit:?}"));
            }
        }
        let (tag, detail) = match &result {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failures += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {}: {tag} {name}: {detail} [{took:.2?}]", k + 1);
    }
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
}

fn ensure(ok: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(why())
    }
}

fn counts() -> Check {
    let expected = [(4, 6), (5, 14), (6, 23), (7, 47), (8, 74)];
    let mut got = Vec::new();
    for (dim, want) in expected {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let dim_arg = dim.to_string();
        let code = leibniz_lab::cli::run_with(
            ["leibniz-lab", "classify", "--dim", &dim_arg, "--format", "json"],
            &mut out,
            &mut err,
        );
        ensure(code == 0, || {
            format!("classify --dim {dim} exited {code}: {}", String::from_utf8_lossy(&err))
        })?;
        let list = parse_algebras(&String::from_utf8_lossy(&out))
            .map_err(|e| format!("dim {dim}: output does not reload: {e}"))?;
        ensure(list.len() == want, || format!("dim {dim}: {} entries, expected {want}", list.len()))?;
        got.push(list.len().to_string());
    }
    Ok(format!("{} entries for dims 4–8", got.join("/")))
}

fn fixture_matching() -> Check {
    let mut parts = Vec::new();
    for dim in 4..=7 {
        let report = match_paper_table(dim, &nilpotent_table(dim))
            .ok_or_else(|| format!("no fixture list for dim {dim}"))?;
        ensure(report.is_perfect(), || {
            format!(
                "dim {dim}: unmatched generated {:?}, unmatched listed {:?}",
                report.unmatched_generated, report.unmatched_paper
            )
        })?;
        parts.push(format!("{}↔{}", report.generated, report.paper));
    }
    Ok(format!("perfect matchings {}", parts.join(", ")))
}

fn symbolic_soundness() -> Check {
    let mut checked = 0;
    for dim in 4..=8 {
        for e in nilpotent_table(dim) {
            let a = &e.algebra;
            let (form, _) = form_from_algebra(a).map_err(|x| format!("{}: {x}", e.label()))?;
            let ok = a.verify_leibniz()
                && !a.is_lie()
                && a.is_nilpotent()
                && a.derived_algebra().dim() == 1
                && !has_zero_summand(&form);
            ensure(ok, || format!("dim {dim} entry {} fails", e.label()))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} entries verified in the parameters"))
}

fn cyclic() -> Check {
    let table = solvable_dim1_table();
    ensure(table.len() == 1, || format!("{} entries", table.len()))?;
    let a = &table[0].algebra;
    // [x1, x1] = x2, [x1, x2] = x2
    let expected = StructureConstants::from_products(
        2,
        [(0, 0, vec![(1, Scalar::one())]), (0, 1, vec![(1, Scalar::one())])],
    );
    ensure(a.same_products(&expected), || "products differ".into())?;
    let ok = a.verify_leibniz()
        && a.is_solvable()
        && !a.is_nilpotent()
        && !a.is_lie()
        && a.derived_algebra().dim() == 1;
    ensure(ok, || "structure checks fail".into())?;
    Ok("[x1,x1] = [x1,x2] = x2; solvable, not nilpotent, not Lie, dim A² = 1".into())
}

fn solvable_families() -> Check {
    let table = dim3_solvable_table();
    ensure(table.len() == 6, || format!("{} families", table.len()))?;
    let mut d3 = Vec::new();
    for (k, e) in table.iter().enumerate() {
        let a = &e.algebra;
        let ok = a.verify_leibniz()
            && a.is_solvable()
            && !a.is_nilpotent()
            && !a.is_lie()
            && a.derived_algebra().dim() == 2;
        ensure(ok, || format!("{} fails", e.label()))?;
        let dim3 = a.derived_term(3).dim();
        ensure(dim3 == usize::from(k == 5), || format!("{}: dim A^(3) = {dim3}", e.label()))?;
        d3.push(dim3.to_string());
    }
    Ok(format!("six families verified, dim A^(3) = {}", d3.join(",")))
}

fn ratio_invariant() -> Check {
    let grid: Vec<Scalar> = [(2, 1), (1, 2), (3, 1), (1, 3), (-2, 1), (-1, 2), (3, 2), (2, 3), (5, 1), (-1, 1), (4, 7), (7, 4)]
        .into_iter()
        .map(|(p, q)| Scalar::from_ratio(p, q))
        .collect();
    let family = &dim3_solvable_table()[1].algebra;
    let at = |v: &Scalar| -> Result<_, String> {
        let a = family
            .substitute(&BTreeMap::from([("alpha".to_string(), v.clone())]))
            .map_err(|e| e.to_string())?;
        type2_ratio_invariant(&a).map_err(|e| e.to_string())
    };
    let pairs: Vec<_> = grid.iter().map(at).collect::<Result<_, _>>()?;
    let mut checked = 0;
    for (i, a1) in grid.iter().enumerate() {
        for (j, a2) in grid.iter().enumerate() {
            let expect = a1 == a2 || (a1 * a2).is_one();
            let got = pairs[i] == pairs[j];
            ensure(got == expect, || format!("α = {a1}, {a2}: declared {got}, expected {expect}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} ordered pairs over 12 values of α"))
}

/// Constant values for the B parameters of a multiset, rotating through
/// special and generic values.
fn instantiate(blocks: &[CanonicalBlock], turn: usize) -> Vec<CanonicalBlock> {
    let pool = [
        Scalar::from_int(2),
        Scalar::from_int(3),
        Scalar::zero(),
        Scalar::i(),
        Scalar::from_int(-2),
        &Scalar::from_int(2) + &Scalar::i(),
    ];
    let mut next = turn;
    blocks
        .iter()
        .map(|b| {
            if b.kind() == BlockKind::B {
                next += 1;
                b.with_parameter(pool[next % pool.len()].clone())
            } else {
                b.clone()
            }
        })
        .collect()
}

fn congruence_engine() -> Check {
    const TRIALS: usize = 100;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut multisets = 0;
    for total in 1..=6 {
        for nonzero in 0..=total {
            let base = if nonzero == 0 { vec![Vec::new()] } else {
                block_multisets(nonzero).into_iter().map(|m| m.blocks).collect()
            };
            for (turn, blocks) in base.into_iter().enumerate() {
                let mut blocks = instantiate(&blocks, turn);
                blocks.extend((nonzero..total).map(|_| CanonicalBlock::a(1)));
                let form = FormMatrix::direct_sum(&blocks);
                let expected = normalize_blocks(&blocks);
                let own = canonical_decomposition(&form).map_err(|e| e.to_string())?;
                ensure(own == expected, || format!("{form} decomposes to {own:?}"))?;
                for _ in 0..TRIALS {
                    let s = random_invertible(total, &mut rng);
                    let moved = form.congruent_by(&s);
                    let got = canonical_decomposition(&moved).map_err(|e| e.to_string())?;
                    ensure(got == expected, || format!("{form} under {s}: {got:?}"))?;
                }
                multisets += 1;
            }
        }
    }

    let mut blocks = dictionary(8);
    for size in [2, 4, 6, 8] {
        for c in [Scalar::zero(), Scalar::from_int(2), Scalar::from_int(3), Scalar::from_int(-2), Scalar::i()] {
            blocks.push(CanonicalBlock::b(size, c));
        }
    }
    for b in &blocks {
        let got = canonical_decomposition(&FormMatrix::direct_sum(std::slice::from_ref(b)))
            .map_err(|e| e.to_string())?;
        ensure(got == vec![b.normalized()], || format!("{b} decomposes to {got:?}"))?;
    }

    for c in [Scalar::from_int(2), Scalar::from_int(3), Scalar::i()] {
        let m = FormMatrix::direct_sum(&[CanonicalBlock::b(2, c.clone())]);
        let n = FormMatrix::direct_sum(&[CanonicalBlock::b(2, c.inv().unwrap())]);
        let s = congruence_witness(&m.to_constant().unwrap(), &n.to_constant().unwrap(), 0)
            .ok_or_else(|| format!("no witness for B2({c})"))?;
        // re-check in the scalar arithmetic, independently of the search
        let s = FormMatrix::from_constant(&s);
        ensure(m.congruent_by(s.matrix()) == n, || format!("witness for B2({c}) fails"))?;
    }
    Ok(format!(
        "{multisets} multisets × {TRIALS} basis changes, {} single blocks, B2(c) ≅ B2(1/c) witnessed for c = 2, 3, i",
        blocks.len()
    ))
}

fn distinctness() -> Check {
    let mut listed = 0;
    for dim in 4..=6 {
        let table = nilpotent_table(dim);
        let report = distinctness_report(dim, &table, None);
        ensure(report.collisions.is_empty(), || format!("dim {dim}: collisions {:?}", report.collisions))?;
        ensure(report.errors.is_empty(), || format!("dim {dim}: errors {:?}", report.errors))?;
        ensure(report.broken_identifications.is_empty(), || {
            format!("dim {dim}: c ↔ 1/c fails for {:?}", report.broken_identifications)
        })?;
        // exactly one c ↔ 1/c identification per B parameter of each entry
        let expected: BTreeSet<(String, String)> = table
            .iter()
            .flat_map(|e| {
                let label = e.label();
                e.blocks()
                    .unwrap_or_default()
                    .iter()
                    .filter_map(|b| b.parameter().map(|p| p.to_string()))
                    .map(move |p| (label.clone(), p))
                    .collect::<Vec<_>>()
            })
            .collect();
        let got: BTreeSet<(String, String)> = report
            .identifications
            .iter()
            .map(|i| (i.label.clone(), i.param.clone()))
            .collect();
        ensure(got == expected && got.len() == report.identifications.len(), || {
            format!("dim {dim}: identifications {got:?}, expected {expected:?}")
        })?;
        listed += got.len();
    }
    Ok(format!("dims 4–6 separated; {listed} documented c ↔ 1/c identifications"))
}

fn round_trips() -> Check {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let mut files = 0;
    let mut forms = 0;
    for name in ["nilpotent_dim4", "nilpotent_dim5", "nilpotent_dim6", "nilpotent_dim7", "solvable_dim3", "cyclic_dim2"] {
        let text = std::fs::read_to_string(dir.join(format!("{name}.json"))).map_err(|e| e.to_string())?;
        let list = parse_algebras(&text).map_err(|e| format!("{name}: {e}"))?;
        let once = algebras_to_json(&list);
        ensure(once.trim_end() == text.trim_end(), || format!("{name}: serialization differs from the file"))?;
        let again = parse_algebras(&once).map_err(|e| format!("{name}: {e}"))?;
        ensure(algebras_to_json(&again) == once, || format!("{name}: not byte-stable"))?;
        for a in &list {
            let Ok((form, _)) = form_from_algebra(a) else { continue };
            let text = form.to_text();
            let back: FormMatrix = text.parse().map_err(|e| format!("{name}: {e}"))?;
            ensure(back.matrix() == form.matrix() && back.to_text() == text, || {
                format!("{name}: matrix text {text} does not round-trip")
            })?;
            forms += 1;
        }
        files += 1;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut pool = dictionary(5);
    pool.push(CanonicalBlock::b(2, Scalar::param("c")));
    pool.push(CanonicalBlock::b(4, Scalar::param("d")));
    pool.push(CanonicalBlock::b(2, Scalar::constant(GaussRational::from_parts((1, 2), (1, 1)))));
    for _ in 0..50 {
        let mut blocks = Vec::new();
        let mut size = 0;
        let len = rng.gen_range(1..=4);
        // at least one block that is not A1, so that A² ≠ 0
        while blocks.len() < len || blocks.iter().all(|b: &CanonicalBlock| b.kind() == BlockKind::A && b.size() == 1) {
            let b = pool[rng.gen_range(0..pool.len())].clone();
            if size + b.size() <= 8 {
                size += b.size();
                blocks.push(b);
            } else {
                (blocks, size) = (Vec::new(), 0);
            }
        }
        let (form, _) = form_from_algebra(&algebra_from_blocks(&blocks)).map_err(|e| e.to_string())?;
        ensure(form == FormMatrix::direct_sum(&blocks), || format!("{blocks:?} changes"))?;
    }
    Ok(format!("{files} fixture files byte-exact, {forms} form matrices, 50 random block lists"))
}
