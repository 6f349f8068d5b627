//! Matching generated entries against transcribed items, up to a
//! permutation of the basis and a renaming of the parameters.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::distinct::distinctness_report;
use super::fixtures::{paper_block_table, paper_items};
use super::multiset::block_multisets;
use super::table::ClassificationEntry;
use crate::algebra::StructureConstants;
use crate::form::BlockKind;

/// How a generated algebra becomes a transcribed one: new `x_{perm[i]}` is
/// old `x_i` (0-based), and parameters are renamed by `params`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Relabeling {
    pub permutation: Vec<usize>,
    pub params: BTreeMap<String, String>,
}

fn permutations_of(items: &[String]) -> Vec<Vec<String>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut tail in permutations_of(&rest) {
            tail.insert(0, x.clone());
            out.push(tail);
        }
    }
    out
}

/// Per basis vector: coefficients it produces on the left, on the right,
/// and receives as a result. Preserved by any basis permutation.
fn signatures(a: &StructureConstants) -> Vec<[Vec<String>; 3]> {
    let n = a.dim();
    let mut sig = vec![[Vec::new(), Vec::new(), Vec::new()]; n];
    for (i, j, v) in a.nonzero_products() {
        for (k, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let t = c.to_text();
            let diag = if i == j { "d:" } else { "" };
            sig[i][0].push(format!("{diag}{t}"));
            sig[j][1].push(format!("{diag}{t}"));
            sig[k][2].push(t);
        }
    }
    for s in &mut sig {
        for part in s.iter_mut() {
            part.sort();
        }
    }
    sig
}

fn search_permutation(a: &StructureConstants, b: &StructureConstants) -> Option<Vec<usize>> {
    let n = a.dim();
    let (sa, sb) = (signatures(a), signatures(b));
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];

    // Checks every structure constant whose three indices are assigned and
    // the largest of which is `i`.
    let consistent = |perm: &[usize], i: usize| {
        for p in 0..=i {
            for q in 0..=i {
                for k in 0..=i {
                    if p.max(q).max(k) != i {
                        continue;
                    }
                    if a.entry(p, q, k) != b.entry(perm[p], perm[q], perm[k]) {
                        return false;
                    }
                }
            }
        }
        true
    };

    fn go(
        i: usize,
        n: usize,
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
        sa: &[[Vec<String>; 3]],
        sb: &[[Vec<String>; 3]],
        consistent: &dyn Fn(&[usize], usize) -> bool,
    ) -> bool {
        if i == n {
            return true;
        }
        for t in 0..n {
            if used[t] || sa[i] != sb[t] {
                continue;
            }
            perm[i] = t;
            used[t] = true;
            if consistent(perm, i) && go(i + 1, n, perm, used, sa, sb, consistent) {
                return true;
            }
            used[t] = false;
        }
        perm[i] = usize::MAX;
        false
    }

    let mut profile_a: Vec<_> = sa.clone();
    let mut profile_b: Vec<_> = sb.clone();
    profile_a.sort();
    profile_b.sort();
    if profile_a != profile_b {
        return None;
    }
    go(0, n, &mut perm, &mut used, &sa, &sb, &consistent).then_some(perm)
}

/// A relabeling turning `a` into `b` exactly, if one exists. Constraints
/// are compared after renaming.
pub fn permutation_isomorphism(a: &StructureConstants, b: &StructureConstants) -> Option<Relabeling> {
    if a.dim() != b.dim() {
        return None;
    }
    let pa: Vec<String> = a.params().into_iter().collect();
    let pb: Vec<String> = b.params().into_iter().collect();
    if pa.len() != pb.len() {
        return None;
    }
    for target in permutations_of(&pb) {
        let params: BTreeMap<String, String> = pa.iter().cloned().zip(target).collect();
        let renamed = a.rename_params(&params);
        if renamed.constraints() != b.constraints() {
            continue;
        }
        if let Some(permutation) = search_permutation(&renamed, b) {
            debug_assert!(renamed.permute_basis(&permutation).same_products(b));
            return Some(Relabeling {
                permutation,
                params,
            });
        }
    }
    None
}

#[derive(Clone, Debug, Serialize)]
pub struct MatchPair {
    pub generated: String,
    pub paper: String,
    pub relabeling: Relabeling,
}

#[derive(Clone, Debug, Serialize)]
pub struct MatchReport {
    pub dim: usize,
    pub generated: usize,
    pub paper: usize,
    pub pairs: Vec<MatchPair>,
    pub unmatched_generated: Vec<String>,
    pub unmatched_paper: Vec<String>,
    /// Matched items whose stated parameter range lists isomorphic algebras
    /// twice (`c` and `1/c`), confirmed by canonical decomposition.
    pub notes: Vec<String>,
}

impl MatchReport {
    pub fn is_perfect(&self) -> bool {
        self.generated == self.paper
            && self.pairs.len() == self.generated
            && self.unmatched_generated.is_empty()
            && self.unmatched_paper.is_empty()
    }
}

/// Matches `entries` one-to-one against the transcribed items of dimension
/// `n` (4–7). `None` when no items are transcribed for `n`.
pub fn match_paper_table(n: usize, entries: &[ClassificationEntry]) -> Option<MatchReport> {
    let items = paper_items(n)?;
    // candidate relabelings for every (generated, item) pair
    let candidates: Vec<Vec<(usize, Relabeling)>> = entries
        .par_iter()
        .map(|e| {
            items
                .iter()
                .enumerate()
                .filter_map(|(j, b)| permutation_isomorphism(&e.algebra, b).map(|r| (j, r)))
                .collect()
        })
        .collect();

    // bipartite matching by augmenting paths
    let mut owner: Vec<Option<usize>> = vec![None; items.len()];
    fn augment(
        g: usize,
        cand: &[Vec<(usize, Relabeling)>],
        owner: &mut Vec<Option<usize>>,
        seen: &mut Vec<bool>,
    ) -> bool {
        for (j, _) in &cand[g] {
            if seen[*j] {
                continue;
            }
            seen[*j] = true;
            if owner[*j].is_none() || augment(owner[*j].unwrap(), cand, owner, seen) {
                owner[*j] = Some(g);
                return true;
            }
        }
        false
    }
    for g in 0..entries.len() {
        augment(g, &candidates, &mut owner, &mut vec![false; items.len()]);
    }

    let mut matched_of = vec![None; entries.len()];
    for (j, o) in owner.iter().enumerate() {
        if let Some(g) = o {
            matched_of[*g] = Some(j);
        }
    }
    let label = |a: &StructureConstants| a.label().unwrap_or_default().to_string();
    let mut pairs = Vec::new();
    let mut unmatched_generated = Vec::new();
    for (g, e) in entries.iter().enumerate() {
        match matched_of[g] {
            Some(j) => {
                let relabeling = candidates[g]
                    .iter()
                    .find(|(k, _)| *k == j)
                    .map(|(_, r)| r.clone())
                    .unwrap();
                pairs.push(MatchPair {
                    generated: e.label(),
                    paper: label(&items[j]),
                    relabeling,
                });
            }
            None => unmatched_generated.push(e.label()),
        }
    }
    let unmatched_paper = owner
        .iter()
        .zip(&items)
        .filter(|(o, _)| o.is_none())
        .map(|(_, b)| label(b))
        .collect();
    let notes = double_count_notes(n, entries, &pairs, &items);
    Some(MatchReport {
        dim: n,
        generated: entries.len(),
        paper: items.len(),
        pairs,
        unmatched_generated,
        unmatched_paper,
        notes,
    })
}

/// Generated block multisets (including skew ones) against the transcribed
/// block tables, compared by kind and size only.
#[derive(Clone, Debug, Serialize)]
pub struct BlockTableComparison {
    pub dim: usize,
    pub listed: usize,
    pub generated: usize,
    /// Listed but not generated.
    pub missing: Vec<String>,
    /// Generated but not listed.
    pub extra: Vec<String>,
}

impl BlockTableComparison {
    pub fn is_identical(&self) -> bool {
        self.listed == self.generated && self.missing.is_empty() && self.extra.is_empty()
    }
}

/// `None` when no block table is transcribed for `n` (4–8).
pub fn compare_block_table(n: usize) -> Option<BlockTableComparison> {
    let name = |row: &[(BlockKind, usize)]| {
        row.iter()
            .map(|(k, s)| format!("{}{s}", k.letter()))
            .collect::<Vec<_>>()
            .join(" + ")
    };
    let mut listed: Vec<String> = paper_block_table(n)?.iter().map(|r| name(r)).collect();
    let mut generated: Vec<String> = block_multisets(n - 1)
        .iter()
        .map(|m| {
            let row: Vec<_> = m.blocks.iter().map(|b| (b.kind(), b.size())).collect();
            name(&row)
        })
        .collect();
    let (nl, ng) = (listed.len(), generated.len());
    listed.sort();
    generated.sort();
    let mut missing = Vec::new();
    let mut extra = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < listed.len() || j < generated.len() {
        match (listed.get(i), generated.get(j)) {
            (Some(x), Some(y)) if x == y => {
                i += 1;
                j += 1;
            }
            (Some(x), Some(y)) if x < y => {
                missing.push(x.clone());
                i += 1;
            }
            (Some(x), None) => {
                missing.push(x.clone());
                i += 1;
            }
            (_, Some(y)) => {
                extra.push(y.clone());
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    Some(BlockTableComparison {
        dim: n,
        listed: nl,
        generated: ng,
        missing,
        extra,
    })
}

fn double_count_notes(
    n: usize,
    entries: &[ClassificationEntry],
    pairs: &[MatchPair],
    items: &[StructureConstants],
) -> Vec<String> {
    let report = distinctness_report(n, entries, None);
    let mut notes = Vec::new();
    for ident in &report.identifications {
        let Some(pair) = pairs.iter().find(|p| p.generated == ident.label) else {
            continue;
        };
        let param = pair
            .relabeling
            .params
            .get(&ident.param)
            .cloned()
            .unwrap_or_else(|| ident.param.clone());
        let item = items.iter().find(|b| b.label() == Some(pair.paper.as_str()));
        let excluded: Vec<String> = item
            .into_iter()
            .flat_map(|b| b.constraints())
            .filter(|c| c.param == param)
            .flat_map(|c| c.excluded.iter().map(|x| x.to_text()))
            .collect();
        let range = if excluded.is_empty() {
            String::new()
        } else {
            format!(" over {param} ∉ {{{}}}", excluded.join(", "))
        };
        notes.push(format!(
            "{}: {param} and 1/{param} give isomorphic algebras ({} at {param} = {}); \
             the stated range{range} lists each class twice",
            pair.paper,
            ident.blocks,
            ident.value.to_text()
        ));
    }
    notes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::nilpotent_table;

    #[test]
    fn dim4_matches_perfectly() {
        let r = match_paper_table(4, &nilpotent_table(4)).unwrap();
        assert!(r.is_perfect(), "{r:?}");
        assert_eq!(r.pairs[0].paper, "dim4-item1");
        // B2(c) + C1 is listed for every c ≠ ±1
        assert_eq!(r.notes.len(), 1, "{:?}", r.notes);
        assert!(r.notes[0].starts_with("dim4-item5"), "{:?}", r.notes);
    }

    #[test]
    fn block_tables_identical() {
        for n in 4..=8 {
            let c = compare_block_table(n).unwrap();
            assert!(c.is_identical(), "{c:?}");
        }
        assert!(compare_block_table(9).is_none());
    }

    #[test]
    fn permuted_fixture_still_matches() {
        let items = paper_items(5).unwrap();
        let b = items[6].permute_basis(&[1, 0, 3, 2, 4]);
        let r = permutation_isomorphism(&items[6], &b).unwrap();
        assert!(items[6].permute_basis(&r.permutation).same_products(&b));
    }

    #[test]
    fn parameter_renaming() {
        let items = paper_items(5).unwrap();
        // B2(c1) + B2(c2)
        let a = &items[9];
        let swapped = a.rename_params(&BTreeMap::from([
            ("c1".to_string(), "c2".to_string()),
            ("c2".to_string(), "c1".to_string()),
        ]));
        assert!(permutation_isomorphism(a, &swapped).is_some());
        let other = a.rename_params(&BTreeMap::from([("c1".to_string(), "d".to_string())]));
        assert!(permutation_isomorphism(a, &other).is_some());
        assert!(permutation_isomorphism(a, &items[8]).is_none());
    }
}
