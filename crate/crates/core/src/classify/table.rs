use rayon::prelude::*;
use serde::Serialize;

use super::fixtures::paper_solvable_families;
use super::multiset::block_multisets;
use crate::algebra::StructureConstants;
use crate::form::{algebra_from_blocks, form_from_algebra, has_zero_summand, CanonicalBlock};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EntrySource {
    /// The direct sum of these blocks is the form on a complement of `A²`.
    Blocks(Vec<CanonicalBlock>),
    /// A named family, e.g. `solvable3-family2`.
    Family(String),
}

#[derive(Clone, Debug)]
pub struct ClassificationEntry {
    pub algebra: StructureConstants,
    pub source: EntrySource,
}

impl ClassificationEntry {
    pub fn label(&self) -> String {
        self.algebra.label().unwrap_or_default().to_string()
    }

    pub fn blocks(&self) -> Option<&[CanonicalBlock]> {
        match &self.source {
            EntrySource::Blocks(b) => Some(b),
            EntrySource::Family(_) => None,
        }
    }

    /// Names of the invariants this entry violates; empty when all hold.
    /// Computations are generic in the parameters.
    pub fn verify(&self) -> Vec<String> {
        let a = &self.algebra;
        let mut failed = Vec::new();
        let mut check = |ok: bool, what: &str| {
            if !ok {
                failed.push(what.to_string());
            }
        };
        check(a.verify_leibniz(), "Leibniz identity");
        check(!a.is_lie(), "not Lie");
        match &self.source {
            EntrySource::Blocks(_) => {
                check(a.is_nilpotent(), "nilpotent");
                check(a.derived_algebra().dim() == 1, "dim A² = 1");
                check(a.lower_central_term(3).is_zero(), "A³ = 0");
                match form_from_algebra(a) {
                    Ok((form, _)) => check(!has_zero_summand(&form), "no A1 summand"),
                    Err(_) => check(false, "form extraction"),
                }
            }
            EntrySource::Family(_) => {
                check(a.is_solvable(), "solvable");
                check(!a.is_nilpotent(), "not nilpotent");
            }
        }
        failed
    }
}

/// `(label, failures)` for every entry with a failure, checked in parallel;
/// the order follows the table.
pub fn verify_table(entries: &[ClassificationEntry]) -> Vec<(String, Vec<String>)> {
    entries
        .par_iter()
        .map(|e| (e.label(), e.verify()))
        .filter(|(_, f)| !f.is_empty())
        .collect()
}

/// Non-Lie nilpotent algebras of dimension `n` with `dim A² = 1` that do not
/// split off a one-dimensional ideal, one per block multiset of size `n − 1`.
pub fn nilpotent_table(n: usize) -> Vec<ClassificationEntry> {
    if n < 2 {
        return Vec::new();
    }
    block_multisets(n - 1)
        .into_iter()
        .filter(|m| !m.lie_only)
        .map(|m| {
            let algebra = algebra_from_blocks(&m.blocks).with_label(m.name());
            ClassificationEntry {
                algebra,
                source: EntrySource::Blocks(m.blocks),
            }
        })
        .collect()
}

/// The non-nilpotent solvable case with `dim A² = 1`: the two-dimensional
/// cyclic algebra `[x1, x1] = x2, [x1, x2] = x2`.
pub fn solvable_dim1_table() -> Vec<ClassificationEntry> {
    let one = || vec![(1, Scalar::one())];
    let algebra = StructureConstants::from_products(2, [(0, 0, one()), (0, 1, one())])
        .with_label("cyclic2");
    vec![ClassificationEntry {
        algebra,
        source: EntrySource::Family("cyclic2".into()),
    }]
}

/// The six 3-dimensional solvable families with `dim A² = 2`, on the basis
/// `x, y, z`; families 2 and 5 carry `α ≠ 0`.
pub fn dim3_solvable_table() -> Vec<ClassificationEntry> {
    paper_solvable_families()
        .into_iter()
        .map(|algebra| {
            let tag = algebra.label().unwrap_or_default().to_string();
            ClassificationEntry {
                algebra,
                source: EntrySource::Family(tag),
            }
        })
        .collect()
}
