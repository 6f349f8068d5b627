//! Pairwise distinctness of table entries at constant parameter values.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::table::ClassificationEntry;
use crate::form::{canonical_decomposition, form_from_algebra, format_blocks, CanonicalBlock};
use crate::scalar::Scalar;

/// An entry whose family is invariant under `param ↦ 1/param`: the
/// instances at `value` and `1/value` decompose identically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Identification {
    pub label: String,
    pub param: String,
    pub value: Scalar,
    pub blocks: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct DistinctnessReport {
    pub dim: usize,
    pub values: BTreeMap<String, Scalar>,
    /// Canonical decomposition of every entry at `values`.
    pub decompositions: Vec<(String, String)>,
    /// Pairs of distinct entries with the same decomposition.
    pub collisions: Vec<(String, String)>,
    /// The `c ↔ 1/c` identifications, each confirmed by decomposition.
    pub identifications: Vec<Identification>,
    /// Entries whose `c ↔ 1/c` instances unexpectedly differ.
    pub broken_identifications: Vec<Identification>,
    /// Entries that could not be instantiated or decomposed.
    pub errors: Vec<(String, String)>,
}

impl DistinctnessReport {
    pub fn is_clean(&self) -> bool {
        self.collisions.is_empty() && self.broken_identifications.is_empty() && self.errors.is_empty()
    }
}

/// Default instantiation: `c = 2, c1 = 2, c2 = 3, c3 = 5`.
pub fn default_values() -> BTreeMap<String, Scalar> {
    [("c", 2), ("c1", 2), ("c2", 3), ("c3", 5)]
        .into_iter()
        .map(|(k, v)| (k.to_string(), Scalar::from_int(v)))
        .collect()
}

fn decompose_at(
    e: &ClassificationEntry,
    values: &BTreeMap<String, Scalar>,
) -> Result<Vec<CanonicalBlock>, String> {
    let a = e.algebra.substitute(values).map_err(|x| x.to_string())?;
    let (form, _) = form_from_algebra(&a).map_err(|x| x.to_string())?;
    canonical_decomposition(&form).map_err(|x| x.to_string())
}

/// Instantiates every entry at `values` (defaults when `None`) and compares
/// canonical decompositions pairwise. For each parameter, also confirms that
/// replacing its value by the reciprocal leaves the decomposition unchanged.
pub fn distinctness_report(
    dim: usize,
    entries: &[ClassificationEntry],
    values: Option<BTreeMap<String, Scalar>>,
) -> DistinctnessReport {
    let values = values.unwrap_or_else(default_values);
    struct Row {
        label: String,
        decomposition: Result<Vec<CanonicalBlock>, String>,
        identifications: Vec<(Identification, bool)>,
    }
    let rows: Vec<Row> = entries
        .par_iter()
        .map(|e| {
            let decomposition = decompose_at(e, &values);
            let mut identifications = Vec::new();
            if let Ok(base) = &decomposition {
                for p in e.algebra.params() {
                    let Some(v) = values.get(&p) else { continue };
                    let Ok(inv) = v.inv() else { continue };
                    let mut flipped = values.clone();
                    flipped.insert(p.clone(), inv);
                    let same = decompose_at(e, &flipped).as_ref() == Ok(base);
                    identifications.push((
                        Identification {
                            label: e.label(),
                            param: p,
                            value: v.clone(),
                            blocks: format_blocks(base),
                        },
                        same,
                    ));
                }
            }
            Row {
                label: e.label(),
                decomposition,
                identifications,
            }
        })
        .collect();

    let mut report = DistinctnessReport {
        dim,
        values,
        decompositions: Vec::new(),
        collisions: Vec::new(),
        identifications: Vec::new(),
        broken_identifications: Vec::new(),
        errors: Vec::new(),
    };
    for (i, r) in rows.iter().enumerate() {
        match &r.decomposition {
            Ok(d) => {
                report.decompositions.push((r.label.clone(), format_blocks(d)));
                for other in &rows[..i] {
                    if other.decomposition.as_ref() == Ok(d) {
                        report.collisions.push((other.label.clone(), r.label.clone()));
                    }
                }
            }
            Err(msg) => report.errors.push((r.label.clone(), msg.clone())),
        }
        for (ident, same) in &r.identifications {
            if *same {
                report.identifications.push(ident.clone());
            } else {
                report.broken_identifications.push(ident.clone());
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::nilpotent_table;

    #[test]
    fn dim4_is_clean() {
        let r = distinctness_report(4, &nilpotent_table(4), None);
        assert!(r.is_clean(), "{r:?}");
        assert_eq!(r.identifications.len(), 1);
        assert_eq!(r.identifications[0].label, "B2(c) + C1");
    }

    #[test]
    fn reciprocal_values_are_still_clean() {
        let mut v = default_values();
        v.insert("c".into(), Scalar::from_ratio(1, 2));
        assert!(distinctness_report(5, &nilpotent_table(5), Some(v)).is_clean());
    }

    #[test]
    fn relabeled_copy_collides() {
        let mut t = nilpotent_table(4);
        let mut copy = t[2].clone();
        copy.algebra = copy.algebra.permute_basis(&[2, 1, 0, 3]).with_label("copy");
        t.push(copy);
        let r = distinctness_report(4, &t, None);
        assert_eq!(r.collisions, [(t[2].label(), "copy".to_string())]);
    }
}
