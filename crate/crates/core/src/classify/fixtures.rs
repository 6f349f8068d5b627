//! Item lists transcribed once into the algebra file format; the ground
//! truth the generated tables are checked against.

use crate::algebra::{parse_algebras, StructureConstants};
use crate::form::BlockKind;

const DIM4: &str = include_str!("../../fixtures/nilpotent_dim4.json");
const DIM5: &str = include_str!("../../fixtures/nilpotent_dim5.json");
const DIM6: &str = include_str!("../../fixtures/nilpotent_dim6.json");
const DIM7: &str = include_str!("../../fixtures/nilpotent_dim7.json");
const SOLVABLE3: &str = include_str!("../../fixtures/solvable_dim3.json");
const CYCLIC2: &str = include_str!("../../fixtures/cyclic_dim2.json");
const BLOCK_TABLES: &str = include_str!("../../fixtures/block_tables.json");

fn load(text: &str) -> Vec<StructureConstants> {
    parse_algebras(text).expect("embedded fixture parses")
}

/// The written-out nilpotent lists, dimensions 4–7.
pub fn paper_items(n: usize) -> Option<Vec<StructureConstants>> {
    let text = match n {
        4 => DIM4,
        5 => DIM5,
        6 => DIM6,
        7 => DIM7,
        _ => return None,
    };
    Some(load(text))
}

pub fn paper_solvable_families() -> Vec<StructureConstants> {
    load(SOLVABLE3)
}

pub fn paper_cyclic() -> StructureConstants {
    load(CYCLIC2).remove(0)
}

/// Block multisets (kind, size) grouped by partition, as listed in the
/// classification arguments for dimensions 4–8. Includes skew multisets.
pub fn paper_block_table(n: usize) -> Option<Vec<Vec<(BlockKind, usize)>>> {
    let all: std::collections::BTreeMap<String, Vec<Vec<String>>> =
        serde_json::from_str(BLOCK_TABLES).expect("embedded table parses");
    let rows = all.get(&n.to_string())?;
    Some(
        rows.iter()
            .map(|row| {
                row.iter()
                    .map(|name| {
                        let kind = BlockKind::ALL
                            .into_iter()
                            .find(|k| name.starts_with(k.letter()))
                            .expect("known kind");
                        (kind, name[1..].parse().expect("block size"))
                    })
                    .collect()
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::algebras_to_json;

    #[test]
    fn counts() {
        let counts: Vec<usize> = (4..=7).map(|n| paper_items(n).unwrap().len()).collect();
        assert_eq!(counts, [6, 14, 23, 47]);
        assert_eq!(paper_solvable_families().len(), 6);
        assert_eq!(paper_block_table(8).unwrap().len(), 74);
        assert!(paper_items(8).is_none());
    }

    #[test]
    fn fixtures_round_trip_byte_exactly() {
        for text in [DIM4, DIM5, DIM6, DIM7, SOLVABLE3, CYCLIC2] {
            assert_eq!(algebras_to_json(&load(text)), text);
        }
    }

    #[test]
    fn fixtures_are_leibniz() {
        for n in 4..=7 {
            for a in paper_items(n).unwrap() {
                assert!(a.verify_leibniz(), "{:?}", a.label());
            }
        }
    }
}
