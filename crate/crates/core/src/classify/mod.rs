//! Regeneration of the classification tables: nilpotent algebras with
//! one-dimensional square in dimensions 4–8 (from block multisets), the
//! two-dimensional cyclic algebra, and the 3-dimensional solvable families.

mod distinct;
mod emit;
mod fixtures;
mod matching;
mod multiset;
mod table;

pub use distinct::{distinctness_report, DistinctnessReport, Identification};
pub use emit::{products_text, table_to_json, table_to_markdown};
pub use fixtures::{paper_block_table, paper_cyclic, paper_items, paper_solvable_families};
pub use matching::{
    compare_block_table, match_paper_table, permutation_isomorphism, BlockTableComparison, MatchPair,
    MatchReport, Relabeling,
};
pub use multiset::{block_multisets, kinds_for_size, partitions, BlockMultiset, Partition};
pub use table::{
    dim3_solvable_table, nilpotent_table, solvable_dim1_table, verify_table, ClassificationEntry,
    EntrySource,
};
