//! Regenerates the nilpotent tables for dimensions 4–8, verifies every
//! entry, and matches dimensions 4–7 against the transcribed lists.
//!
//!     cargo run --release --example classify_tables

use std::time::Instant;

use leibniz_lab::classify::{
    block_multisets, match_paper_table, nilpotent_table, paper_block_table, verify_table,
};

fn main() {
    for n in 4..=8 {
        let t0 = Instant::now();
        let table = nilpotent_table(n);
        let failures = verify_table(&table);
        let listed = paper_block_table(n).unwrap_or_default();
        let generated: Vec<Vec<_>> = block_multisets(n - 1)
            .iter()
            .map(|m| m.blocks.iter().map(|b| (b.kind(), b.size())).collect())
            .collect();
        print!(
            "dim {n}: {} entries, {} failing, block table {}",
            table.len(),
            failures.len(),
            if generated == listed { "identical" } else { "DIFFERS" },
        );
        if let Some(report) = match_paper_table(n, &table) {
            print!(
                ", matching {} ({} pairs)",
                if report.is_perfect() { "perfect" } else { "IMPERFECT" },
                report.pairs.len()
            );
        }
        println!(" [{:.2?}]", t0.elapsed());
        for (label, why) in failures {
            println!("  {label}: {}", why.join(", "));
        }
    }
}
