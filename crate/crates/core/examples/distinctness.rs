//! Pairwise distinctness of the small nilpotent tables at fixed parameter
//! values, and the `c ↔ 1/c` identifications that survive.

use leibniz_lab::classify::{distinctness_report, nilpotent_table};

fn main() {
    for n in 4..=6 {
        let r = distinctness_report(n, &nilpotent_table(n), None);
        println!(
            "dim {n}: {} entries, {} collisions, {} errors",
            r.decompositions.len(),
            r.collisions.len(),
            r.errors.len()
        );
        for id in &r.identifications {
            println!("  {}: unchanged by {} ↦ 1/{1} ({})", id.label, id.param, id.blocks);
        }
        for (x, y) in &r.collisions {
            println!("  COLLISION {x} / {y}");
        }
    }
}
