//! Random basis changes on every dimension-5 table entry, with the free
//! parameters fixed. Each change must preserve the invariants and be
//! recognized as an isomorphism.
//!
//!     cargo run --release --example basis_fuzz -- 50 7

use std::collections::BTreeMap;

use leibniz_lab::classify::nilpotent_table;
use leibniz_lab::iso::random_basis_fuzz;
use leibniz_lab::Scalar;

fn main() {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<u64>().ok());
    let trials = args.next().flatten().unwrap_or(20) as usize;
    let seed = args.next().flatten().unwrap_or(0);
    let values: BTreeMap<String, Scalar> = [("c", 2), ("c1", 3), ("c2", 5), ("c3", 7)]
        .into_iter()
        .map(|(k, v)| (k.to_string(), Scalar::from_int(v)))
        .collect();
    let mut failed = 0;
    for entry in nilpotent_table(5) {
        let a = entry.algebra.substitute(&values).expect("values are admissible");
        let r = random_basis_fuzz(&a, trials, seed).expect("constant parameters");
        println!(
            "{:<16} {:<18} {:>3} witnesses / {} trials, {} failures",
            entry.label(),
            r.invariants.blocks.as_deref().unwrap_or("-"),
            r.witnesses_found,
            r.trials,
            r.failures.len()
        );
        failed += r.failures.len();
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
