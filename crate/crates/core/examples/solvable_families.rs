//! The 3-dimensional solvable families: structural data per family, and the
//! eigenvalue-ratio invariant that separates the one-parameter family.

use std::collections::BTreeMap;

use leibniz_lab::classify::{dim3_solvable_table, products_text};
use leibniz_lab::iso::type2_ratio_invariant;
use leibniz_lab::Scalar;

fn main() {
    let table = dim3_solvable_table();
    for e in &table {
        let a = &e.algebra;
        println!("{}: {}", e.label(), products_text(a));
        println!(
            "    dim A² {}, dim A^(2) {}, dim Leib {}, dim Z {}, nilpotent {}",
            a.derived_algebra().dim(),
            a.derived_term(3).dim(),
            a.leib_ideal().dim(),
            a.center().dim(),
            a.is_nilpotent()
        );
    }

    let family = &table[1].algebra;
    for alpha in ["2", "1/2", "3", "-1", "2+i"] {
        let value: Scalar = alpha.parse().expect("scalar literal");
        let a = family
            .substitute(&BTreeMap::from([("alpha".to_string(), value)]))
            .expect("admissible value");
        match type2_ratio_invariant(&a) {
            Ok(pair) => println!("alpha = {alpha}: ratio pair {pair}"),
            Err(e) => println!("alpha = {alpha}: {e}"),
        }
    }
}
