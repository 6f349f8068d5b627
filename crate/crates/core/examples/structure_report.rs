//! Structural data of an algebra read from a JSON file (the format written
//! by `leibniz-lab classify --format json`), or of the cyclic algebra when
//! no file is given.

use std::path::Path;

use leibniz_lab::algebra::load_algebras;
use leibniz_lab::classify::{paper_cyclic, products_text};
use leibniz_lab::iso::iso_invariants;

fn main() {
    let algebras = match std::env::args().nth(1) {
        Some(path) => load_algebras(Path::new(&path)).unwrap_or_else(|e| {
            eprintln!("{path}: {e}");
            std::process::exit(2);
        }),
        None => vec![paper_cyclic()],
    };
    for a in &algebras {
        println!("{}", a.label().unwrap_or("(unlabelled)"));
        println!("  products: {}", products_text(a));
        println!("  Leibniz: {}, Lie: {}", a.verify_leibniz(), a.is_lie());
        let dims = |s: Vec<leibniz_lab::Subspace>| s.iter().map(|x| x.dim()).collect::<Vec<_>>();
        println!("  lower central series: {:?}", dims(a.lower_central_series()));
        println!("  derived series: {:?}", dims(a.derived_series()));
        let inv = iso_invariants(a);
        println!(
            "  dim Leib {}, center {}, left center {}, right center {}",
            inv.dim_leib, inv.dim_center, inv.dim_left_center, inv.dim_right_center
        );
        if let Some(blocks) = inv.blocks {
            println!("  canonical blocks of the form: {blocks}");
        }
    }
}
