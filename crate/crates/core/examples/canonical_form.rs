//! Canonical blocks and pencil invariants of a bilinear form, given as rows
//! separated by `;` on the command line. Parametric entries are allowed;
//! their invariants are then computed generically.
//!
//!     cargo run --example canonical_form -- "0,1,0;c,0,0;0,0,1"

use leibniz_lab::form::{
    algebra_from_form, canonical_decomposition, format_blocks, pencil_invariants, FormMatrix,
};

fn main() {
    let text = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "0,1,0,0;2,0,0,0;0,0,0,1;0,0,-1,1".to_string());
    let m: FormMatrix = match text.parse() {
        Ok(m) => m,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(2);
        }
    };
    println!("form:\n{m}");
    match pencil_invariants(&m) {
        Ok(inv) => println!("pencil invariants: {inv}"),
        Err(e) => println!("pencil invariants unavailable: {e}"),
    }
    match canonical_decomposition(&m) {
        Ok(blocks) => println!("canonical blocks: {}", format_blocks(&blocks)),
        Err(e) => println!("no decomposition: {e}"),
    }
    let a = algebra_from_form(&m);
    println!(
        "associated algebra: dim {}, Leibniz {}, nilpotent {}, dim Leib(A) {}",
        a.dim(),
        a.verify_leibniz(),
        a.is_nilpotent(),
        a.leib_ideal().dim()
    );
}
