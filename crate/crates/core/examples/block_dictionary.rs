//! Prints the pencil invariants of every canonical block up to a size.

use leibniz_lab::form::{block_invariants, dictionary, CanonicalBlock};
use leibniz_lab::Scalar;

fn main() {
    let max: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(6);
    let mut blocks = dictionary(max);
    for size in (2..=max).step_by(2) {
        for c in [Scalar::zero(), Scalar::from_int(2), Scalar::i()] {
            blocks.push(CanonicalBlock::b(size, c));
        }
    }
    for b in blocks {
        println!("{:<8} {}", b.name(), block_invariants(&b));
    }
}
