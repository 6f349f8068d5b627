//! Two nilpotent algebras with one-dimensional square that look different
//! but are isomorphic: `B2(3)` in a scrambled basis against `B2(1/3)`. The
//! verdict carries an explicit change of basis, checked here by hand.

use leibniz_lab::form::{algebra_from_blocks, CanonicalBlock};
use leibniz_lab::iso::{check_isomorphism, Verdict};
use leibniz_lab::{Matrix, Scalar};

fn main() {
    let a = algebra_from_blocks(&[CanonicalBlock::b(2, Scalar::from_int(3)), CanonicalBlock::a(1)]);
    let scramble = Matrix::from_ints(&[&[1, 2, 0, 0], &[0, 1, 1, 0], &[1, 0, 1, 0], &[0, 0, 0, 3]]);
    let a = a.change_of_basis(&scramble).expect("invertible");
    let b = algebra_from_blocks(&[CanonicalBlock::b(2, Scalar::from_ratio(1, 3)), CanonicalBlock::a(1)]);

    let report = check_isomorphism(&a, &b, 0).expect("constant parameters");
    println!("verdict: {:?} (by {})", report.verdict, report.method);
    println!("blocks: {:?}", report.invariants[0].blocks);
    match &report.witness {
        Some(p) => {
            let image = a.change_of_basis(p).expect("witness is invertible");
            println!("witness:\n{p}");
            println!("change_of_basis(A, P) == B: {}", image.same_products(&b));
        }
        None => println!("no witness found"),
    }

    let c = algebra_from_blocks(&[CanonicalBlock::b(2, Scalar::from_int(2)), CanonicalBlock::a(1)]);
    let report = check_isomorphism(&a, &c, 0).expect("constant parameters");
    assert_eq!(report.verdict, Verdict::NotIsomorphic);
    println!("against B2(2) + A1: {:?} (by {})", report.verdict, report.method);
}
