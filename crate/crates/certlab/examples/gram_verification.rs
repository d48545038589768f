//! Exact Gram-matrix certificates for sums of squares: expand the quadratic
//! form over a monomial basis, compare against the target polynomial, and
//! factor the matrix rationally. Rejections come with a concrete witness
//! vector whose quadratic form is negative.

use certlab::matrixkit::{gram_verify, psd_check, PsdOutcome, SymmetricMatrix};
use certlab::polycore::{Exponent, Polynomial};
use certlab::ratio::{format_rational, rat};

fn main() {
    // (1 - x)^2 = 1 - 2x + x^2 over the basis (1, x).
    let f = Polynomial::from_terms(
        1,
        vec![
            (Exponent::new(vec![0]), rat(1)),
            (Exponent::new(vec![1]), rat(-2)),
            (Exponent::new(vec![2]), rat(1)),
        ],
    )
    .unwrap();
    let basis = vec![Exponent::new(vec![0]), Exponent::new(vec![1])];
    let gram = SymmetricMatrix::from_rows(vec![vec![rat(1), rat(-1)], vec![rat(-1), rat(1)]])
        .unwrap();
    let report = gram_verify(&f, &basis, &gram);
    println!("(1 - x)^2 against its rank-one matrix");
    println!("  accepted: {}", report.accepted);
    println!("  psd: {}", report.psd);
    println!();

    // The same matrix cannot represent x^2 - 1: the expansion disagrees.
    let g = Polynomial::from_terms(
        1,
        vec![
            (Exponent::new(vec![2]), rat(1)),
            (Exponent::new(vec![0]), rat(-1)),
        ],
    )
    .unwrap();
    let report = gram_verify(&g, &basis, &gram);
    println!("x^2 - 1 against the same matrix");
    println!("  accepted: {}", report.accepted);
    for msg in &report.failures {
        println!("  failure: {msg}");
    }
    println!();

    // An indefinite matrix is refuted with a witness vector.
    let indefinite =
        SymmetricMatrix::from_rows(vec![vec![rat(1), rat(2)], vec![rat(2), rat(1)]]).unwrap();
    match psd_check(&indefinite) {
        PsdOutcome::Psd(fact) => println!("unexpected: {fact:?}"),
        PsdOutcome::NotPsd { witness } => {
            let w: Vec<String> = witness.iter().map(format_rational).collect();
            println!("[[1, 2], [2, 1]] is not psd");
            println!("  witness v = [{}]", w.join(", "));
            println!(
                "  v^T M v = {}",
                format_rational(&indefinite.quadratic_form(&witness))
            );
        }
    }
}
