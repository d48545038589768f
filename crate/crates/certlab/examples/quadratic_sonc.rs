//! Quadratic membership in the circuit cone is decidable exactly: a
//! quadratic is a sum of nonnegative circuits precisely when its unique
//! coefficient matrix over `(1, x)` is scaled diagonally dominant. Members
//! come with a verified circuit decomposition, refutations with a checked
//! infeasibility certificate.

use certlab::circuitcert::{quadratic_sonc_membership, verify_sonc_decomposition, QuadraticSoncOutcome};
use certlab::exactlp;
use certlab::hierarchy::witness_signed_quadric;
use certlab::polycore::{Exponent, Polynomial};
use certlab::ratio::rat;

fn main() {
    // 2x^2 - 2xy + y^2 - 2x + 1 = (1 - x)^2 + (x - y)^2.
    let f = Polynomial::from_terms(
        2,
        vec![
            (Exponent::new(vec![2, 0]), rat(2)),
            (Exponent::new(vec![1, 1]), rat(-2)),
            (Exponent::new(vec![0, 2]), rat(1)),
            (Exponent::new(vec![1, 0]), rat(-2)),
            (Exponent::zeros(2), rat(1)),
        ],
    )
    .unwrap();
    match quadratic_sonc_membership(&f).unwrap() {
        QuadraticSoncOutcome::Member { decomposition } => {
            println!("member: splits into {} circuits", decomposition.entries.len());
            let report = verify_sonc_decomposition(&f, &decomposition);
            println!("  decomposition verifies: {}", report.accepted);
        }
        QuadraticSoncOutcome::NotMember { .. } => println!("unexpected refutation"),
    }
    println!();

    // The squared affine form is a sum of squares yet lies outside the
    // circuit cone for two or more variables.
    let q = witness_signed_quadric(2);
    match quadratic_sonc_membership(&q).unwrap() {
        QuadraticSoncOutcome::Member { .. } => println!("unexpected membership"),
        QuadraticSoncOutcome::NotMember { problem, farkas } => {
            println!("(1 - x - y)^2 is not a sum of nonnegative circuits");
            println!(
                "  refutation certificate valid: {}",
                exactlp::check_certificate(&problem, &farkas)
            );
        }
    }
}
