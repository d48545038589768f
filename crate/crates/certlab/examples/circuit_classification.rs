//! Classify polynomials through the circuit lens: detect circuit shape,
//! compute the barycentric weights of the inner exponent, and decide
//! nonnegativity and sum-of-squares membership by exact arithmetic.

use certlab::circuitcert::Circuit;
use certlab::hierarchy::witness_generalized_motzkin;
use certlab::polycore::{Exponent, Polynomial};
use certlab::ratio::{format_rational, rat, ratio};

fn inspect(label: &str, f: &Polynomial) {
    println!("{label}: {} terms, degree {}", f.num_terms(), f.total_degree());
    match Circuit::from_polynomial(f) {
        Ok(c) => {
            println!("  circuit: yes (degenerate: {})", c.is_degenerate());
            if let Some(lambda) = c.lambda() {
                let parts: Vec<String> = lambda.iter().map(format_rational).collect();
                println!("  barycentric weights: [{}]", parts.join(", "));
            }
            if let Some(ord) = c.inner_versus_bound() {
                println!("  inner coefficient versus circuit bound: {ord:?}");
            }
            println!("  nonnegative: {}", c.is_nonnegative());
            println!("  sum of squares: {}", c.is_sum_of_squares());
        }
        Err(e) => println!("  circuit: no ({e})"),
    }
    println!();
}

fn main() {
    // The classical three-term witness with a boundary inner coefficient.
    inspect("motzkin", &witness_generalized_motzkin(2));

    // Shrinking the inner coefficient moves strictly inside the cone.
    let strict = Polynomial::from_terms(
        2,
        vec![
            (Exponent::zeros(2), rat(1)),
            (Exponent::new(vec![4, 2]), rat(1)),
            (Exponent::new(vec![2, 4]), rat(1)),
            (Exponent::new(vec![2, 2]), rat(-2)),
        ],
    )
    .unwrap();
    inspect("motzkin with inner coefficient -2", &strict);

    // Growing it past the bound loses nonnegativity.
    let broken = Polynomial::from_terms(
        2,
        vec![
            (Exponent::zeros(2), rat(1)),
            (Exponent::new(vec![4, 2]), rat(1)),
            (Exponent::new(vec![2, 4]), rat(1)),
            (Exponent::new(vec![2, 2]), ratio(-7, 2)),
        ],
    )
    .unwrap();
    inspect("motzkin with inner coefficient -7/2", &broken);

    // A square of a binomial is a circuit that is also a sum of squares.
    let square = Polynomial::from_terms(
        1,
        vec![
            (Exponent::new(vec![2]), rat(1)),
            (Exponent::new(vec![1]), rat(-2)),
            (Exponent::new(vec![0]), rat(1)),
        ],
    )
    .unwrap();
    inspect("(x - 1)^2", &square);

    // Four support points in general position are not a circuit at all.
    let not_circuit = Polynomial::from_terms(
        2,
        vec![
            (Exponent::zeros(2), rat(1)),
            (Exponent::new(vec![2, 0]), rat(1)),
            (Exponent::new(vec![0, 2]), rat(1)),
            (Exponent::new(vec![4, 4]), rat(1)),
            (Exponent::new(vec![1, 0]), rat(-1)),
        ],
    )
    .unwrap();
    inspect("a five-term polynomial", &not_circuit);
}
