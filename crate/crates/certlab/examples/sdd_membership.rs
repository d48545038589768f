//! Scaled diagonal dominance by exact linear programming: find a positive
//! diagonal scaling that makes a symmetric matrix diagonally dominant, or
//! obtain a refutation certificate. Members split into weighted squares on
//! at most two coordinates each.

use certlab::exactlp;
use certlab::matrixkit::{is_sdd, sdd_to_binomial_squares, SddOutcome, SymmetricMatrix};
use certlab::ratio::{format_rational, rat};

fn main() {
    // Dominant after scaling even though row sums fail as given.
    let m = SymmetricMatrix::from_rows(vec![
        vec![rat(1), rat(2), rat(0)],
        vec![rat(2), rat(8), rat(1)],
        vec![rat(0), rat(1), rat(1)],
    ])
    .unwrap();
    match is_sdd(&m) {
        SddOutcome::Sdd { scaling } => {
            let d: Vec<String> = scaling.iter().map(format_rational).collect();
            println!("matrix is scaled diagonally dominant");
            println!("  scaling d = [{}]", d.join(", "));
            let squares = sdd_to_binomial_squares(&m).unwrap();
            println!("  splits into {} weighted squares:", squares.len());
            for st in &squares {
                let parts: Vec<String> = st
                    .form
                    .iter()
                    .map(|(i, c)| format!("{} z{}", format_rational(c), i))
                    .collect();
                println!(
                    "    {} * ({})^2",
                    format_rational(&st.weight),
                    parts.join(" + ")
                );
            }
        }
        SddOutcome::NotSdd { .. } => println!("unexpected refutation"),
    }
    println!();

    // The all-ones 3x3 matrix is psd but admits no dominant scaling; the
    // refutation is an infeasibility certificate checked independently.
    let ones = SymmetricMatrix::from_rows(vec![
        vec![rat(1), rat(1), rat(1)],
        vec![rat(1), rat(1), rat(1)],
        vec![rat(1), rat(1), rat(1)],
    ])
    .unwrap();
    match is_sdd(&ones) {
        SddOutcome::Sdd { .. } => println!("unexpected membership"),
        SddOutcome::NotSdd { problem, farkas } => {
            println!("all-ones matrix has no dominant scaling");
            println!(
                "  refutation certificate valid: {}",
                exactlp::check_certificate(&problem, &farkas)
            );
        }
    }
}
