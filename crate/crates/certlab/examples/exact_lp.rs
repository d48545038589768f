//! The rational simplex solver returns certificates, not just answers:
//! optimal points carry duals proving optimality, infeasible programs carry
//! combination weights deriving a contradiction, unbounded ones carry a
//! feasible point plus an improving ray. Every claim re-checks exactly.

use certlab::exactlp::{
    check_certificate, solve, LPOutcome, LPProblem, LinearConstraint, Rel, VarBound,
};
use certlab::ratio::{format_rational, rat, ratio, Rational};

fn show(vs: &[Rational]) -> String {
    let parts: Vec<String> = vs.iter().map(format_rational).collect();
    format!("[{}]", parts.join(", "))
}

fn main() {
    // maximize x + y subject to x + 2y <= 4, 3x + y <= 6, x, y >= 0.
    let p = LPProblem::new(
        Some(vec![rat(1), rat(1)]),
        vec![
            LinearConstraint::new(vec![rat(1), rat(2)], Rel::Le, rat(4)),
            LinearConstraint::new(vec![rat(3), rat(1)], Rel::Le, rat(6)),
        ],
        vec![VarBound::at_least(rat(0)), VarBound::at_least(rat(0))],
    );
    match solve(&p).unwrap() {
        outcome @ LPOutcome::Optimal { .. } => {
            if let LPOutcome::Optimal {
                primal,
                objective,
                dual,
            } = &outcome
            {
                println!("optimal point {}", show(primal));
                println!("  objective {}", format_rational(objective));
                println!("  dual multipliers {}", show(dual));
            }
            println!("  certificate valid: {}", check_certificate(&p, &outcome));
        }
        other => println!("unexpected: {other:?}"),
    }
    println!();

    // x >= 3 and x <= 1 cannot both hold.
    let infeasible = LPProblem::new(
        None,
        vec![
            LinearConstraint::new(vec![rat(1)], Rel::Ge, rat(3)),
            LinearConstraint::new(vec![rat(1)], Rel::Le, rat(1)),
        ],
        vec![VarBound::free()],
    );
    match solve(&infeasible).unwrap() {
        outcome @ LPOutcome::Infeasible { .. } => {
            if let LPOutcome::Infeasible { farkas } = &outcome {
                println!("infeasible, combination weights {}", show(farkas));
            }
            println!(
                "  certificate valid: {}",
                check_certificate(&infeasible, &outcome)
            );
        }
        other => println!("unexpected: {other:?}"),
    }
    println!();

    // maximize x with only a lower bound runs away along the ray.
    let unbounded = LPProblem::new(
        Some(vec![rat(1)]),
        vec![LinearConstraint::new(vec![rat(1)], Rel::Ge, ratio(1, 2))],
        vec![VarBound::free()],
    );
    match solve(&unbounded).unwrap() {
        outcome @ LPOutcome::Unbounded { .. } => {
            if let LPOutcome::Unbounded {
                feasible,
                direction,
            } = &outcome
            {
                println!(
                    "unbounded from {} along {}",
                    show(feasible),
                    show(direction)
                );
            }
            println!(
                "  certificate valid: {}",
                check_certificate(&unbounded, &outcome)
            );
        }
        other => println!("unexpected: {other:?}"),
    }
}
