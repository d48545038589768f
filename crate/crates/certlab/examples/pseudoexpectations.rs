//! Pseudoexpectations are level-bounded moment tables over boolean
//! variables. Honest distributions always pass the dual feasibility
//! checks; fake tables get caught. Conditioning restricts to a branch and
//! costs one level.

use std::collections::BTreeMap;

use certlab::cubecert::{
    moment_matrix, mobius_diagonalize, sa_dual_check, sdsos_dual_check, PseudoExpectation,
};
use certlab::hierarchy::ConstraintSystem;
use certlab::polycore::Polynomial;
use certlab::ratio::{format_rational, rat, ratio};

fn main() {
    let n = 2;
    let system = ConstraintSystem::new(n);
    let uniform = PseudoExpectation::uniform(n, 2);

    // Moment matrix of the constant localizer at degree 2.
    let m = moment_matrix(&uniform, &Polynomial::one(n), 2).unwrap();
    println!("uniform moment matrix over {:?}:", m.index_sets);
    for row in m.matrix.rows() {
        let parts: Vec<String> = row.iter().map(format_rational).collect();
        println!("  [{}]", parts.join(", "));
    }
    println!();

    // Zeta-transform diagonalization: junta masses on the diagonal.
    let full: std::collections::BTreeSet<usize> = [0, 1].into_iter().collect();
    let d = mobius_diagonalize(&uniform, &Polynomial::one(n), &full).unwrap();
    println!("exactly diagonal after the subset transform: {}", d.is_exactly_diagonal());
    let masses: Vec<String> = d.junta_masses.iter().map(format_rational).collect();
    println!("junta masses: [{}]", masses.join(", "));
    println!();

    // Real distributions pass both dual checks.
    println!(
        "uniform passes the 2x2-minor dual check: {}",
        sdsos_dual_check(&uniform, &system, 2).unwrap().passed
    );
    let uniform4 = PseudoExpectation::uniform(n, 4);
    println!(
        "uniform passes the junta-mass dual check: {}",
        sa_dual_check(&uniform4, &system, 4).unwrap().passed
    );
    println!();

    // A fake table: pairwise moments too large for any distribution.
    let mut table = BTreeMap::new();
    table.insert(std::collections::BTreeSet::new(), rat(1));
    table.insert([0].into_iter().collect(), ratio(1, 4));
    table.insert([1].into_iter().collect(), ratio(1, 4));
    table.insert([0, 1].into_iter().collect(), ratio(1, 2));
    let fake = PseudoExpectation::new(n, 2, table).unwrap();
    let report = sa_dual_check(&fake, &system, 4).unwrap();
    println!("fake table passes: {}", report.passed);
    for v in &report.violations {
        println!(
            "  junta ones={:?} zeros={:?} has mass {}",
            v.ones,
            v.zeros,
            format_rational(&v.value)
        );
    }
    println!();

    // Conditioning on x0 = 1 renormalizes the table one level down.
    let conditioned = uniform.condition(0, true).unwrap();
    println!("after conditioning on x0 = 1:");
    println!("  level: {}", conditioned.level());
    let idx: std::collections::BTreeSet<usize> = [0].into_iter().collect();
    println!(
        "  moment of x0: {}",
        format_rational(conditioned.moment(&idx).unwrap())
    );
}
