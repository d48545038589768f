//! Maximal mediated sets decide when a nonnegative circuit is a sum of
//! squares: the inner exponent must land in the mediated set of the outer
//! vertices. This walk computes mediated sets and classifies simplices.

use certlab::polytope::{classify_simplex, maximal_mediated_set, PointSet, SimplexKind};

fn report(label: &str, points: Vec<Vec<i64>>) {
    let dim = points[0].len();
    let set = PointSet::from_points(dim, points).unwrap();
    let mms = maximal_mediated_set(&set).unwrap();
    println!("{label}");
    println!("  mediated set size: {}", mms.len());
    println!("  mediated points: {:?}", mms.to_vec());
    match classify_simplex(&set) {
        Ok(SimplexKind::H) => println!("  class: H (every lattice point mediated)"),
        Ok(SimplexKind::M) => println!("  class: M (only vertices and midpoints)"),
        Ok(SimplexKind::Intermediate) => println!("  class: intermediate"),
        Err(e) => println!("  class: not a simplex ({e})"),
    }
    println!();
}

fn main() {
    // The standard scaled corner simplex keeps every lattice point.
    report("2 * standard simplex", vec![vec![0, 0], vec![2, 0], vec![0, 2]]);

    // The outer support of the classical three-term witness keeps only
    // midpoints, which is what blocks a sum-of-squares decomposition.
    report("motzkin support", vec![vec![0, 0], vec![4, 2], vec![2, 4]]);

    // Scaling the corner simplex keeps the H property: midpoint chains
    // reach every lattice point.
    report("6 * standard simplex", vec![vec![0, 0], vec![6, 0], vec![0, 6]]);

    // One dimension: a long even segment mediates everything stepwise.
    report("even segment", vec![vec![0], vec![8]]);

    // Strictly between the extremes: this tetrahedron mediates more than
    // the midpoints but misses some lattice points.
    report(
        "intermediate tetrahedron",
        vec![
            vec![0, 0, 0],
            vec![0, 0, 2],
            vec![0, 4, 0],
            vec![4, 2, 2],
        ],
    );
}
