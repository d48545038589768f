//! Lattice polytope utilities: hull membership, lattice point enumeration,
//! simplex recognition, barycentric coordinates, and mediated sets of even
//! point configurations.
//!
//! Points live in `Z^n` as `Vec<i64>`. A [`PointSet`] keeps its points
//! deduplicated and ordered, so enumeration output is deterministic.

use std::collections::BTreeSet;

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::budget::{Budget, BudgetExceeded};
use crate::exactlp::{self, LPOutcome, LPProblem, LinearConstraint, Rel, VarBound};
use crate::linalg;
use crate::polycore::Polynomial;
use crate::ratio::{rat, Rational};

/// A finite set of lattice points sharing one ambient dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    dim: usize,
    points: BTreeSet<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PointSetError {
    #[error("point has {got} coordinates, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
}

impl PointSet {
    pub fn new(dim: usize) -> Self {
        PointSet {
            dim,
            points: BTreeSet::new(),
        }
    }

    pub fn from_points(dim: usize, pts: impl IntoIterator<Item = Vec<i64>>) -> Result<Self, PointSetError> {
        let mut s = PointSet::new(dim);
        for p in pts {
            s.insert(p)?;
        }
        Ok(s)
    }

    pub fn insert(&mut self, p: Vec<i64>) -> Result<bool, PointSetError> {
        if p.len() != self.dim {
            return Err(PointSetError::DimensionMismatch {
                expected: self.dim,
                got: p.len(),
            });
        }
        Ok(self.points.insert(p))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        self.points.contains(p)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Vec<i64>> {
        self.points.iter()
    }

    /// Points in ascending lexicographic order.
    pub fn to_vec(&self) -> Vec<Vec<i64>> {
        self.points.iter().cloned().collect()
    }

    pub fn to_json(&self) -> PointSetJson {
        PointSetJson {
            dim: self.dim,
            points: self.to_vec(),
        }
    }

    pub fn from_json(json: &PointSetJson) -> Result<Self, PointSetError> {
        PointSet::from_points(json.dim, json.points.iter().cloned())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PointSetJson {
    pub dim: usize,
    pub points: Vec<Vec<i64>>,
}

/// Whether every coordinate of `p` is even.
pub fn is_even_point(p: &[i64]) -> bool {
    p.iter().all(|c| c % 2 == 0)
}

fn midpoint(a: &[i64], b: &[i64]) -> Option<Vec<i64>> {
    let mut m = Vec::with_capacity(a.len());
    for (x, y) in a.iter().zip(b) {
        let s = x + y;
        if s % 2 != 0 {
            return None;
        }
        m.push(s / 2);
    }
    Some(m)
}

/// Whether `point` (with rational coordinates) lies in the convex hull of
/// `generators`. Uses barycentric coordinates when the generators form a
/// simplex and an exact feasibility program otherwise.
pub fn in_convex_hull(generators: &PointSet, point: &[Rational]) -> bool {
    assert_eq!(point.len(), generators.dim(), "point dimension mismatch");
    if generators.is_empty() {
        return false;
    }
    let verts = generators.to_vec();
    if is_simplex(generators) {
        return match barycentric_coordinates(&verts, point) {
            Some(coords) => coords.iter().all(|c| !c.is_negative()),
            None => false,
        };
    }
    // Feasibility of sum lambda_i v_i = point, sum lambda_i = 1, lambda >= 0.
    let k = verts.len();
    let n = generators.dim();
    let mut constraints = Vec::with_capacity(n + 1);
    for i in 0..n {
        let coeffs = verts.iter().map(|v| rat(v[i])).collect();
        constraints.push(LinearConstraint::new(coeffs, Rel::Eq, point[i].clone()));
    }
    constraints.push(LinearConstraint::new(vec![rat(1); k], Rel::Eq, rat(1)));
    let p = LPProblem::new(None, constraints, vec![VarBound::at_least(rat(0)); k]);
    matches!(
        exactlp::solve(&p).expect("well-formed hull membership program"),
        LPOutcome::Optimal { .. }
    )
}

/// Convenience wrapper for integer points.
pub fn lattice_point_in_hull(generators: &PointSet, point: &[i64]) -> bool {
    let q: Vec<Rational> = point.iter().map(|&c| rat(c)).collect();
    in_convex_hull(generators, &q)
}

/// All lattice points in the convex hull of `generators`, enumerated over
/// the bounding box with an exact membership test per candidate. The budget
/// bounds the number of box candidates inspected.
pub fn lattice_points_in_hull_budgeted(
    generators: &PointSet,
    budget: &Budget,
) -> Result<PointSet, BudgetExceeded> {
    let n = generators.dim();
    let mut out = PointSet::new(n);
    if generators.is_empty() {
        return Ok(out);
    }
    let mut lo = vec![i64::MAX; n];
    let mut hi = vec![i64::MIN; n];
    for p in generators.iter() {
        for i in 0..n {
            lo[i] = lo[i].min(p[i]);
            hi[i] = hi[i].max(p[i]);
        }
    }
    let mut volume: u64 = 1;
    for i in 0..n {
        let width = (hi[i] - lo[i] + 1) as u64;
        volume = volume.saturating_mul(width);
    }
    budget.check(volume)?;
    let mut cursor = lo.clone();
    loop {
        if lattice_point_in_hull(generators, &cursor) {
            out.insert(cursor.clone()).expect("dimension preserved");
        }
        // Advance the odometer over the box.
        let mut i = 0;
        loop {
            if i == n {
                return Ok(out);
            }
            cursor[i] += 1;
            if cursor[i] <= hi[i] {
                break;
            }
            cursor[i] = lo[i];
            i += 1;
        }
    }
}

/// [`lattice_points_in_hull_budgeted`] with the default budget.
///
/// Panics when the bounding box exceeds the default budget; use the
/// budgeted variant to handle large configurations gracefully.
pub fn lattice_points_in_hull(generators: &PointSet) -> PointSet {
    lattice_points_in_hull_budgeted(generators, &Budget::default())
        .expect("bounding box exceeds the default budget")
}

/// The extreme points of the configuration: those not in the convex hull of
/// the remaining points.
pub fn vertex_points(points: &PointSet) -> PointSet {
    let n = points.dim();
    let mut out = PointSet::new(n);
    for p in points.iter() {
        let others = PointSet::from_points(n, points.iter().filter(|q| *q != p).cloned())
            .expect("dimension preserved");
        if others.is_empty() || !lattice_point_in_hull(&others, p) {
            out.insert(p.clone()).expect("dimension preserved");
        }
    }
    out
}

/// The vertices of the Newton polytope of `f`: extreme points of its
/// support.
pub fn newton_vertices(f: &Polynomial) -> PointSet {
    let n = f.nvars();
    let support = PointSet::from_points(
        n,
        f.support()
            .iter()
            .map(|e| e.entries().iter().map(|&v| i64::from(v)).collect()),
    )
    .expect("exponents share the polynomial dimension");
    vertex_points(&support)
}

/// Whether the points are affinely independent, i.e. vertices of a simplex
/// of dimension `len - 1`.
pub fn is_simplex(points: &PointSet) -> bool {
    let verts = points.to_vec();
    if verts.is_empty() {
        return false;
    }
    let base = &verts[0];
    let rows: Vec<Vec<Rational>> = verts[1..]
        .iter()
        .map(|v| v.iter().zip(base).map(|(a, b)| rat(a - b)).collect())
        .collect();
    linalg::rank(&rows) == verts.len() - 1
}

/// Barycentric coordinates of `point` with respect to `vertices`, in the
/// order given. Returns `None` when the vertices are affinely dependent or
/// the point lies outside their affine hull. Coordinates sum to one and may
/// be negative for points outside the simplex.
pub fn barycentric_coordinates(vertices: &[Vec<i64>], point: &[Rational]) -> Option<Vec<Rational>> {
    let k = vertices.len();
    if k == 0 {
        return None;
    }
    let n = vertices[0].len();
    assert_eq!(point.len(), n, "point dimension mismatch");
    let mut a = Vec::with_capacity(n + 1);
    for i in 0..n {
        a.push(vertices.iter().map(|v| rat(v[i])).collect::<Vec<_>>());
    }
    a.push(vec![Rational::one(); k]);
    let mut b: Vec<Rational> = point.to_vec();
    b.push(Rational::one());
    linalg::solve_unique(&a, &b)
}

/// Whether `point` is strictly inside the simplex spanned by `vertices`.
pub fn strictly_inside_simplex(vertices: &[Vec<i64>], point: &[Rational]) -> bool {
    match barycentric_coordinates(vertices, point) {
        Some(coords) => coords.iter().all(|c| c.is_positive()),
        None => false,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MediatedSetError {
    #[error("mediated sets are defined for even lattice points; {point:?} has an odd coordinate")]
    OddPoint { point: Vec<i64> },
    #[error("mediated sets need at least one generator point")]
    Empty,
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}

/// [`maximal_mediated_set_budgeted`] with the default budget.
pub fn maximal_mediated_set(a: &PointSet) -> Result<PointSet, MediatedSetError> {
    maximal_mediated_set_budgeted(a, &Budget::default())
}

/// Largest mediated set of an even point configuration `a`: the greatest
/// fixed point of the pruning operator that starts from all lattice points
/// of the hull and repeatedly deletes points outside `a` that are not the
/// midpoint of two distinct even points of the current set. All deletions
/// of a round are applied simultaneously, which makes the result
/// independent of enumeration order.
pub fn maximal_mediated_set_budgeted(
    a: &PointSet,
    budget: &Budget,
) -> Result<PointSet, MediatedSetError> {
    if a.is_empty() {
        return Err(MediatedSetError::Empty);
    }
    for p in a.iter() {
        if !is_even_point(p) {
            return Err(MediatedSetError::OddPoint { point: p.clone() });
        }
    }
    let mut current = lattice_points_in_hull_budgeted(a, budget)?;
    loop {
        let even: Vec<Vec<i64>> = current.iter().filter(|p| is_even_point(p)).cloned().collect();
        let mut mediated: BTreeSet<Vec<i64>> = BTreeSet::new();
        for (i, p) in even.iter().enumerate() {
            for q in even.iter().skip(i + 1) {
                if let Some(m) = midpoint(p, q) {
                    mediated.insert(m);
                }
            }
        }
        let next: Vec<Vec<i64>> = current
            .iter()
            .filter(|p| a.contains(p) || mediated.contains(*p))
            .cloned()
            .collect();
        if next.len() == current.len() {
            return Ok(current);
        }
        current = PointSet::from_points(a.dim(), next).expect("dimension preserved");
    }
}

/// Classification of a simplex with even vertices by the size of its
/// largest mediated set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SimplexKind {
    /// The mediated set is every lattice point of the simplex.
    H,
    /// The mediated set is only the vertices plus their pairwise midpoints.
    M,
    /// Strictly between the two extremes.
    Intermediate,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SimplexClassifyError {
    #[error("points are not the vertex set of a simplex")]
    NotSimplex,
    #[error(transparent)]
    Mediated(#[from] MediatedSetError),
    #[error(transparent)]
    Budget(BudgetExceeded),
}

/// [`classify_simplex_budgeted`] with the default budget.
pub fn classify_simplex(vertices: &PointSet) -> Result<SimplexKind, SimplexClassifyError> {
    classify_simplex_budgeted(vertices, &Budget::default())
}

/// Classifies an even-vertex simplex. The full-lattice test runs first, so
/// simplices whose lattice points are exactly vertices plus midpoints
/// report [`SimplexKind::H`].
pub fn classify_simplex_budgeted(
    vertices: &PointSet,
    budget: &Budget,
) -> Result<SimplexKind, SimplexClassifyError> {
    if !is_simplex(vertices) {
        return Err(SimplexClassifyError::NotSimplex);
    }
    let mms = maximal_mediated_set_budgeted(vertices, budget)?;
    let all =
        lattice_points_in_hull_budgeted(vertices, budget).map_err(SimplexClassifyError::Budget)?;
    if mms == all {
        return Ok(SimplexKind::H);
    }
    let verts = vertices.to_vec();
    let mut minimal = vertices.clone();
    for (i, p) in verts.iter().enumerate() {
        for q in verts.iter().skip(i + 1) {
            let m = midpoint(p, q).expect("even points have lattice midpoints");
            minimal.insert(m).expect("dimension preserved");
        }
    }
    if mms == minimal {
        Ok(SimplexKind::M)
    } else {
        Ok(SimplexKind::Intermediate)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::ratio;

    fn pset(dim: usize, pts: &[&[i64]]) -> PointSet {
        PointSet::from_points(dim, pts.iter().map(|p| p.to_vec())).unwrap()
    }

    #[test]
    fn scaled_standard_simplex_lattice_points() {
        let verts = pset(2, &[&[0, 0], &[2, 0], &[0, 2]]);
        let pts = lattice_points_in_hull(&verts);
        assert_eq!(
            pts.to_vec(),
            vec![
                vec![0, 0],
                vec![0, 1],
                vec![0, 2],
                vec![1, 0],
                vec![1, 1],
                vec![2, 0]
            ]
        );
    }

    #[test]
    fn skewed_triangle_lattice_points() {
        let verts = pset(2, &[&[0, 0], &[2, 4], &[4, 2]]);
        let pts = lattice_points_in_hull(&verts);
        assert_eq!(
            pts.to_vec(),
            vec![
                vec![0, 0],
                vec![1, 1],
                vec![1, 2],
                vec![2, 1],
                vec![2, 2],
                vec![2, 3],
                vec![2, 4],
                vec![3, 2],
                vec![3, 3],
                vec![4, 2]
            ]
        );
    }

    #[test]
    fn hull_membership_for_non_simplex_generators() {
        // A square: four generators, affinely dependent.
        let square = pset(2, &[&[0, 0], &[2, 0], &[0, 2], &[2, 2]]);
        assert!(!is_simplex(&square));
        assert!(lattice_point_in_hull(&square, &[1, 1]));
        assert!(lattice_point_in_hull(&square, &[2, 1]));
        assert!(!lattice_point_in_hull(&square, &[3, 1]));
        assert_eq!(lattice_points_in_hull(&square).len(), 9);
    }

    #[test]
    fn barycentric_coordinates_on_the_boundary() {
        // (1, 1) sits on the edge between (0, 2) and (2, 0).
        let verts = vec![vec![0, 0], vec![0, 2], vec![2, 0]];
        let q = vec![ratio(1, 1), ratio(1, 1)];
        let coords = barycentric_coordinates(&verts, &q).unwrap();
        assert_eq!(coords, vec![ratio(0, 1), ratio(1, 2), ratio(1, 2)]);
        assert!(!strictly_inside_simplex(&verts, &q));
        let inner = vec![ratio(1, 2), ratio(1, 2)];
        assert!(strictly_inside_simplex(&verts, &inner));
    }

    #[test]
    fn mediated_set_of_the_scaled_standard_simplex() {
        // Every lattice point survives: an H-simplex.
        let verts = pset(2, &[&[0, 0], &[2, 0], &[0, 2]]);
        let mms = maximal_mediated_set(&verts).unwrap();
        assert_eq!(mms.len(), 6);
        assert_eq!(classify_simplex(&verts).unwrap(), SimplexKind::H);
    }

    #[test]
    fn mediated_set_of_the_skewed_triangle() {
        // (2, 2) dies in the first round; (1, 1), (2, 3), (3, 2) follow.
        let verts = pset(2, &[&[0, 0], &[2, 4], &[4, 2]]);
        let mms = maximal_mediated_set(&verts).unwrap();
        assert_eq!(
            mms.to_vec(),
            vec![
                vec![0, 0],
                vec![1, 2],
                vec![2, 1],
                vec![2, 4],
                vec![3, 3],
                vec![4, 2]
            ]
        );
        assert_eq!(classify_simplex(&verts).unwrap(), SimplexKind::M);
    }

    #[test]
    fn segment_classifies_as_full_lattice() {
        let seg = pset(1, &[&[0], &[4]]);
        let mms = maximal_mediated_set(&seg).unwrap();
        assert_eq!(mms.to_vec(), vec![vec![0], vec![1], vec![2], vec![3], vec![4]]);
        assert_eq!(classify_simplex(&seg).unwrap(), SimplexKind::H);
        // A short segment is both extremes at once; the full-lattice answer
        // takes priority.
        let short = pset(1, &[&[0], &[2]]);
        assert_eq!(classify_simplex(&short).unwrap(), SimplexKind::H);
    }

    #[test]
    fn odd_generators_are_rejected() {
        let verts = pset(2, &[&[0, 0], &[1, 2]]);
        assert!(matches!(
            maximal_mediated_set(&verts),
            Err(MediatedSetError::OddPoint { .. })
        ));
    }

    #[test]
    fn point_set_json_round_trip() {
        let verts = pset(2, &[&[0, 0], &[2, 4], &[4, 2]]);
        let json = serde_json::to_string(&verts.to_json()).unwrap();
        let parsed: PointSetJson = serde_json::from_str(&json).unwrap();
        assert_eq!(PointSet::from_json(&parsed).unwrap(), verts);
    }

    #[test]
    fn vertex_points_drop_interior_and_boundary_midpoints() {
        let pts = pset(2, &[&[0, 0], &[2, 0], &[0, 2], &[1, 1], &[1, 0]]);
        let verts = vertex_points(&pts);
        assert_eq!(verts.to_vec(), vec![vec![0, 0], vec![0, 2], vec![2, 0]]);
    }

    #[test]
    fn newton_vertices_of_a_sparse_polynomial() {
        use crate::polycore::{Exponent, Polynomial};
        // 1 + x^4 y^2 + x^2 y^4 - 3 x^2 y^2: the mixed term is interior.
        let f = Polynomial::from_terms(
            2,
            vec![
                (Exponent::new(vec![0, 0]), rat(1)),
                (Exponent::new(vec![4, 2]), rat(1)),
                (Exponent::new(vec![2, 4]), rat(1)),
                (Exponent::new(vec![2, 2]), rat(-3)),
            ],
        )
        .unwrap();
        let verts = newton_vertices(&f);
        assert_eq!(verts.to_vec(), vec![vec![0, 0], vec![2, 4], vec![4, 2]]);
    }

    #[test]
    fn lattice_enumeration_respects_its_budget() {
        let verts = pset(2, &[&[0, 0], &[2, 4], &[4, 2]]);
        // The bounding box holds 25 candidates.
        assert!(lattice_points_in_hull_budgeted(&verts, &Budget::new(24)).is_err());
        assert!(lattice_points_in_hull_budgeted(&verts, &Budget::new(25)).is_ok());
        assert!(matches!(
            maximal_mediated_set_budgeted(&verts, &Budget::new(3)),
            Err(MediatedSetError::Budget(_))
        ));
    }
}
