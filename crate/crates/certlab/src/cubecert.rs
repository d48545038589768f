//! Machinery for proofs over the Boolean cube: junta combinations,
//! pseudoexpectations, moment matrices with their Moebius diagonalization,
//! expansions in the ideal generated by `x_i^2 - x_i`, and an exact
//! linear-programming solver for junta-based lower bounds.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::budget::{Budget, BudgetExceeded};
use crate::circuitcert::Circuit;
use crate::exactlp::{self, LPOutcome, LPProblem, LinearConstraint, LpError, Rel, VarBound};
use crate::hierarchy::{self, CertEntry, CertKind, Certificate, ConstraintSystem, GroundElement, Shape};
use crate::matrixkit::SymmetricMatrix;
use crate::polycore::{Exponent, Polynomial};
use crate::ratio::{format_rational, parse_rational, rat, rational_pow, ratio, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum JuntaError {
    #[error("a variable appears in both the ones and zeros supports")]
    OverlappingSupports,
    #[error("junta weights must be nonnegative, got {weight}")]
    NegativeWeight { weight: String },
    #[error("variable {var} is out of range for {nvars} variables")]
    VariableOutOfRange { var: usize, nvars: usize },
    #[error("assignment has length {got}, expected {expected}")]
    AssignmentLength { expected: usize, got: usize },
    #[error("cube value table carries a negative entry")]
    NegativeValue,
    #[error("circuit is not nonnegative, so it has no junta form")]
    NotNonnegative,
    #[error("nonnegative circuit evaluated negatively on the cube")]
    NegativeCubeValue,
}

/// One weighted indicator term `w * prod_{i in ones} x_i * prod_{j in zeros}
/// (1 - x_j)`; the supports are disjoint and the weight is nonnegative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JuntaTerm {
    ones: BTreeSet<usize>,
    zeros: BTreeSet<usize>,
    weight: Rational,
}

impl JuntaTerm {
    pub fn new(
        ones: BTreeSet<usize>,
        zeros: BTreeSet<usize>,
        weight: Rational,
    ) -> Result<Self, JuntaError> {
        if ones.intersection(&zeros).next().is_some() {
            return Err(JuntaError::OverlappingSupports);
        }
        if weight.is_negative() {
            return Err(JuntaError::NegativeWeight {
                weight: format_rational(&weight),
            });
        }
        Ok(JuntaTerm { ones, zeros, weight })
    }

    pub fn ones(&self) -> &BTreeSet<usize> {
        &self.ones
    }

    pub fn zeros(&self) -> &BTreeSet<usize> {
        &self.zeros
    }

    pub fn weight(&self) -> &Rational {
        &self.weight
    }

    /// Number of variables the indicator fixes.
    pub fn degree(&self) -> usize {
        self.ones.len() + self.zeros.len()
    }

    pub fn max_var(&self) -> Option<usize> {
        self.ones
            .iter()
            .chain(self.zeros.iter())
            .max()
            .copied()
    }

    pub fn polynomial(&self, n: usize) -> Polynomial {
        if let Some(v) = self.max_var() {
            assert!(v < n, "junta variable {v} out of range for {n} variables");
        }
        let mut p = Polynomial::constant(n, self.weight.clone());
        for &i in &self.ones {
            p = &p * &Polynomial::variable(n, i);
        }
        let one = Polynomial::one(n);
        for &j in &self.zeros {
            let factor = &one - &Polynomial::variable(n, j);
            p = &p * &factor;
        }
        p
    }

    pub fn to_json(&self) -> JuntaTermJson {
        JuntaTermJson {
            ones: self.ones.iter().copied().collect(),
            zeros: self.zeros.iter().copied().collect(),
            weight: format_rational(&self.weight),
        }
    }

    pub fn from_json(json: &JuntaTermJson) -> Result<Self, JuntaJsonError> {
        let weight = parse_rational(&json.weight)
            .map_err(|e| JuntaJsonError::BadRational(e.to_string()))?;
        JuntaTerm::new(
            json.ones.iter().copied().collect(),
            json.zeros.iter().copied().collect(),
            weight,
        )
        .map_err(JuntaJsonError::Invalid)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct JuntaTermJson {
    pub ones: Vec<usize>,
    pub zeros: Vec<usize>,
    pub weight: String,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum JuntaJsonError {
    #[error("malformed rational: {0}")]
    BadRational(String),
    #[error(transparent)]
    Invalid(JuntaError),
}

/// The indicator polynomial of a single cube point: `prod x_i^[v_i = 1] *
/// prod (1 - x_j)^[v_j = 0]`.
pub fn kronecker_delta(v: &[bool]) -> Polynomial {
    let n = v.len();
    let ones: BTreeSet<usize> = (0..n).filter(|&i| v[i]).collect();
    let zeros: BTreeSet<usize> = (0..n).filter(|&i| !v[i]).collect();
    JuntaTerm::new(ones, zeros, rat(1))
        .expect("disjoint by construction")
        .polynomial(n)
}

/// All assignments to `k` variables, in binary counter order: entry `j` of
/// assignment number `mask` is bit `j` of `mask`.
pub fn cube_assignments(k: usize) -> Vec<Vec<bool>> {
    assert!(k < usize::BITS as usize, "assignment space too large");
    (0..1usize << k)
        .map(|mask| (0..k).map(|j| (mask >> j) & 1 == 1).collect())
        .collect()
}

/// Writes a function given by nonnegative values on the assignments of
/// `vars` as a combination of indicator terms, one per assignment with a
/// nonzero value.
pub fn junta_from_values(
    n: usize,
    vars: &BTreeSet<usize>,
    values: &BTreeMap<Vec<bool>, Rational>,
) -> Result<Vec<JuntaTerm>, JuntaError> {
    if let Some(&v) = vars.iter().max() {
        if v >= n {
            return Err(JuntaError::VariableOutOfRange { var: v, nvars: n });
        }
    }
    let ordered: Vec<usize> = vars.iter().copied().collect();
    let mut terms = Vec::new();
    for (assignment, value) in values {
        if assignment.len() != ordered.len() {
            return Err(JuntaError::AssignmentLength {
                expected: ordered.len(),
                got: assignment.len(),
            });
        }
        if value.is_negative() {
            return Err(JuntaError::NegativeValue);
        }
        if value.is_zero() {
            continue;
        }
        let mut ones = BTreeSet::new();
        let mut zeros = BTreeSet::new();
        for (k, &bit) in assignment.iter().enumerate() {
            if bit {
                ones.insert(ordered[k]);
            } else {
                zeros.insert(ordered[k]);
            }
        }
        terms.push(JuntaTerm::new(ones, zeros, value.clone())?);
    }
    Ok(terms)
}

/// Rewrites a nonnegative circuit as a nonnegative junta combination that
/// agrees with it on the whole cube. Sums of monomial squares split term by
/// term; a circuit with an inner term is tabulated over the variables it
/// actually uses, which number at most its total degree.
pub fn circuit_to_junta(c: &Circuit) -> Result<Vec<JuntaTerm>, JuntaError> {
    if !c.is_nonnegative() {
        return Err(JuntaError::NotNonnegative);
    }
    let n = c.nvars();
    if c.is_degenerate() {
        let mut terms = Vec::new();
        for (exp, coeff) in c.outer_terms() {
            let ones: BTreeSet<usize> = (0..n).filter(|&i| exp.entries()[i] > 0).collect();
            terms.push(JuntaTerm::new(ones, BTreeSet::new(), coeff.clone())?);
        }
        return Ok(terms);
    }
    let p = c.polynomial();
    let vars = p.variables_used();
    let ordered: Vec<usize> = vars.iter().copied().collect();
    let mut values = BTreeMap::new();
    for assignment in cube_assignments(ordered.len()) {
        let mut point = vec![Rational::zero(); n];
        for (k, &bit) in assignment.iter().enumerate() {
            if bit {
                point[ordered[k]] = rat(1);
            }
        }
        let v = p.eval(&point).expect("point length matches");
        if v.is_negative() {
            return Err(JuntaError::NegativeCubeValue);
        }
        if !v.is_zero() {
            values.insert(assignment, v);
        }
    }
    junta_from_values(n, &vars, &values)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PeError {
    #[error("moment table is missing the set {set:?}")]
    IncompleteTable { set: Vec<usize> },
    #[error("moment table carries a set above the level bound: {set:?}")]
    SetAboveLevel { set: Vec<usize> },
    #[error("the empty-set moment must equal one, got {value}")]
    NormalizationNotOne { value: String },
    #[error("variable {var} is out of range for {nvars} variables")]
    VariableOutOfRange { var: usize, nvars: usize },
    #[error("{points} points but {weights} weights")]
    WeightCount { points: usize, weights: usize },
    #[error("distribution weights must sum to one, got {sum}")]
    WeightSumNotOne { sum: String },
    #[error("distribution weight {index} is negative")]
    NegativeWeight { index: usize },
    #[error("point has length {got}, expected {expected}")]
    PointLength { expected: usize, got: usize },
    #[error("operation needs level at least {need}, table has level {have}")]
    LevelTooLow { need: usize, have: usize },
    #[error("no moment recorded for {set:?} at this level")]
    MissingMoment { set: Vec<usize> },
    #[error("conditioning variable {var} to bit {bit} hits a zero-probability branch")]
    DegenerateBranch { var: usize, bit: bool },
    #[error("polynomial has {got} variables, expected {expected}")]
    NvarsMismatch { expected: usize, got: usize },
}

/// All subsets of `0..n` of size at most `d`, sorted by (size, elements).
pub fn bounded_subsets(n: usize, d: usize) -> Vec<BTreeSet<usize>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    let mut frontier: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..d.min(n) {
        let mut next = Vec::new();
        for base in &frontier {
            let start = base.last().map_or(0, |&v| v + 1);
            for i in start..n {
                let mut ext = base.clone();
                ext.push(i);
                next.push(ext);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out.sort_by(|a, b| (a.len(), a.as_slice()).cmp(&(b.len(), b.as_slice())));
    out.into_iter().map(|v| v.into_iter().collect()).collect()
}

fn subset_exponent(n: usize, s: &BTreeSet<usize>) -> Exponent {
    let mut e = vec![0u32; n];
    for &i in s {
        e[i] = 1;
    }
    Exponent::new(e)
}

fn exponent_subset(e: &Exponent) -> BTreeSet<usize> {
    e.entries()
        .iter()
        .enumerate()
        .filter(|(_, &v)| v > 0)
        .map(|(i, _)| i)
        .collect()
}

/// A truncated moment table over subsets of variables: a value for every
/// subset of size at most `level`, normalized so the empty set maps to one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PseudoExpectation {
    n: usize,
    level: usize,
    table: BTreeMap<BTreeSet<usize>, Rational>,
}

impl PseudoExpectation {
    pub fn new(
        n: usize,
        level: usize,
        table: BTreeMap<BTreeSet<usize>, Rational>,
    ) -> Result<Self, PeError> {
        for s in table.keys() {
            if let Some(&v) = s.iter().max() {
                if v >= n {
                    return Err(PeError::VariableOutOfRange { var: v, nvars: n });
                }
            }
            if s.len() > level {
                return Err(PeError::SetAboveLevel {
                    set: s.iter().copied().collect(),
                });
            }
        }
        for s in bounded_subsets(n, level) {
            if !table.contains_key(&s) {
                return Err(PeError::IncompleteTable {
                    set: s.iter().copied().collect(),
                });
            }
        }
        let unit = table.get(&BTreeSet::new()).expect("checked complete");
        if *unit != rat(1) {
            return Err(PeError::NormalizationNotOne {
                value: format_rational(unit),
            });
        }
        Ok(PseudoExpectation { n, level, table })
    }

    /// The genuine moment table of a finite distribution on cube points.
    pub fn from_distribution(
        n: usize,
        points: &[Vec<bool>],
        weights: &[Rational],
        level: usize,
    ) -> Result<Self, PeError> {
        if points.len() != weights.len() {
            return Err(PeError::WeightCount {
                points: points.len(),
                weights: weights.len(),
            });
        }
        for p in points {
            if p.len() != n {
                return Err(PeError::PointLength {
                    expected: n,
                    got: p.len(),
                });
            }
        }
        let mut sum = Rational::zero();
        for (i, w) in weights.iter().enumerate() {
            if w.is_negative() {
                return Err(PeError::NegativeWeight { index: i });
            }
            sum += w;
        }
        if sum != rat(1) {
            return Err(PeError::WeightSumNotOne {
                sum: format_rational(&sum),
            });
        }
        let mut table = BTreeMap::new();
        for s in bounded_subsets(n, level) {
            let mut v = Rational::zero();
            for (p, w) in points.iter().zip(weights) {
                if s.iter().all(|&i| p[i]) {
                    v += w;
                }
            }
            table.insert(s, v);
        }
        Ok(PseudoExpectation { n, level, table })
    }

    /// Moments of the uniform distribution: each subset maps to `2^-|S|`.
    pub fn uniform(n: usize, level: usize) -> Self {
        let mut table = BTreeMap::new();
        for s in bounded_subsets(n, level) {
            let v = rational_pow(&ratio(1, 2), s.len() as u32);
            table.insert(s, v);
        }
        PseudoExpectation { n, level, table }
    }

    pub fn point_mass(point: &[bool], level: usize) -> Self {
        PseudoExpectation::from_distribution(point.len(), &[point.to_vec()], &[rat(1)], level)
            .expect("a single unit weight is a distribution")
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn moment(&self, s: &BTreeSet<usize>) -> Option<&Rational> {
        self.table.get(s)
    }

    pub fn moments(&self) -> impl Iterator<Item = (&BTreeSet<usize>, &Rational)> {
        self.table.iter()
    }

    /// Reduces the polynomial modulo `x_i^2 = x_i` and sums the moments of
    /// its monomials.
    pub fn evaluate(&self, p: &Polynomial) -> Result<Rational, PeError> {
        if p.nvars() != self.n {
            return Err(PeError::NvarsMismatch {
                expected: self.n,
                got: p.nvars(),
            });
        }
        let reduced = p.multilinear_reduce();
        let mut acc = Rational::zero();
        for (exp, coeff) in reduced.terms() {
            let s = exponent_subset(exp);
            match self.table.get(&s) {
                Some(v) => acc += coeff * v,
                None => {
                    return Err(PeError::MissingMoment {
                        set: s.iter().copied().collect(),
                    })
                }
            }
        }
        Ok(acc)
    }

    /// Drops all moments above `level`.
    pub fn truncate(&self, level: usize) -> Result<Self, PeError> {
        if level > self.level {
            return Err(PeError::LevelTooLow {
                need: level,
                have: self.level,
            });
        }
        let table = self
            .table
            .iter()
            .filter(|(s, _)| s.len() <= level)
            .map(|(s, v)| (s.clone(), v.clone()))
            .collect();
        Ok(PseudoExpectation {
            n: self.n,
            level,
            table,
        })
    }

    /// Bayes-conditions the table on `x_var = bit`, dropping one level. The
    /// branch must have nonzero probability; a zero denominator is reported
    /// as a degenerate branch, distinct from every other failure.
    pub fn condition(&self, var: usize, bit: bool) -> Result<Self, PeError> {
        if var >= self.n {
            return Err(PeError::VariableOutOfRange {
                var,
                nvars: self.n,
            });
        }
        if self.level < 2 {
            return Err(PeError::LevelTooLow {
                need: 2,
                have: self.level,
            });
        }
        let single: BTreeSet<usize> = [var].into_iter().collect();
        let p = self.table.get(&single).expect("level at least one");
        let denom = if bit { p.clone() } else { rat(1) - p };
        if denom.is_zero() {
            return Err(PeError::DegenerateBranch { var, bit });
        }
        let mut table = BTreeMap::new();
        for s in bounded_subsets(self.n, self.level - 1) {
            let mut with_var = s.clone();
            with_var.insert(var);
            let joined = self.table.get(&with_var).expect("within level");
            let num = if bit {
                joined.clone()
            } else {
                self.table.get(&s).expect("within level") - joined
            };
            table.insert(s, num / &denom);
        }
        Ok(PseudoExpectation {
            n: self.n,
            level: self.level - 1,
            table,
        })
    }

    pub fn to_json(&self) -> PseudoExpectationJson {
        let mut moments: Vec<MomentEntryJson> = self
            .table
            .iter()
            .map(|(s, v)| MomentEntryJson {
                set: s.iter().copied().collect(),
                value: format_rational(v),
            })
            .collect();
        moments.sort_by(|a, b| (a.set.len(), &a.set).cmp(&(b.set.len(), &b.set)));
        PseudoExpectationJson {
            n: self.n,
            level: self.level,
            moments,
        }
    }

    pub fn from_json(json: &PseudoExpectationJson) -> Result<Self, PeJsonError> {
        let mut table = BTreeMap::new();
        for entry in &json.moments {
            let v = parse_rational(&entry.value)
                .map_err(|e| PeJsonError::BadRational(e.to_string()))?;
            table.insert(entry.set.iter().copied().collect(), v);
        }
        PseudoExpectation::new(json.n, json.level, table).map_err(PeJsonError::Invalid)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PseudoExpectationJson {
    pub n: usize,
    pub level: usize,
    pub moments: Vec<MomentEntryJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MomentEntryJson {
    pub set: Vec<usize>,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PeJsonError {
    #[error("malformed rational: {0}")]
    BadRational(String),
    #[error(transparent)]
    Invalid(PeError),
}

/// A localized moment matrix: rows and columns are variable subsets, the
/// entry at `(I, J)` is the table value of `g * x_(I union J)` reduced
/// modulo `x_i^2 = x_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentMatrix {
    pub index_sets: Vec<BTreeSet<usize>>,
    pub matrix: SymmetricMatrix,
}

impl MomentMatrix {
    pub fn to_json(&self) -> MomentMatrixJson {
        MomentMatrixJson {
            index_sets: self
                .index_sets
                .iter()
                .map(|s| s.iter().copied().collect())
                .collect(),
            matrix: self.matrix.to_json(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MomentMatrixJson {
    pub index_sets: Vec<Vec<usize>>,
    pub matrix: crate::matrixkit::SymmetricMatrixJson,
}

/// Builds the moment matrix of `g` at the given even degree: index sets run
/// over subsets of size at most `(degree - deg g) / 2` with `g` reduced
/// first, so every entry stays within the table's level.
pub fn moment_matrix(
    pe: &PseudoExpectation,
    g: &Polynomial,
    degree: usize,
) -> Result<MomentMatrix, PeError> {
    if g.nvars() != pe.nvars() {
        return Err(PeError::NvarsMismatch {
            expected: pe.nvars(),
            got: g.nvars(),
        });
    }
    if pe.level() < degree {
        return Err(PeError::LevelTooLow {
            need: degree,
            have: pe.level(),
        });
    }
    let n = pe.nvars();
    let reduced = g.multilinear_reduce();
    let dg = reduced.total_degree().max(0) as usize;
    if dg > degree {
        return Ok(MomentMatrix {
            index_sets: Vec::new(),
            matrix: SymmetricMatrix::zero(0),
        });
    }
    let half = (degree - dg) / 2;
    let sets = bounded_subsets(n, half);
    let m = sets.len();
    let mut rows = vec![vec![Rational::zero(); m]; m];
    for i in 0..m {
        for j in i..m {
            let union: BTreeSet<usize> = sets[i].union(&sets[j]).copied().collect();
            let mono = Polynomial::monomial(n, subset_exponent(n, &union), rat(1))
                .expect("exponent length matches");
            let v = pe.evaluate(&(&reduced * &mono))?;
            rows[i][j] = v.clone();
            rows[j][i] = v;
        }
    }
    let matrix = SymmetricMatrix::from_rows(rows).expect("symmetric by construction");
    Ok(MomentMatrix {
        index_sets: sets,
        matrix,
    })
}

/// The inclusion matrix with alternating signs over the power set of `k`:
/// entry `(I, J)` is `(-1)^(|J| - |I|)` when `I` is a subset of `J` and zero
/// otherwise. Subsets are ordered by (size, elements). Conjugating a
/// union-indexed moment block by this matrix diagonalizes it exactly.
pub fn mobius_matrix(k: &BTreeSet<usize>) -> (Vec<BTreeSet<usize>>, Vec<Vec<Rational>>) {
    let elems: Vec<usize> = k.iter().copied().collect();
    let subsets = bounded_subsets(elems.len(), elems.len())
        .into_iter()
        .map(|s| s.into_iter().map(|i| elems[i]).collect::<BTreeSet<usize>>())
        .collect::<Vec<_>>();
    let m = subsets.len();
    let mut rows = vec![vec![Rational::zero(); m]; m];
    for r in 0..m {
        for c in 0..m {
            if subsets[r].is_subset(&subsets[c]) {
                let diff = (subsets[c].len() - subsets[r].len()) as u32;
                rows[r][c] = if diff % 2 == 0 { rat(1) } else { rat(-1) };
            }
        }
    }
    (subsets, rows)
}

/// Both sides of the exact diagonalization: the moment block over the power
/// set of `K` conjugated by the signed inclusion matrix, next to the point
/// masses computed directly as values of `g * x_S * (1-x)_(K minus S)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MobiusDiagonal {
    pub index_sets: Vec<BTreeSet<usize>>,
    pub transformed: Vec<Vec<Rational>>,
    pub junta_masses: Vec<Rational>,
}

impl MobiusDiagonal {
    /// True exactly when the conjugated block is diagonal and its diagonal
    /// agrees with the directly computed masses.
    pub fn is_exactly_diagonal(&self) -> bool {
        let m = self.index_sets.len();
        for r in 0..m {
            for c in 0..m {
                if r != c && !self.transformed[r][c].is_zero() {
                    return false;
                }
            }
            if self.transformed[r][r] != self.junta_masses[r] {
                return false;
            }
        }
        true
    }
}

pub fn mobius_diagonalize(
    pe: &PseudoExpectation,
    g: &Polynomial,
    k: &BTreeSet<usize>,
) -> Result<MobiusDiagonal, PeError> {
    let n = pe.nvars();
    if g.nvars() != n {
        return Err(PeError::NvarsMismatch {
            expected: n,
            got: g.nvars(),
        });
    }
    if let Some(&v) = k.iter().max() {
        if v >= n {
            return Err(PeError::VariableOutOfRange { var: v, nvars: n });
        }
    }
    let reduced = g.multilinear_reduce();
    let dg = reduced.total_degree().max(0) as usize;
    let need = k.len() + dg;
    if pe.level() < need {
        return Err(PeError::LevelTooLow {
            need,
            have: pe.level(),
        });
    }
    let (subsets, zinv) = mobius_matrix(k);
    let m = subsets.len();
    let mut block = vec![vec![Rational::zero(); m]; m];
    for i in 0..m {
        for j in 0..m {
            let union: BTreeSet<usize> = subsets[i].union(&subsets[j]).copied().collect();
            let mono = Polynomial::monomial(n, subset_exponent(n, &union), rat(1))
                .expect("exponent length matches");
            block[i][j] = pe.evaluate(&(&reduced * &mono))?;
        }
    }
    // transformed = Zinv * block * Zinv^T, all exact.
    let mut left = vec![vec![Rational::zero(); m]; m];
    for r in 0..m {
        for c in 0..m {
            let mut acc = Rational::zero();
            for t in 0..m {
                if !zinv[r][t].is_zero() {
                    acc += &zinv[r][t] * &block[t][c];
                }
            }
            left[r][c] = acc;
        }
    }
    let mut transformed = vec![vec![Rational::zero(); m]; m];
    for r in 0..m {
        for c in 0..m {
            let mut acc = Rational::zero();
            for t in 0..m {
                if !zinv[c][t].is_zero() {
                    acc += &left[r][t] * &zinv[c][t];
                }
            }
            transformed[r][c] = acc;
        }
    }
    let mut junta_masses = Vec::with_capacity(m);
    for s in &subsets {
        let zeros: BTreeSet<usize> = k.difference(s).copied().collect();
        let indicator = JuntaTerm::new(s.clone(), zeros, rat(1))
            .expect("subsets of k are disjoint from their complements")
            .polynomial(n);
        junta_masses.push(pe.evaluate(&(&reduced * &indicator))?);
    }
    let diag = MobiusDiagonal {
        index_sets: subsets,
        transformed,
        junta_masses,
    };
    debug_assert!(diag.is_exactly_diagonal());
    Ok(diag)
}

/// A principal-minor violation found in some localized moment matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualViolation {
    /// Constraint index, or `None` for the constant localizer `1`.
    pub constraint: Option<usize>,
    pub row_set: Vec<usize>,
    pub col_set: Vec<usize>,
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SdsosDualReport {
    pub passed: bool,
    pub violations: Vec<DualViolation>,
}

/// Checks the scaled-diagonally-dominant dual conditions: every localized
/// moment matrix must have nonnegative diagonal entries and nonnegative
/// two-by-two principal minors.
pub fn sdsos_dual_check(
    pe: &PseudoExpectation,
    system: &ConstraintSystem,
    degree: usize,
) -> Result<SdsosDualReport, PeError> {
    let mut violations = Vec::new();
    let localizers = localizer_list(pe.nvars(), system);
    for (tag, g) in &localizers {
        let mm = moment_matrix(pe, g, degree)?;
        let m = mm.index_sets.len();
        for i in 0..m {
            let d = mm.matrix.get(i, i);
            if d.is_negative() {
                violations.push(DualViolation {
                    constraint: *tag,
                    row_set: mm.index_sets[i].iter().copied().collect(),
                    col_set: mm.index_sets[i].iter().copied().collect(),
                    value: d.clone(),
                });
            }
        }
        for i in 0..m {
            for j in (i + 1)..m {
                let det = mm.matrix.get(i, i) * mm.matrix.get(j, j)
                    - mm.matrix.get(i, j) * mm.matrix.get(i, j);
                if det.is_negative() {
                    violations.push(DualViolation {
                        constraint: *tag,
                        row_set: mm.index_sets[i].iter().copied().collect(),
                        col_set: mm.index_sets[j].iter().copied().collect(),
                        value: det,
                    });
                }
            }
        }
    }
    Ok(SdsosDualReport {
        passed: violations.is_empty(),
        violations,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SaDualViolation {
    pub constraint: Option<usize>,
    pub ones: Vec<usize>,
    pub zeros: Vec<usize>,
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SaDualReport {
    pub passed: bool,
    pub violations: Vec<SaDualViolation>,
}

/// Checks the junta-mass dual conditions at the given even degree: for each
/// localizer `g` and disjoint pair `(I, J)` whose product with `g` reduces
/// to degree at most `degree / 2`, the table value of `g x_I (1-x)_J` must
/// be nonnegative.
pub fn sa_dual_check(
    pe: &PseudoExpectation,
    system: &ConstraintSystem,
    degree: usize,
) -> Result<SaDualReport, PeError> {
    let n = pe.nvars();
    let d = degree / 2;
    if pe.level() < d {
        return Err(PeError::LevelTooLow {
            need: d,
            have: pe.level(),
        });
    }
    let mut violations = Vec::new();
    let localizers = localizer_list(n, system);
    for (tag, g) in &localizers {
        let reduced = g.multilinear_reduce();
        if reduced.is_zero() {
            continue;
        }
        for (ones, zeros) in disjoint_pairs(n, d) {
            let indicator = JuntaTerm::new(ones.clone(), zeros.clone(), rat(1))
                .expect("pairs are disjoint")
                .polynomial(n);
            let product = (&reduced * &indicator).multilinear_reduce();
            if product.is_zero() || product.total_degree() > d as i64 {
                continue;
            }
            let value = pe.evaluate(&product)?;
            if value.is_negative() {
                violations.push(SaDualViolation {
                    constraint: *tag,
                    ones: ones.iter().copied().collect(),
                    zeros: zeros.iter().copied().collect(),
                    value,
                });
            }
        }
    }
    Ok(SaDualReport {
        passed: violations.is_empty(),
        violations,
    })
}

fn localizer_list(
    n: usize,
    system: &ConstraintSystem,
) -> Vec<(Option<usize>, Polynomial)> {
    let mut out = vec![(None, Polynomial::one(n))];
    for (i, c) in system.constraints().iter().enumerate() {
        out.push((Some(i), c.poly.clone()));
    }
    out
}

/// All disjoint ordered pairs of subsets with combined size at most `d`,
/// deterministically ordered.
pub fn disjoint_pairs(n: usize, d: usize) -> Vec<(BTreeSet<usize>, BTreeSet<usize>)> {
    let mut out = Vec::new();
    for support in bounded_subsets(n, d) {
        let elems: Vec<usize> = support.iter().copied().collect();
        let k = elems.len();
        for mask in 0..(1usize << k) {
            let mut ones = BTreeSet::new();
            let mut zeros = BTreeSet::new();
            for (j, &v) in elems.iter().enumerate() {
                if (mask >> j) & 1 == 1 {
                    ones.insert(v);
                } else {
                    zeros.insert(v);
                }
            }
            out.push((ones, zeros));
        }
    }
    out
}

/// One term of an expansion in the ideal of the cube equations:
/// `coeff * x^monomial * prod_i (x_i^2 - x_i)^powers[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubeIdealTerm {
    pub coeff: Rational,
    pub monomial: Exponent,
    pub powers: Vec<u32>,
}

impl CubeIdealTerm {
    pub fn polynomial(&self, n: usize) -> Polynomial {
        let mut p = Polynomial::monomial(n, self.monomial.clone(), self.coeff.clone())
            .expect("exponent length matches");
        for (i, &k) in self.powers.iter().enumerate() {
            if k > 0 {
                p = &p * &cube_generator(n, i).pow(k);
            }
        }
        p
    }
}

/// The generator `x_i^2 - x_i`.
pub fn cube_generator(n: usize, i: usize) -> Polynomial {
    let sq = Exponent::new((0..n).map(|j| if j == i { 2 } else { 0 }).collect());
    Polynomial::from_terms(
        n,
        vec![
            (sq, rat(1)),
            (Exponent::unit(n, i), rat(-1)),
        ],
    )
    .expect("exponent lengths match")
}

/// Expands one power `x^a` (single variable) as multilinear part plus
/// multiples of `(x^2 - x)`: repeatedly splits `x^a = x^(a-1) + x^(a-2)(x^2 - x)`.
fn expand_power(a: u32) -> Vec<(Rational, u32, u32)> {
    let mut acc: BTreeMap<(u32, u32), Rational> = BTreeMap::new();
    let mut work = vec![(rat(1), a, 0u32)];
    while let Some((c, a, j)) = work.pop() {
        if a <= 1 {
            *acc.entry((a, j)).or_insert_with(Rational::zero) += c;
        } else {
            work.push((c.clone(), a - 1, j));
            work.push((c, a - 2, j + 1));
        }
    }
    acc.into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|((m, j), c)| (c, m, j))
        .collect()
}

/// Expands a monomial exactly as its multilinear reduction plus ideal terms;
/// every emitted term satisfies `deg(monomial) + 2 * sum(powers) <= deg(a)`.
pub fn expand_monomial_in_cube_ideal(a: &Exponent) -> Vec<CubeIdealTerm> {
    let n = a.len();
    let mut partial: Vec<(Rational, Vec<u32>, Vec<u32>)> =
        vec![(rat(1), Vec::new(), Vec::new())];
    for &ai in a.entries() {
        let expansions = expand_power(ai);
        let mut next = Vec::with_capacity(partial.len() * expansions.len());
        for (c, mono, pows) in &partial {
            for (ec, em, ej) in &expansions {
                let mut mono2 = mono.clone();
                let mut pows2 = pows.clone();
                mono2.push(*em);
                pows2.push(*ej);
                next.push((c * ec, mono2, pows2));
            }
        }
        partial = next;
    }
    let mut merged: BTreeMap<(Exponent, Vec<u32>), Rational> = BTreeMap::new();
    for (c, mono, pows) in partial {
        debug_assert_eq!(mono.len(), n);
        let key = (Exponent::new(mono), pows);
        *merged.entry(key).or_insert_with(Rational::zero) += c;
    }
    merged
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|((monomial, powers), coeff)| {
            debug_assert!(
                monomial.total_degree() + 2 * powers.iter().sum::<u32>() <= a.total_degree()
            );
            CubeIdealTerm {
                coeff,
                monomial,
                powers,
            }
        })
        .collect()
}

/// Expands a whole polynomial in the cube ideal basis; the terms with all
/// powers zero sum to the multilinear reduction.
pub fn polynomial_cube_decomposition(p: &Polynomial) -> Vec<CubeIdealTerm> {
    let mut merged: BTreeMap<(Exponent, Vec<u32>), Rational> = BTreeMap::new();
    for (exp, coeff) in p.terms() {
        for t in expand_monomial_in_cube_ideal(exp) {
            *merged
                .entry((t.monomial, t.powers))
                .or_insert_with(Rational::zero) += coeff * &t.coeff;
        }
    }
    merged
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|((monomial, powers), coeff)| CubeIdealTerm {
            coeff,
            monomial,
            powers,
        })
        .collect()
}

/// Rebuilds the expansion and compares it with `p`, exactly.
pub fn cube_decomposition_reconstructs(p: &Polynomial, terms: &[CubeIdealTerm]) -> bool {
    let n = p.nvars();
    let mut acc = Polynomial::zero(n);
    for t in terms {
        acc = &acc + &t.polynomial(n);
    }
    acc == *p
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SaError {
    #[error("the constraint system must contain both cube generators x_i^2 - x_i and x_i - x_i^2 for every variable")]
    MissingCube,
    #[error(transparent)]
    Budget(BudgetExceeded),
    #[error(transparent)]
    Lp(LpError),
    #[error("objective has {got} variables, system has {expected}")]
    NvarsMismatch { expected: usize, got: usize },
}

/// Result of the junta lower-bound program.
#[derive(Debug, Clone)]
pub enum SaOutcome {
    /// The best bound together with an exact certificate for it.
    Bounded {
        bound: Rational,
        certificate: Certificate,
    },
    /// No bound is expressible at this degree; carries the program and its
    /// refutation, which `exactlp::check_certificate` validates.
    Infeasible {
        problem: LPProblem,
        outcome: LPOutcome,
    },
    /// The bound grows without limit (the constraints exclude every cube
    /// point); carries the witness ray.
    Unbounded {
        problem: LPProblem,
        outcome: LPOutcome,
    },
}

/// Maximizes `lambda` such that `f - lambda` is a nonnegative combination of
/// indicator terms times constraint products, working modulo the cube
/// equations with a budget on the column count. The certificate restores the
/// exact polynomial identity by explicit multiples of the cube generators.
///
/// Degree accounting: a column `(t, P)` participates iff the multilinear
/// reduction of `t * P` has degree at most `degree / 2`.
pub fn sa_solve(
    f: &Polynomial,
    system: &ConstraintSystem,
    degree: usize,
    shape: Shape,
    budget: &Budget,
) -> Result<SaOutcome, SaError> {
    let n = system.nvars();
    if f.nvars() != n {
        return Err(SaError::NvarsMismatch {
            expected: n,
            got: f.nvars(),
        });
    }
    if !system.has_hypercube() {
        return Err(SaError::MissingCube);
    }
    let d = degree / 2;
    let cube: BTreeSet<usize> = system.cube_constraint_indices();
    let mut products: Vec<(Vec<usize>, Polynomial)> = Vec::new();
    match shape {
        Shape::Putinar => {
            products.push((Vec::new(), Polynomial::one(n)));
            for (i, c) in system.constraints().iter().enumerate() {
                if !cube.contains(&i) {
                    products.push((vec![i], c.poly.clone()));
                }
            }
        }
        Shape::Schmuedgen => {
            let mut stack = vec![(Vec::new(), Polynomial::one(n), 0usize)];
            while let Some((indices, poly, start)) = stack.pop() {
                budget
                    .check(products.len() as u64 + 1)
                    .map_err(SaError::Budget)?;
                products.push((indices.clone(), poly.clone()));
                for i in start..system.len() {
                    if cube.contains(&i) {
                        continue;
                    }
                    let next = &poly * &system.constraints()[i].poly;
                    if next.total_degree() <= degree as i64 && !next.is_zero() {
                        let mut idx = indices.clone();
                        idx.push(i);
                        stack.push((idx, next, i));
                    }
                }
            }
            products.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
        }
    }
    let patterns = disjoint_pairs(n, d);
    budget
        .check((products.len() as u64).saturating_mul(patterns.len() as u64))
        .map_err(SaError::Budget)?;

    // Columns: nonzero reductions of indicator * product within the budget.
    struct Column {
        product_id: usize,
        ones: BTreeSet<usize>,
        zeros: BTreeSet<usize>,
        reduced: Polynomial,
    }
    let mut columns: Vec<Column> = Vec::new();
    for (product_id, (_, p)) in products.iter().enumerate() {
        let p_red = p.multilinear_reduce();
        if p_red.is_zero() {
            continue;
        }
        for (ones, zeros) in &patterns {
            let indicator = JuntaTerm::new(ones.clone(), zeros.clone(), rat(1))
                .expect("pairs are disjoint")
                .polynomial(n);
            let reduced = (&indicator * &p_red).multilinear_reduce();
            if reduced.is_zero() || reduced.total_degree() > d as i64 {
                continue;
            }
            columns.push(Column {
                product_id,
                ones: ones.clone(),
                zeros: zeros.clone(),
                reduced,
            });
        }
    }

    let f_red = f.multilinear_reduce();
    let mut row_exps: BTreeSet<Exponent> = BTreeSet::new();
    row_exps.insert(Exponent::zeros(n));
    for e in f_red.support() {
        row_exps.insert(e);
    }
    for col in &columns {
        for e in col.reduced.support() {
            row_exps.insert(e);
        }
    }
    let rows: Vec<Exponent> = row_exps.into_iter().collect();

    // Variable 0 is the free bound, the rest are the column weights.
    let nvars_lp = 1 + columns.len();
    let zero_exp = Exponent::zeros(n);
    let mut constraints = Vec::with_capacity(rows.len());
    for row in &rows {
        let mut coeffs = vec![Rational::zero(); nvars_lp];
        if *row == zero_exp {
            coeffs[0] = rat(1);
        }
        for (ci, col) in columns.iter().enumerate() {
            let c = col.reduced.coeff(row);
            if !c.is_zero() {
                coeffs[ci + 1] = c;
            }
        }
        constraints.push(LinearConstraint::new(coeffs, Rel::Eq, f_red.coeff(row)));
    }
    let mut objective = vec![Rational::zero(); nvars_lp];
    objective[0] = rat(1);
    let mut bounds = vec![VarBound::free()];
    bounds.extend(std::iter::repeat(VarBound::at_least(rat(0))).take(columns.len()));
    let problem = LPProblem::new(Some(objective), constraints, bounds);
    let outcome = exactlp::solve(&problem).map_err(SaError::Lp)?;
    debug_assert!(exactlp::check_certificate(&problem, &outcome));
    let (primal, bound) = match outcome {
        LPOutcome::Optimal {
            primal, objective, ..
        } => (primal, objective),
        out @ LPOutcome::Infeasible { .. } => {
            return Ok(SaOutcome::Infeasible {
                problem,
                outcome: out,
            })
        }
        out @ LPOutcome::Unbounded { .. } => {
            return Ok(SaOutcome::Unbounded {
                problem,
                outcome: out,
            })
        }
    };

    // Group the active columns by product and rebuild the exact identity.
    let mut by_product: BTreeMap<usize, Vec<JuntaTerm>> = BTreeMap::new();
    for (ci, col) in columns.iter().enumerate() {
        let alpha = &primal[ci + 1];
        if alpha.is_zero() {
            continue;
        }
        by_product
            .entry(col.product_id)
            .or_default()
            .push(
                JuntaTerm::new(col.ones.clone(), col.zeros.clone(), alpha.clone())
                    .expect("weights from the program are nonnegative"),
            );
    }
    let mut entries = Vec::new();
    let mut combination = Polynomial::zero(n);
    for (product_id, terms) in by_product {
        let (indices, p_raw) = &products[product_id];
        let mut ground_poly = Polynomial::zero(n);
        for t in &terms {
            ground_poly = &ground_poly + &t.polynomial(n);
        }
        combination = &combination + &(&ground_poly * p_raw);
        entries.push(CertEntry {
            ground: GroundElement::Junta { terms },
            product: indices.clone(),
        });
    }
    let target = f - &Polynomial::constant(n, bound.clone());
    let residual = &target - &combination;
    debug_assert!(residual.multilinear_reduce().is_zero());
    entries.extend(
        hierarchy::cube_correction_entries(&residual, &[], system)
            .expect("hypercube presence checked above"),
    );
    let all_single = entries.iter().all(|e| e.product.len() <= 1);
    let certificate = Certificate {
        kind: CertKind::Sa,
        shape: if all_single && shape == Shape::Putinar {
            Shape::Putinar
        } else {
            Shape::Schmuedgen
        },
        degree,
        entries,
    };
    debug_assert!(hierarchy::verify(f, &bound, system, &certificate).accepted);
    Ok(SaOutcome::Bounded { bound, certificate })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::ratio;

    fn poly(n: usize, terms: &[(&[u32], i64)]) -> Polynomial {
        Polynomial::from_terms(
            n,
            terms
                .iter()
                .map(|(e, c)| (Exponent::new(e.to_vec()), rat(*c)))
                .collect::<Vec<_>>(),
        )
        .unwrap()
    }

    fn set(elems: &[usize]) -> BTreeSet<usize> {
        elems.iter().copied().collect()
    }

    #[test]
    fn kronecker_delta_expands_the_corner_indicator() {
        let delta = kronecker_delta(&[false, false]);
        assert_eq!(delta, poly(2, &[(&[0, 0], 1), (&[1, 0], -1), (&[0, 1], -1), (&[1, 1], 1)]));
        let sum: Rational = delta.eval(&[rat(0), rat(0)]).unwrap();
        assert_eq!(sum, rat(1));
        assert_eq!(delta.eval(&[rat(1), rat(0)]).unwrap(), rat(0));
    }

    #[test]
    fn junta_from_values_emits_one_term_per_support_point() {
        // The function 1 - x0 x1 on the square: value one except at (1,1).
        let mut values = BTreeMap::new();
        values.insert(vec![false, false], rat(1));
        values.insert(vec![true, false], rat(1));
        values.insert(vec![false, true], rat(1));
        values.insert(vec![true, true], rat(0));
        let terms = junta_from_values(2, &set(&[0, 1]), &values).unwrap();
        assert_eq!(terms.len(), 3);
        let mut total = Polynomial::zero(2);
        for t in &terms {
            assert_eq!(*t.weight(), rat(1));
            total = &total + &t.polynomial(2);
        }
        assert_eq!(total, poly(2, &[(&[0, 0], 1), (&[1, 1], -1)]));
    }

    #[test]
    fn junta_from_values_rejects_negative_values() {
        let mut values = BTreeMap::new();
        values.insert(vec![false], rat(-1));
        let err = junta_from_values(1, &set(&[0]), &values).unwrap_err();
        assert_eq!(err, JuntaError::NegativeValue);
    }

    #[test]
    fn motzkin_like_circuit_tabulates_to_three_corners() {
        let f = poly(2, &[(&[0, 0], 1), (&[4, 2], 1), (&[2, 4], 1), (&[2, 2], -3)]);
        let c = Circuit::from_polynomial(&f).unwrap();
        let terms = circuit_to_junta(&c).unwrap();
        assert_eq!(terms.len(), 3);
        let expected = [
            (set(&[]), set(&[0, 1])),
            (set(&[0]), set(&[1])),
            (set(&[1]), set(&[0])),
        ];
        for (ones, zeros) in &expected {
            let found = terms
                .iter()
                .find(|t| t.ones() == ones && t.zeros() == zeros)
                .expect("corner present");
            assert_eq!(*found.weight(), rat(1));
        }
        // The combination matches the circuit everywhere on the cube.
        let mut total = Polynomial::zero(2);
        for t in &terms {
            total = &total + &t.polynomial(2);
        }
        assert_eq!(total, f.multilinear_reduce());
    }

    #[test]
    fn degenerate_circuit_splits_term_by_term() {
        // x^2 + 4 x^2 y^2 as monomial squares.
        let f = poly(2, &[(&[2, 0], 1), (&[2, 2], 4)]);
        let c = Circuit::from_polynomial(&f).unwrap();
        assert!(c.is_degenerate());
        let terms = circuit_to_junta(&c).unwrap();
        assert_eq!(terms.len(), 2);
        assert!(terms
            .iter()
            .any(|t| t.ones() == &set(&[0]) && t.zeros().is_empty() && *t.weight() == rat(1)));
        assert!(terms
            .iter()
            .any(|t| t.ones() == &set(&[0, 1]) && t.zeros().is_empty() && *t.weight() == rat(4)));
    }

    #[test]
    fn uniform_moments_fill_the_frozen_matrix() {
        let pe = PseudoExpectation::uniform(2, 2);
        let mm = moment_matrix(&pe, &Polynomial::one(2), 2).unwrap();
        assert_eq!(
            mm.index_sets,
            vec![set(&[]), set(&[0]), set(&[1])]
        );
        let expect = [
            [rat(1), ratio(1, 2), ratio(1, 2)],
            [ratio(1, 2), ratio(1, 2), ratio(1, 4)],
            [ratio(1, 2), ratio(1, 4), ratio(1, 2)],
        ];
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(*mm.matrix.get(i, j), expect[i][j]);
            }
        }
    }

    #[test]
    fn distribution_moments_count_support() {
        let points = vec![vec![false, false], vec![true, false], vec![false, true]];
        let w = vec![ratio(1, 2), ratio(1, 4), ratio(1, 4)];
        let pe = PseudoExpectation::from_distribution(2, &points, &w, 2).unwrap();
        assert_eq!(*pe.moment(&set(&[0])).unwrap(), ratio(1, 4));
        assert_eq!(*pe.moment(&set(&[1])).unwrap(), ratio(1, 4));
        assert_eq!(*pe.moment(&set(&[0, 1])).unwrap(), rat(0));
        let f = poly(2, &[(&[1, 0], 1), (&[0, 1], 1)]);
        assert_eq!(pe.evaluate(&f).unwrap(), ratio(1, 2));
    }

    #[test]
    fn conditioning_renormalizes_and_drops_a_level() {
        let pe = PseudoExpectation::uniform(2, 2);
        let cond = pe.condition(0, true).unwrap();
        assert_eq!(cond.level(), 1);
        assert_eq!(*cond.moment(&set(&[0])).unwrap(), rat(1));
        assert_eq!(*cond.moment(&set(&[1])).unwrap(), ratio(1, 2));
        let opposite = pe.condition(0, false).unwrap();
        assert_eq!(*opposite.moment(&set(&[0])).unwrap(), rat(0));
        assert_eq!(*opposite.moment(&set(&[1])).unwrap(), ratio(1, 2));
    }

    #[test]
    fn conditioning_a_sure_event_is_degenerate() {
        let pe = PseudoExpectation::point_mass(&[true, true], 2);
        let err = pe.condition(0, false).unwrap_err();
        assert_eq!(
            err,
            PeError::DegenerateBranch {
                var: 0,
                bit: false
            }
        );
        assert!(pe.condition(0, true).is_ok());
    }

    #[test]
    fn conditioning_matches_the_conditioned_distribution() {
        let points = vec![
            vec![false, false],
            vec![true, false],
            vec![true, true],
        ];
        let w = vec![ratio(1, 6), ratio(1, 3), ratio(1, 2)];
        let pe = PseudoExpectation::from_distribution(2, &points, &w, 3).unwrap();
        let cond = pe.condition(0, true).unwrap();
        // Conditioned on x0 = 1: points (1,0) and (1,1) with weights 2/5, 3/5.
        let direct = PseudoExpectation::from_distribution(
            2,
            &[vec![true, false], vec![true, true]],
            &[ratio(2, 5), ratio(3, 5)],
            2,
        )
        .unwrap();
        assert_eq!(cond, direct);
    }

    #[test]
    fn mobius_matrix_matches_frozen_small_cases() {
        let (sets, m) = mobius_matrix(&set(&[0]));
        assert_eq!(sets, vec![set(&[]), set(&[0])]);
        assert_eq!(m, vec![vec![rat(1), rat(-1)], vec![rat(0), rat(1)]]);

        let (sets2, m2) = mobius_matrix(&set(&[0, 1]));
        assert_eq!(
            sets2,
            vec![set(&[]), set(&[0]), set(&[1]), set(&[0, 1])]
        );
        let expect = [
            [1, -1, -1, 1],
            [0, 1, 0, -1],
            [0, 0, 1, -1],
            [0, 0, 0, 1],
        ];
        for r in 0..4 {
            for c in 0..4 {
                assert_eq!(m2[r][c], rat(expect[r][c]));
            }
        }
    }

    #[test]
    fn mobius_diagonalization_recovers_uniform_masses() {
        let pe = PseudoExpectation::uniform(2, 2);
        let one = Polynomial::one(2);
        let d1 = mobius_diagonalize(&pe, &one, &set(&[0])).unwrap();
        assert!(d1.is_exactly_diagonal());
        assert_eq!(d1.junta_masses, vec![ratio(1, 2), ratio(1, 2)]);

        let d2 = mobius_diagonalize(&pe, &one, &set(&[0, 1])).unwrap();
        assert!(d2.is_exactly_diagonal());
        assert_eq!(
            d2.junta_masses,
            vec![ratio(1, 4), ratio(1, 4), ratio(1, 4), ratio(1, 4)]
        );
    }

    #[test]
    fn mobius_diagonalization_is_exact_for_arbitrary_tables() {
        // Moments that no distribution matches still diagonalize exactly.
        let mut table = BTreeMap::new();
        table.insert(set(&[]), rat(1));
        table.insert(set(&[0]), ratio(7, 5));
        table.insert(set(&[1]), ratio(-2, 3));
        table.insert(set(&[0, 1]), ratio(11, 7));
        let pe = PseudoExpectation::new(2, 2, table).unwrap();
        let d = mobius_diagonalize(&pe, &Polynomial::one(2), &set(&[0, 1])).unwrap();
        assert!(d.is_exactly_diagonal());
    }

    #[test]
    fn sdsos_dual_check_flags_a_bad_minor() {
        let system = ConstraintSystem::new(2);
        let pe = PseudoExpectation::uniform(2, 2);
        assert!(sdsos_dual_check(&pe, &system, 2).unwrap().passed);

        let mut table = BTreeMap::new();
        table.insert(set(&[]), rat(1));
        table.insert(set(&[0]), rat(2));
        table.insert(set(&[1]), ratio(1, 2));
        table.insert(set(&[0, 1]), ratio(1, 2));
        let bad = PseudoExpectation::new(2, 2, table).unwrap();
        let report = sdsos_dual_check(&bad, &system, 2).unwrap();
        assert!(!report.passed);
        assert!(report
            .violations
            .iter()
            .any(|v| v.constraint.is_none() && v.value.is_negative()));
    }

    #[test]
    fn sa_dual_check_flags_negative_masses() {
        let system = ConstraintSystem::new(2);
        let pe = PseudoExpectation::uniform(2, 4);
        assert!(sa_dual_check(&pe, &system, 4).unwrap().passed);

        let mut table = BTreeMap::new();
        table.insert(set(&[]), rat(1));
        table.insert(set(&[0]), ratio(1, 4));
        table.insert(set(&[1]), ratio(1, 4));
        table.insert(set(&[0, 1]), ratio(1, 2));
        let bad = PseudoExpectation::new(2, 2, table).unwrap();
        let report = sa_dual_check(&bad, &system, 4).unwrap();
        assert!(!report.passed);
        // The mass of x0 (1 - x1) is 1/4 - 1/2 < 0.
        assert!(report
            .violations
            .iter()
            .any(|v| v.ones == vec![0] && v.zeros == vec![1]));
    }

    #[test]
    fn fourth_power_expands_in_the_cube_ideal() {
        let x4 = Exponent::new(vec![4]);
        let terms = expand_monomial_in_cube_ideal(&x4);
        // x^4 = x + (x^2 - x) + 2 x (x^2 - x) + (x^2 - x)^2.
        let expect: Vec<(i64, Vec<u32>, Vec<u32>)> = vec![
            (1, vec![1], vec![0]),
            (1, vec![0], vec![1]),
            (2, vec![1], vec![1]),
            (1, vec![0], vec![2]),
        ];
        assert_eq!(terms.len(), expect.len());
        for (c, m, p) in expect {
            assert!(terms.iter().any(|t| t.coeff == rat(c)
                && t.monomial == Exponent::new(m.clone())
                && t.powers == p));
        }
        let p = Polynomial::monomial(1, x4, rat(1)).unwrap();
        assert!(cube_decomposition_reconstructs(&p, &terms));
    }

    #[test]
    fn cube_decomposition_rebuilds_mixed_polynomials() {
        let p = poly(2, &[(&[3, 2], 5), (&[1, 1], -2), (&[0, 4], 7), (&[0, 0], 3)]);
        let terms = polynomial_cube_decomposition(&p);
        assert!(cube_decomposition_reconstructs(&p, &terms));
        let multilinear_part = terms
            .iter()
            .filter(|t| t.powers.iter().all(|&k| k == 0))
            .fold(Polynomial::zero(2), |acc, t| {
                &acc + &Polynomial::monomial(2, t.monomial.clone(), t.coeff.clone()).unwrap()
            });
        assert_eq!(multilinear_part, p.multilinear_reduce());
    }

    fn halfplane_system() -> ConstraintSystem {
        let g = poly(
            2,
            &[(&[0, 0], 3), (&[1, 0], -2), (&[0, 1], -2)],
        )
        .scale(&ratio(1, 2));
        let mut s = ConstraintSystem::new(2).with_hypercube();
        s.push("half", g).unwrap();
        s
    }

    #[test]
    fn halfplane_bound_tightens_from_degree_two_to_four() {
        let f = poly(2, &[(&[1, 0], -1), (&[0, 1], -1)]);
        let system = halfplane_system();
        let budget = Budget::default();
        match sa_solve(&f, &system, 2, Shape::Putinar, &budget).unwrap() {
            SaOutcome::Bounded { bound, certificate } => {
                assert_eq!(bound, ratio(-3, 2));
                let report = hierarchy::verify(&f, &bound, &system, &certificate);
                assert!(report.accepted, "failures: {:?}", report.failures);
            }
            _ => panic!("bounded program"),
        }
        match sa_solve(&f, &system, 4, Shape::Putinar, &budget).unwrap() {
            SaOutcome::Bounded { bound, certificate } => {
                assert_eq!(bound, rat(-1));
                let report = hierarchy::verify(&f, &bound, &system, &certificate);
                assert!(report.accepted, "failures: {:?}", report.failures);
            }
            _ => panic!("bounded program"),
        }
    }

    #[test]
    fn square_difference_needs_an_ideal_correction() {
        // x0 - x0^2 vanishes on the cube; the bound is zero and the whole
        // certificate is a cube-generator multiple.
        let f = poly(1, &[(&[1], 1), (&[2], -1)]);
        let system = ConstraintSystem::new(1).with_hypercube();
        match sa_solve(&f, &system, 2, Shape::Putinar, &Budget::default()).unwrap() {
            SaOutcome::Bounded { bound, certificate } => {
                assert_eq!(bound, rat(0));
                let report = hierarchy::verify(&f, &bound, &system, &certificate);
                assert!(report.accepted, "failures: {:?}", report.failures);
                assert!(certificate
                    .entries
                    .iter()
                    .any(|e| !e.product.is_empty()));
            }
            _ => panic!("bounded program"),
        }
    }

    #[test]
    fn empty_cube_system_bounds_any_objective() {
        // Only the cube equations: minimum of x0 + 2 x1 over the square is 0.
        let f = poly(2, &[(&[1, 0], 1), (&[0, 1], 2)]);
        let system = ConstraintSystem::new(2).with_hypercube();
        match sa_solve(&f, &system, 2, Shape::Putinar, &Budget::default()).unwrap() {
            SaOutcome::Bounded { bound, .. } => assert_eq!(bound, rat(0)),
            _ => panic!("bounded program"),
        }
    }

    #[test]
    fn tiny_budget_stops_the_solver() {
        let f = poly(2, &[(&[1, 0], -1), (&[0, 1], -1)]);
        let system = halfplane_system();
        let err = sa_solve(&f, &system, 4, Shape::Schmuedgen, &Budget::new(3)).unwrap_err();
        assert!(matches!(err, SaError::Budget(_)));
    }

    #[test]
    fn pseudoexpectation_json_round_trips() {
        let pe = PseudoExpectation::uniform(3, 2);
        let json = pe.to_json();
        let text = serde_json::to_string(&json).unwrap();
        let parsed: PseudoExpectationJson = serde_json::from_str(&text).unwrap();
        let back = PseudoExpectation::from_json(&parsed).unwrap();
        assert_eq!(pe, back);
    }

    #[test]
    fn incomplete_tables_are_rejected() {
        let mut table = BTreeMap::new();
        table.insert(set(&[]), rat(1));
        let err = PseudoExpectation::new(2, 1, table).unwrap_err();
        assert!(matches!(err, PeError::IncompleteTable { .. }));
    }
}
