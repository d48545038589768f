//! Circuit polynomials: sparse polynomials whose support is a set of even,
//! affinely independent points plus at most one extra term inside their
//! simplex. Nonnegativity of a circuit reduces to one exact comparison
//! against the weighted product of its outer coefficients, and membership
//! in the cone of sums of squares reduces to a mediated-set test, so both
//! classifications run in pure rational arithmetic.

use std::cmp::Ordering;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::exactlp::{LPOutcome, LPProblem};
use crate::matrixkit::{self, SddOutcome, SymmetricMatrix};
use crate::polycore::{Exponent, Polynomial, TermJson};
use crate::polytope::{
    self, classify_simplex, maximal_mediated_set, PointSet, SimplexClassifyError, SimplexKind,
};
use crate::ratio::{format_rational, parse_rational, rat, rational_abs, rational_pow, Rational};

/// Exponent vector as a lattice point.
pub fn exponent_point(e: &Exponent) -> Vec<i64> {
    e.entries().iter().map(|&c| i64::from(c)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CircuitError {
    #[error("a circuit needs at least one outer term")]
    NoOuterTerms,
    #[error("outer exponent {0:?} appears twice")]
    DuplicateOuter(Vec<u32>),
    #[error("outer exponent {0:?} has an odd coordinate")]
    OuterNotEven(Vec<u32>),
    #[error("outer coefficient at {0:?} is not positive")]
    OuterNotPositive(Vec<u32>),
    #[error("outer exponents are not affinely independent")]
    OuterNotSimplex,
    #[error("inner coefficient is zero")]
    InnerZero,
    #[error("inner exponent {0:?} is not strictly inside the outer simplex")]
    InnerNotInterior(Vec<u32>),
    #[error("support splits into more than one non-vertex term")]
    TooManyInnerTerms,
    #[error("exponent lengths disagree")]
    MixedDimensions,
}

/// A circuit polynomial, stored as its outer terms (sorted by exponent)
/// plus an optional inner term. A missing inner term is the degenerate
/// case: a nonnegative combination of even powers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    n: usize,
    outer: Vec<(Exponent, Rational)>,
    inner: Option<(Exponent, Rational)>,
}

impl Circuit {
    pub fn new(
        outer: Vec<(Exponent, Rational)>,
        inner: Option<(Exponent, Rational)>,
    ) -> Result<Self, CircuitError> {
        if outer.is_empty() {
            return Err(CircuitError::NoOuterTerms);
        }
        let n = outer[0].0.len();
        for (e, _) in &outer {
            if e.len() != n {
                return Err(CircuitError::MixedDimensions);
            }
        }
        if let Some((e, _)) = &inner {
            if e.len() != n {
                return Err(CircuitError::MixedDimensions);
            }
        }
        let mut outer = outer;
        outer.sort_by(|a, b| a.0.cmp(&b.0));
        for w in outer.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(CircuitError::DuplicateOuter(w[0].0.entries().to_vec()));
            }
        }
        for (e, c) in &outer {
            if !e.is_even() {
                return Err(CircuitError::OuterNotEven(e.entries().to_vec()));
            }
            if !c.is_positive() {
                return Err(CircuitError::OuterNotPositive(e.entries().to_vec()));
            }
        }
        let vert_set = PointSet::from_points(n, outer.iter().map(|(e, _)| exponent_point(e)))
            .expect("consistent dimension");
        if !polytope::is_simplex(&vert_set) {
            return Err(CircuitError::OuterNotSimplex);
        }
        if let Some((e, c)) = &inner {
            if c.is_zero() {
                return Err(CircuitError::InnerZero);
            }
            let verts: Vec<Vec<i64>> = outer.iter().map(|(v, _)| exponent_point(v)).collect();
            let q: Vec<Rational> = exponent_point(e).iter().map(|&x| Rational::from_integer(x.into())).collect();
            if !polytope::strictly_inside_simplex(&verts, &q) {
                return Err(CircuitError::InnerNotInterior(e.entries().to_vec()));
            }
        }
        Ok(Circuit { n, outer, inner })
    }

    /// Splits a polynomial into a circuit: the vertices of its Newton
    /// polytope become the outer terms, and at most one point may remain.
    pub fn from_polynomial(f: &Polynomial) -> Result<Self, CircuitError> {
        let vertices = polytope::newton_vertices(f);
        let mut outer = Vec::new();
        let mut rest = Vec::new();
        for e in f.support() {
            if vertices.contains(&exponent_point(&e)) {
                outer.push((e.clone(), f.coeff(&e)));
            } else {
                rest.push((e.clone(), f.coeff(&e)));
            }
        }
        if rest.len() > 1 {
            return Err(CircuitError::TooManyInnerTerms);
        }
        Circuit::new(outer, rest.into_iter().next())
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn outer_terms(&self) -> &[(Exponent, Rational)] {
        &self.outer
    }

    pub fn inner_term(&self) -> Option<&(Exponent, Rational)> {
        self.inner.as_ref()
    }

    pub fn is_degenerate(&self) -> bool {
        self.inner.is_none()
    }

    /// Multiplies every coefficient by a positive weight.
    pub fn scale(&self, w: &Rational) -> Circuit {
        assert!(w.is_positive(), "circuit weights must stay positive");
        Circuit {
            n: self.n,
            outer: self
                .outer
                .iter()
                .map(|(e, c)| (e.clone(), c * w))
                .collect(),
            inner: self.inner.as_ref().map(|(e, c)| (e.clone(), c * w)),
        }
    }

    pub fn polynomial(&self) -> Polynomial {
        let mut terms: Vec<(Exponent, Rational)> = self.outer.clone();
        if let Some(t) = &self.inner {
            terms.push(t.clone());
        }
        Polynomial::from_terms(self.n, terms).expect("consistent dimension")
    }

    /// Barycentric weights of the inner exponent with respect to the outer
    /// exponents, in stored order. `None` for degenerate circuits.
    pub fn lambda(&self) -> Option<Vec<Rational>> {
        let (beta, _) = self.inner.as_ref()?;
        let verts: Vec<Vec<i64>> = self.outer.iter().map(|(v, _)| exponent_point(v)).collect();
        let q: Vec<Rational> = exponent_point(beta)
            .iter()
            .map(|&x| Rational::from_integer(x.into()))
            .collect();
        let coords =
            polytope::barycentric_coordinates(&verts, &q).expect("validated interior point");
        Some(coords)
    }

    /// Compares the absolute inner coefficient against the circuit bound
    /// `prod_j (c_j / lambda_j)^(lambda_j)`. The comparison is exact: both
    /// sides are raised to the least common denominator of the weights.
    /// `None` for degenerate circuits.
    pub fn inner_versus_bound(&self) -> Option<Ordering> {
        let (_, inner_coeff) = self.inner.as_ref()?;
        let lambda = self.lambda()?;
        let mut dlcm = num_bigint::BigInt::one();
        for l in &lambda {
            dlcm = dlcm.lcm(l.denom());
        }
        let d: u32 = (&dlcm)
            .try_into()
            .expect("weight denominators stay small at this scale");
        let lhs = rational_pow(&rational_abs(inner_coeff), d);
        let mut rhs = Rational::one();
        for ((_, c), l) in self.outer.iter().zip(&lambda) {
            let power = l * Rational::from_integer(dlcm.clone());
            let p: u32 = power
                .to_integer()
                .try_into()
                .expect("integral after clearing denominators");
            rhs *= rational_pow(&(c / l), p);
        }
        Some(lhs.cmp(&rhs))
    }

    /// Exact nonnegativity over the reals. Odd inner exponents require the
    /// inner coefficient to stay within the bound in absolute value; even
    /// inner exponents additionally allow any positive inner coefficient.
    pub fn is_nonnegative(&self) -> bool {
        let Some((beta, c)) = &self.inner else {
            return true;
        };
        if beta.is_even() && !c.is_negative() {
            return true;
        }
        self.inner_versus_bound().expect("inner present") != Ordering::Greater
    }

    /// Whether the circuit is a sum of squares of polynomials. Beyond
    /// nonnegativity this asks for the inner exponent to lie in the
    /// largest mediated set of the outer exponents.
    pub fn is_sum_of_squares(&self) -> bool {
        if !self.is_nonnegative() {
            return false;
        }
        let Some((beta, c)) = &self.inner else {
            return true;
        };
        if beta.is_even() && !c.is_negative() {
            return true;
        }
        let mms = maximal_mediated_set(&self.outer_vertex_set())
            .expect("outer exponents are even");
        mms.contains(&exponent_point(beta))
    }

    pub fn outer_vertex_set(&self) -> PointSet {
        PointSet::from_points(self.n, self.outer.iter().map(|(e, _)| exponent_point(e)))
            .expect("consistent dimension")
    }

    /// Mediated-set classification of the outer simplex.
    pub fn simplex_kind(&self) -> Result<SimplexKind, SimplexClassifyError> {
        classify_simplex(&self.outer_vertex_set())
    }

    pub fn to_json(&self) -> CircuitJson {
        let term_json = |(e, c): &(Exponent, Rational)| TermJson {
            coef: format_rational(c),
            exp: e.entries().to_vec(),
        };
        CircuitJson {
            n: self.n,
            outer: self.outer.iter().map(term_json).collect(),
            inner: self.inner.as_ref().map(term_json),
        }
    }

    pub fn from_json(json: &CircuitJson) -> Result<Self, CircuitJsonError> {
        let parse_term = |t: &TermJson| -> Result<(Exponent, Rational), CircuitJsonError> {
            if t.exp.len() != json.n {
                return Err(CircuitJsonError::Invalid(CircuitError::MixedDimensions));
            }
            let c = parse_rational(&t.coef)
                .map_err(|e| CircuitJsonError::BadRational(e.to_string()))?;
            Ok((Exponent::new(t.exp.clone()), c))
        };
        let outer = json
            .outer
            .iter()
            .map(parse_term)
            .collect::<Result<Vec<_>, _>>()?;
        let inner = json.inner.as_ref().map(parse_term).transpose()?;
        Circuit::new(outer, inner).map_err(CircuitJsonError::Invalid)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CircuitJson {
    pub n: usize,
    pub outer: Vec<TermJson>,
    pub inner: Option<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CircuitJsonError {
    #[error("malformed rational: {0}")]
    BadRational(String),
    #[error(transparent)]
    Invalid(CircuitError),
}

/// Splits a polynomial along its Newton polytope into a circuit.
pub fn detect_circuit(f: &Polynomial) -> Result<Circuit, CircuitError> {
    Circuit::from_polynomial(f)
}

/// The exact comparison deciding circuit nonnegativity: absolute inner
/// coefficient against the weighted outer product. `None` when there is no
/// inner term.
pub fn circuit_number_compare(c: &Circuit) -> Option<Ordering> {
    c.inner_versus_bound()
}

pub fn is_nonnegative_circuit(c: &Circuit) -> bool {
    c.is_nonnegative()
}

pub fn circuit_is_sos(c: &Circuit) -> bool {
    c.is_sum_of_squares()
}

/// Builds the circuit for a weighted square of a linear form in monomials:
/// `w (a x^A + b x^B)^2` with distinct exponents `A`, `B` expands to outer
/// terms `w a^2 x^(2A)`, `w b^2 x^(2B)` and inner term `2 w a b x^(A+B)`.
/// A single-monomial square yields a degenerate circuit. These circuits
/// sit exactly on the nonnegativity boundary.
pub fn circuit_from_weighted_square(
    weight: &Rational,
    form: &[(Exponent, Rational)],
) -> Result<Circuit, CircuitError> {
    assert!(
        (1..=2).contains(&form.len()),
        "forms must involve one or two monomials"
    );
    assert!(weight.is_positive(), "square weights must be positive");
    match form {
        [(a, ca)] => Circuit::new(vec![(a.add(a), weight * ca * ca)], None),
        [(a, ca), (b, cb)] => {
            assert_ne!(a, b, "monomials must be distinct");
            let outer = vec![
                (a.add(a), weight * ca * ca),
                (b.add(b), weight * cb * cb),
            ];
            let inner_coeff = Rational::from_integer(2.into()) * weight * ca * cb;
            let inner = if inner_coeff.is_zero() {
                None
            } else {
                Some((a.add(b), inner_coeff))
            };
            Circuit::new(outer, inner)
        }
        _ => unreachable!("length checked above"),
    }
}

/// A claimed decomposition into weighted nonnegative circuits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SoncDecomposition {
    pub entries: Vec<(Rational, Circuit)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SoncReport {
    pub accepted: bool,
    pub failures: Vec<String>,
    pub residual: Polynomial,
}

/// Checks a circuit decomposition of `f` exactly: every weight must be
/// nonnegative, every circuit nonnegative, and the weighted sum must equal
/// `f` with zero residual.
pub fn verify_sonc_decomposition(f: &Polynomial, d: &SoncDecomposition) -> SoncReport {
    let n = f.nvars();
    let mut failures = Vec::new();
    let mut combination = Polynomial::zero(n);
    for (i, (w, c)) in d.entries.iter().enumerate() {
        if w.is_negative() {
            failures.push(format!("entry {i}: weight {} is negative", format_rational(w)));
        }
        if c.nvars() != n {
            failures.push(format!(
                "entry {i}: circuit has {} variables, expected {n}",
                c.nvars()
            ));
            continue;
        }
        if !c.is_nonnegative() {
            failures.push(format!("entry {i}: circuit is not nonnegative"));
        }
        combination = &combination + &c.polynomial().scale(w);
    }
    let residual = f - &combination;
    let accepted = failures.is_empty() && residual.is_zero();
    SoncReport {
        accepted,
        failures,
        residual,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuadraticError {
    #[error("membership test needs degree at most two, got {0}")]
    DegreeTooHigh(i64),
}

/// Outcome of the quadratic membership test: either an explicit
/// decomposition or an infeasibility certificate for the scaling program,
/// checkable through the linear-programming certificate validator.
#[derive(Debug, Clone)]
pub enum QuadraticSoncOutcome {
    Member { decomposition: SoncDecomposition },
    NotMember { problem: LPProblem, farkas: LPOutcome },
}

/// Decides membership of a quadratic in the circuit cone. The coefficient
/// matrix over `(1, x_1, ..., x_n)` is unique for quadratics, and the cone
/// membership is equivalent to that matrix being scaled diagonally
/// dominant: every quadratic circuit is supported on at most two
/// coordinates, and sums of such blocks are exactly the matrices of factor
/// width two.
pub fn quadratic_sonc_membership(
    f: &Polynomial,
) -> Result<QuadraticSoncOutcome, QuadraticError> {
    let deg = f.total_degree();
    if deg > 2 {
        return Err(QuadraticError::DegreeTooHigh(deg));
    }
    let n = f.nvars();
    let mut q = SymmetricMatrix::zero(n + 1);
    let half = Rational::new(1.into(), 2.into());
    for (e, c) in f.terms() {
        let point: Vec<usize> = e
            .entries()
            .iter()
            .enumerate()
            .filter(|(_, &v)| v > 0)
            .map(|(i, _)| i)
            .collect();
        match point.as_slice() {
            [] => q.set(0, 0, c.clone()),
            [i] if e.entries()[*i] == 1 => q.set(0, i + 1, c * &half),
            [i] => q.set(i + 1, i + 1, c.clone()),
            [i, j] => q.set(i + 1, j + 1, c * &half),
            _ => unreachable!("degree at most two"),
        }
    }
    match matrixkit::is_sdd(&q) {
        SddOutcome::Sdd { scaling } => {
            let squares = matrixkit::binomial_squares_from_scaling(&q, &scaling)
                .expect("scaling certifies dominance");
            let mut entries = Vec::new();
            for st in &squares {
                let form: Vec<(Exponent, Rational)> = st
                    .form
                    .iter()
                    .map(|(idx, coeff)| {
                        let e = if *idx == 0 {
                            Exponent::zeros(n)
                        } else {
                            Exponent::unit(n, idx - 1)
                        };
                        (e, coeff.clone())
                    })
                    .collect();
                let circuit = circuit_from_weighted_square(&st.weight, &form)
                    .expect("binomial squares are circuits");
                entries.push((rat(1), circuit));
            }
            Ok(QuadraticSoncOutcome::Member {
                decomposition: SoncDecomposition { entries },
            })
        }
        SddOutcome::NotSdd { problem, farkas } => {
            Ok(QuadraticSoncOutcome::NotMember { problem, farkas })
        }
    }
}
