//! Sparse multivariate polynomials over the rationals.
//!
//! A polynomial stores its variable count `n` and a map from exponent vectors
//! to nonzero rational coefficients. Terms are kept in graded lexicographic
//! order (total degree first, then entry-wise left to right), which fixes the
//! serialization order and makes equality structural.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::ratio::{format_rational, parse_rational, rational_pow, Rational};

/// Exponent vector of a single term; entry `i` is the power of variable `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Exponent(Vec<u32>);

impl Exponent {
    pub fn new(entries: Vec<u32>) -> Self {
        Exponent(entries)
    }

    /// The zero vector in `n` variables (the constant term's exponent).
    pub fn zeros(n: usize) -> Self {
        Exponent(vec![0; n])
    }

    /// The unit vector for variable `i`.
    pub fn unit(n: usize, i: usize) -> Self {
        assert!(i < n, "variable index {i} out of range for {n} variables");
        let mut e = vec![0; n];
        e[i] = 1;
        Exponent(e)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_even(&self) -> bool {
        self.0.iter().all(|e| e % 2 == 0)
    }

    /// Entry-wise sum; both vectors must have the same length.
    pub fn add(&self, other: &Exponent) -> Exponent {
        assert_eq!(self.len(), other.len(), "exponent length mismatch");
        Exponent(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Clamps every entry to at most 1.
    pub fn clamped_multilinear(&self) -> Exponent {
        Exponent(self.0.iter().map(|&e| e.min(1)).collect())
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("variable count mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("evaluation point has {got} coordinates, polynomial has {expected} variables")]
    PointLengthMismatch { expected: usize, got: usize },
    #[error("exponent vector has {got} entries, polynomial has {expected} variables")]
    ExponentLengthMismatch { expected: usize, got: usize },
}

/// Sparse polynomial in `n` variables with nonzero rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    n: usize,
    terms: BTreeMap<Exponent, Rational>,
}

impl Polynomial {
    pub fn zero(n: usize) -> Self {
        Polynomial {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        let mut p = Polynomial::zero(n);
        p.add_term(Exponent::zeros(n), c);
        p
    }

    pub fn one(n: usize) -> Self {
        Polynomial::constant(n, Rational::one())
    }

    /// The polynomial `x_i`.
    pub fn variable(n: usize, i: usize) -> Self {
        let mut p = Polynomial::zero(n);
        p.add_term(Exponent::unit(n, i), Rational::one());
        p
    }

    pub fn monomial(n: usize, exp: Exponent, coeff: Rational) -> Result<Self, PolyError> {
        if exp.len() != n {
            return Err(PolyError::ExponentLengthMismatch {
                expected: n,
                got: exp.len(),
            });
        }
        let mut p = Polynomial::zero(n);
        p.add_term(exp, coeff);
        Ok(p)
    }

    /// Builds a polynomial from (exponent, coefficient) pairs, merging duplicates.
    pub fn from_terms(
        n: usize,
        terms: impl IntoIterator<Item = (Exponent, Rational)>,
    ) -> Result<Self, PolyError> {
        let mut p = Polynomial::zero(n);
        for (e, c) in terms {
            if e.len() != n {
                return Err(PolyError::ExponentLengthMismatch {
                    expected: n,
                    got: e.len(),
                });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, exp: Exponent, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in graded lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rational)> {
        self.terms.iter()
    }

    /// Coefficient of `exp`, zero when the term is absent.
    pub fn coeff(&self, exp: &Exponent) -> Rational {
        self.terms.get(exp).cloned().unwrap_or_else(Rational::zero)
    }

    /// Exponent vectors with nonzero coefficient, in graded lex order.
    pub fn support(&self) -> Vec<Exponent> {
        self.terms.keys().cloned().collect()
    }

    fn check_same_vars(&self, other: &Self) -> Result<(), PolyError> {
        if self.n != other.n {
            Err(PolyError::DimensionMismatch {
                left: self.n,
                right: other.n,
            })
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_same_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_same_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_same_vars(other)?;
        let mut out = Polynomial::zero(self.n);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.add(eb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Polynomial::zero(self.n);
        }
        Polynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.clone(), v * c))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Polynomial::one(self.n);
        for _ in 0..k {
            acc = acc.try_mul(self).expect("same variable count");
        }
        acc
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational, PolyError> {
        if point.len() != self.n {
            return Err(PolyError::PointLengthMismatch {
                expected: self.n,
                got: point.len(),
            });
        }
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (i, &p) in e.entries().iter().enumerate() {
                if p > 0 {
                    term *= rational_pow(&point[i], p);
                }
            }
            total += term;
        }
        Ok(total)
    }

    /// Total degree; the zero polynomial reports -1.
    pub fn total_degree(&self) -> i64 {
        self.terms
            .keys()
            .map(|e| e.total_degree() as i64)
            .max()
            .unwrap_or(-1)
    }

    /// Image under `x_i^k := x_i` for `k >= 1`: every exponent entry is clamped
    /// to {0,1} and coefficients of collapsing terms merge. Agrees with the
    /// original on every point with 0/1 coordinates.
    pub fn multilinear_reduce(&self) -> Self {
        let mut out = Polynomial::zero(self.n);
        for (e, c) in &self.terms {
            out.add_term(e.clamped_multilinear(), c.clone());
        }
        out
    }

    /// Indices of variables appearing with positive exponent in some term.
    pub fn variables_used(&self) -> BTreeSet<usize> {
        let mut used = BTreeSet::new();
        for e in self.terms.keys() {
            for (i, &p) in e.entries().iter().enumerate() {
                if p > 0 {
                    used.insert(i);
                }
            }
        }
        used
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, other: &Polynomial) -> Polynomial {
        self.try_add(other).expect("variable count mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, other: &Polynomial) -> Polynomial {
        self.try_sub(other).expect("variable count mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, other: &Polynomial) -> Polynomial {
        self.try_mul(other).expect("variable count mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if first {
                first = false;
            } else {
                write!(f, " + ")?;
            }
            write!(f, "{}", format_rational(c))?;
            for (i, &p) in e.entries().iter().enumerate() {
                match p {
                    0 => {}
                    1 => write!(f, "*x{i}")?,
                    _ => write!(f, "*x{i}^{p}")?,
                }
            }
        }
        Ok(())
    }
}

// JSON form: {"n": 2, "terms": [{"coef": "p/q", "exp": [..]}, ...]}
// with terms in graded lex order on output.

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolynomialJson {
    pub n: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermJson {
    pub coef: String,
    pub exp: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyJsonError {
    #[error("{0}")]
    BadRational(#[from] crate::ratio::ParseRationalError),
    #[error("{0}")]
    BadShape(#[from] PolyError),
}

impl Polynomial {
    pub fn to_json(&self) -> PolynomialJson {
        PolynomialJson {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermJson {
                    coef: format_rational(c),
                    exp: e.entries().to_vec(),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &PolynomialJson) -> Result<Self, PolyJsonError> {
        let mut terms = Vec::with_capacity(json.terms.len());
        for t in &json.terms {
            terms.push((Exponent::new(t.exp.clone()), parse_rational(&t.coef)?));
        }
        Ok(Polynomial::from_terms(json.n, terms)?)
    }
}
