//! Certificates of nonnegativity over constrained sets: constraint systems,
//! certificate containers for the four proof styles (semidefinite grams,
//! scaled-dominant grams, circuits, junta combinations), an exact verifier,
//! conversions between styles, and the stock witness polynomials that
//! separate them.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::budget::{Budget, BudgetExceeded};
use crate::circuitcert::{
    circuit_from_weighted_square, quadratic_sonc_membership, Circuit, CircuitError, CircuitJson,
    CircuitJsonError, QuadraticSoncOutcome,
};
use crate::cubecert::{
    circuit_to_junta, polynomial_cube_decomposition, JuntaError, JuntaJsonError, JuntaTerm,
    JuntaTermJson,
};
use crate::exactlp;
use crate::matrixkit::{
    binomial_squares_from_scaling, is_diagonally_dominant, psd_check, scale_congruence,
    PsdOutcome, SymmetricMatrix, SymmetricMatrixJson,
};
use crate::polycore::{Exponent, PolyJsonError, Polynomial, PolynomialJson};
use crate::polytope::SimplexKind;
use crate::ratio::{format_rational, parse_rational, rat, rational_abs, Rational};

/// Which products of constraints a certificate may use: single factors only,
/// or arbitrary finite products.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    Putinar,
    Schmuedgen,
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::Putinar => write!(f, "putinar"),
            Shape::Schmuedgen => write!(f, "schmuedgen"),
        }
    }
}

/// The proof style of a certificate, ordered from strongest to weakest
/// ground cone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertKind {
    Sos,
    Sdsos,
    Sonc,
    Sa,
}

impl fmt::Display for CertKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertKind::Sos => write!(f, "sos"),
            CertKind::Sdsos => write!(f, "sdsos"),
            CertKind::Sonc => write!(f, "sonc"),
            CertKind::Sa => write!(f, "sa"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedConstraint {
    pub name: String,
    pub poly: Polynomial,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SystemError {
    #[error("constraint has {got} variables, system has {expected}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// A list of polynomial inequality constraints `g >= 0` over a fixed
/// variable count. Constraint order is part of the public interface:
/// certificates refer to constraints by index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintSystem {
    n: usize,
    constraints: Vec<NamedConstraint>,
}

impl ConstraintSystem {
    pub fn new(n: usize) -> Self {
        ConstraintSystem {
            n,
            constraints: Vec::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.constraints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    pub fn constraints(&self) -> &[NamedConstraint] {
        &self.constraints
    }

    pub fn push(&mut self, name: &str, poly: Polynomial) -> Result<(), SystemError> {
        if poly.nvars() != self.n {
            return Err(SystemError::DimensionMismatch {
                expected: self.n,
                got: poly.nvars(),
            });
        }
        self.constraints.push(NamedConstraint {
            name: name.to_string(),
            poly,
        });
        Ok(())
    }

    /// Adds both signs of `x_i^2 - x_i` for every variable, making the
    /// feasible set the 0/1 points.
    pub fn with_hypercube(mut self) -> Self {
        for i in 0..self.n {
            let plus = cube_generator(self.n, i);
            let minus = -&plus;
            self.push(&format!("cube+{i}"), plus).expect("dimension matches");
            self.push(&format!("cube-{i}"), minus).expect("dimension matches");
        }
        self
    }

    /// Adds the box inequalities `x_i >= 0` and `1 - x_i >= 0` for every
    /// variable.
    pub fn with_box(mut self) -> Self {
        for i in 0..self.n {
            let x = Polynomial::variable(self.n, i);
            let flipped = &Polynomial::one(self.n) - &x;
            self.push(&format!("box+{i}"), x).expect("dimension matches");
            self.push(&format!("box-{i}"), flipped).expect("dimension matches");
        }
        self
    }

    /// Index of the constraint equal to `x_i^2 - x_i`, scanning by
    /// polynomial value rather than name.
    pub fn cube_plus_index(&self, i: usize) -> Option<usize> {
        let target = cube_generator(self.n, i);
        self.constraints.iter().position(|c| c.poly == target)
    }

    /// Index of the constraint equal to `x_i - x_i^2`.
    pub fn cube_minus_index(&self, i: usize) -> Option<usize> {
        let target = -&cube_generator(self.n, i);
        self.constraints.iter().position(|c| c.poly == target)
    }

    /// Index of the constraint equal to `x_i`.
    pub fn box_plus_index(&self, i: usize) -> Option<usize> {
        let target = Polynomial::variable(self.n, i);
        self.constraints.iter().position(|c| c.poly == target)
    }

    /// Index of the constraint equal to `1 - x_i`.
    pub fn box_minus_index(&self, i: usize) -> Option<usize> {
        let target = &Polynomial::one(self.n) - &Polynomial::variable(self.n, i);
        self.constraints.iter().position(|c| c.poly == target)
    }

    /// Whether both cube generators are present for every variable.
    pub fn has_hypercube(&self) -> bool {
        (0..self.n).all(|i| self.cube_plus_index(i).is_some() && self.cube_minus_index(i).is_some())
    }

    /// Indices of all constraints that are cube generators of either sign.
    pub fn cube_constraint_indices(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for i in 0..self.n {
            if let Some(k) = self.cube_plus_index(i) {
                out.insert(k);
            }
            if let Some(k) = self.cube_minus_index(i) {
                out.insert(k);
            }
        }
        out
    }

    pub fn to_json(&self) -> ConstraintSystemJson {
        ConstraintSystemJson {
            n: self.n,
            constraints: self
                .constraints
                .iter()
                .map(|c| NamedConstraintJson {
                    name: c.name.clone(),
                    poly: c.poly.to_json(),
                })
                .collect(),
            objective: None,
        }
    }

    /// Rebuilds the system. The optional `objective` field of the JSON form
    /// is carried for file-based workflows and ignored here.
    pub fn from_json(json: &ConstraintSystemJson) -> Result<Self, SystemJsonError> {
        let mut system = ConstraintSystem::new(json.n);
        for c in &json.constraints {
            let poly = Polynomial::from_json(&c.poly)?;
            system
                .push(&c.name, poly)
                .map_err(SystemJsonError::BadSystem)?;
        }
        Ok(system)
    }
}

/// The generator `x_i^2 - x_i`, reexported from the cube toolkit for
/// convenience when assembling systems.
pub use crate::cubecert::cube_generator;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConstraintSystemJson {
    pub n: usize,
    pub constraints: Vec<NamedConstraintJson>,
    /// Optional objective polynomial for solver drivers reading a whole
    /// problem from one file.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub objective: Option<PolynomialJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NamedConstraintJson {
    pub name: String,
    pub poly: PolynomialJson,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SystemJsonError {
    #[error("{0}")]
    BadPolynomial(#[from] PolyJsonError),
    #[error("{0}")]
    BadSystem(SystemError),
}

/// The cone element multiplied onto a constraint product in one certificate
/// entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroundElement {
    /// `z^T G z` for the monomial vector `z`, with `G` positive
    /// semidefinite.
    SosGram {
        monomials: Vec<Exponent>,
        gram: SymmetricMatrix,
    },
    /// `z^T G z` with `diag(scaling) G diag(scaling)` diagonally dominant.
    SdsosGram {
        monomials: Vec<Exponent>,
        gram: SymmetricMatrix,
        scaling: Vec<Rational>,
    },
    /// A weighted nonnegative circuit.
    Circuit { weight: Rational, circuit: Circuit },
    /// A nonnegative combination of cube indicator terms.
    Junta { terms: Vec<JuntaTerm> },
}

impl GroundElement {
    /// The polynomial this ground element denotes. Panics on inconsistent
    /// data; the verifier checks structure before calling this.
    pub fn polynomial(&self, n: usize) -> Polynomial {
        match self {
            GroundElement::SosGram { monomials, gram }
            | GroundElement::SdsosGram {
                monomials, gram, ..
            } => gram_expansion(n, monomials, gram),
            GroundElement::Circuit { weight, circuit } => {
                if weight.is_zero() {
                    Polynomial::zero(n)
                } else {
                    circuit.polynomial().scale(weight)
                }
            }
            GroundElement::Junta { terms } => {
                let mut acc = Polynomial::zero(n);
                for t in terms {
                    acc = &acc + &t.polynomial(n);
                }
                acc
            }
        }
    }
}

/// Expands `sum_ij G_ij x^(m_i + m_j)`.
pub fn gram_expansion(
    n: usize,
    monomials: &[Exponent],
    gram: &SymmetricMatrix,
) -> Polynomial {
    let size = gram.size();
    assert_eq!(size, monomials.len(), "matrix size must match monomials");
    let mut terms = Vec::new();
    for i in 0..size {
        for j in 0..size {
            let g = gram.get(i, j);
            if !g.is_zero() {
                terms.push((monomials[i].add(&monomials[j]), g.clone()));
            }
        }
    }
    Polynomial::from_terms(n, terms).expect("consistent dimension")
}

/// One summand of a certificate: a ground element times the product of the
/// referenced constraints (by index, with multiplicity; empty means the
/// constant one).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertEntry {
    pub ground: GroundElement,
    pub product: Vec<usize>,
}

/// A complete certificate that `f - lambda` lies in the chosen cone at the
/// declared degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub kind: CertKind,
    pub shape: Shape,
    pub degree: usize,
    pub entries: Vec<CertEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertificateJson {
    pub kind: CertKind,
    pub shape: Shape,
    pub degree: usize,
    pub entries: Vec<CertEntryJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertEntryJson {
    pub ground: GroundJson,
    pub product: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum GroundJson {
    SosGram {
        monomials: Vec<Vec<u32>>,
        gram: SymmetricMatrixJson,
    },
    SdsosGram {
        monomials: Vec<Vec<u32>>,
        gram: SymmetricMatrixJson,
        scaling: Vec<String>,
    },
    Circuit {
        weight: String,
        circuit: CircuitJson,
    },
    Junta {
        terms: Vec<JuntaTermJson>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CertJsonError {
    #[error("malformed rational: {0}")]
    BadRational(String),
    #[error("bad matrix: {0}")]
    BadMatrix(String),
    #[error("bad circuit: {0}")]
    BadCircuit(String),
    #[error("bad junta term: {0}")]
    BadJunta(String),
}

impl Certificate {
    pub fn to_json(&self) -> CertificateJson {
        CertificateJson {
            kind: self.kind,
            shape: self.shape,
            degree: self.degree,
            entries: self
                .entries
                .iter()
                .map(|e| CertEntryJson {
                    ground: match &e.ground {
                        GroundElement::SosGram { monomials, gram } => GroundJson::SosGram {
                            monomials: monomials.iter().map(|m| m.entries().to_vec()).collect(),
                            gram: gram.to_json(),
                        },
                        GroundElement::SdsosGram {
                            monomials,
                            gram,
                            scaling,
                        } => GroundJson::SdsosGram {
                            monomials: monomials.iter().map(|m| m.entries().to_vec()).collect(),
                            gram: gram.to_json(),
                            scaling: scaling.iter().map(format_rational).collect(),
                        },
                        GroundElement::Circuit { weight, circuit } => GroundJson::Circuit {
                            weight: format_rational(weight),
                            circuit: circuit.to_json(),
                        },
                        GroundElement::Junta { terms } => GroundJson::Junta {
                            terms: terms.iter().map(|t| t.to_json()).collect(),
                        },
                    },
                    product: e.product.clone(),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &CertificateJson) -> Result<Self, CertJsonError> {
        let mut entries = Vec::with_capacity(json.entries.len());
        for e in &json.entries {
            let ground = match &e.ground {
                GroundJson::SosGram { monomials, gram } => GroundElement::SosGram {
                    monomials: monomials.iter().map(|m| Exponent::new(m.clone())).collect(),
                    gram: SymmetricMatrix::from_json(gram)
                        .map_err(|err| CertJsonError::BadMatrix(err.to_string()))?,
                },
                GroundJson::SdsosGram {
                    monomials,
                    gram,
                    scaling,
                } => GroundElement::SdsosGram {
                    monomials: monomials.iter().map(|m| Exponent::new(m.clone())).collect(),
                    gram: SymmetricMatrix::from_json(gram)
                        .map_err(|err| CertJsonError::BadMatrix(err.to_string()))?,
                    scaling: scaling
                        .iter()
                        .map(|s| parse_rational(s))
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|err| CertJsonError::BadRational(err.to_string()))?,
                },
                GroundJson::Circuit { weight, circuit } => GroundElement::Circuit {
                    weight: parse_rational(weight)
                        .map_err(|err| CertJsonError::BadRational(err.to_string()))?,
                    circuit: Circuit::from_json(circuit).map_err(|err| match err {
                        CircuitJsonError::BadRational(s) => CertJsonError::BadRational(s),
                        other => CertJsonError::BadCircuit(other.to_string()),
                    })?,
                },
                GroundJson::Junta { terms } => GroundElement::Junta {
                    terms: terms
                        .iter()
                        .map(JuntaTerm::from_json)
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|err| match err {
                            JuntaJsonError::BadRational(s) => CertJsonError::BadRational(s),
                            other => CertJsonError::BadJunta(other.to_string()),
                        })?,
                },
            };
            entries.push(CertEntry {
                ground,
                product: e.product.clone(),
            });
        }
        Ok(Certificate {
            kind: json.kind,
            shape: json.shape,
            degree: json.degree,
            entries,
        })
    }
}

/// Outcome of exact certificate verification: acceptance requires every
/// structural and membership check to pass and the polynomial identity
/// `f - lambda = sum_e ground_e * product_e` to hold with zero residual.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub accepted: bool,
    pub failures: Vec<String>,
    pub residual: Polynomial,
}

fn product_polynomial(n: usize, product: &[usize], system: &ConstraintSystem) -> Polynomial {
    let mut acc = Polynomial::one(n);
    for &i in product {
        acc = &acc * &system.constraints()[i].poly;
    }
    acc
}

/// Verifies a certificate for `f - lambda >= 0` on the set cut out by the
/// system. All arithmetic is exact; contributions are accumulated whenever
/// they are well formed so the reported residual stays meaningful even for
/// rejected certificates.
pub fn verify(
    f: &Polynomial,
    lambda: &Rational,
    system: &ConstraintSystem,
    cert: &Certificate,
) -> VerificationReport {
    let n = f.nvars();
    let target = f - &Polynomial::constant(n, lambda.clone());
    let mut failures = Vec::new();
    if system.nvars() != n {
        failures.push(format!(
            "system has {} variables, polynomial has {n}",
            system.nvars()
        ));
        return VerificationReport {
            accepted: false,
            failures,
            residual: target,
        };
    }
    let mut combination = Polynomial::zero(n);
    for (idx, entry) in cert.entries.iter().enumerate() {
        let mut product_ok = true;
        for &ci in &entry.product {
            if ci >= system.len() {
                failures.push(format!("entry {idx}: constraint index {ci} is out of range"));
                product_ok = false;
            }
        }
        if cert.shape == Shape::Putinar && entry.product.len() > 1 {
            failures.push(format!(
                "entry {idx}: product of {} constraints in a single-factor certificate",
                entry.product.len()
            ));
        }
        let coherent = matches!(
            (cert.kind, &entry.ground),
            (CertKind::Sos, GroundElement::SosGram { .. })
                | (CertKind::Sdsos, GroundElement::SdsosGram { .. })
                | (CertKind::Sonc, GroundElement::Circuit { .. })
                | (CertKind::Sa, GroundElement::Junta { .. })
        );
        if !coherent {
            failures.push(format!(
                "entry {idx}: ground element does not belong to a {} certificate",
                cert.kind
            ));
        }
        let ground_poly = match &entry.ground {
            GroundElement::SosGram { monomials, gram } => {
                if gram.size() != monomials.len() || monomials.iter().any(|m| m.len() != n) {
                    failures.push(format!(
                        "entry {idx}: matrix size or monomial dimensions are inconsistent"
                    ));
                    None
                } else {
                    if let PsdOutcome::NotPsd { .. } = psd_check(gram) {
                        failures.push(format!(
                            "entry {idx}: matrix is not positive semidefinite"
                        ));
                    }
                    Some(entry.ground.polynomial(n))
                }
            }
            GroundElement::SdsosGram {
                monomials,
                gram,
                scaling,
            } => {
                if gram.size() != monomials.len()
                    || scaling.len() != gram.size()
                    || monomials.iter().any(|m| m.len() != n)
                {
                    failures.push(format!(
                        "entry {idx}: matrix, scaling, or monomial dimensions are inconsistent"
                    ));
                    None
                } else {
                    if scaling.iter().any(|d| !d.is_positive()) {
                        failures.push(format!("entry {idx}: scaling entries must be positive"));
                    } else if !is_diagonally_dominant(&scale_congruence(gram, scaling)) {
                        failures.push(format!(
                            "entry {idx}: scaled matrix is not diagonally dominant"
                        ));
                    }
                    Some(entry.ground.polynomial(n))
                }
            }
            GroundElement::Circuit { weight, circuit } => {
                if circuit.nvars() != n {
                    failures.push(format!(
                        "entry {idx}: circuit has {} variables, expected {n}",
                        circuit.nvars()
                    ));
                    None
                } else {
                    if weight.is_negative() {
                        failures.push(format!(
                            "entry {idx}: weight {} is negative",
                            format_rational(weight)
                        ));
                    }
                    if !circuit.is_nonnegative() {
                        failures.push(format!("entry {idx}: circuit is not nonnegative"));
                    }
                    Some(entry.ground.polynomial(n))
                }
            }
            GroundElement::Junta { terms } => {
                if terms
                    .iter()
                    .any(|t| t.max_var().is_some_and(|v| v >= n))
                {
                    failures.push(format!(
                        "entry {idx}: junta term uses a variable outside the system"
                    ));
                    None
                } else {
                    Some(entry.ground.polynomial(n))
                }
            }
        };
        if !product_ok {
            continue;
        }
        let p = product_polynomial(n, &entry.product, system);
        let Some(g) = ground_poly else {
            continue;
        };
        match (cert.kind, &entry.ground) {
            (CertKind::Sa, GroundElement::Junta { terms }) => {
                let half = (cert.degree / 2) as i64;
                for t in terms {
                    let reduced = (&t.polynomial(n) * &p).multilinear_reduce();
                    if !reduced.is_zero() && reduced.total_degree() > half {
                        failures.push(format!(
                            "entry {idx}: junta column has reduced degree {}, budget allows {half}",
                            reduced.total_degree()
                        ));
                    }
                }
            }
            _ => {
                let contribution_degree = g.total_degree().max(0) + p.total_degree().max(0);
                if !g.is_zero() && !p.is_zero() && contribution_degree > cert.degree as i64 {
                    failures.push(format!(
                        "entry {idx}: contribution degree {contribution_degree} exceeds budget {}",
                        cert.degree
                    ));
                }
            }
        }
        combination = &combination + &(&g * &p);
    }
    let residual = &target - &combination;
    if !residual.is_zero() {
        failures.push("combination misses the target by a nonzero residual".to_string());
    }
    VerificationReport {
        accepted: failures.is_empty(),
        residual,
        failures,
    }
}

/// All products of constraints (as nondecreasing index multisets) whose
/// plain polynomial degree stays within `cap`, including the empty product.
/// Degrees of products add up exactly, so branches above the cap prune
/// safely. The budget bounds the number of products kept.
pub fn preprime_products(
    system: &ConstraintSystem,
    cap: usize,
    budget: &Budget,
) -> Result<Vec<(Vec<usize>, Polynomial)>, BudgetExceeded> {
    let n = system.nvars();
    let mut products: Vec<(Vec<usize>, Polynomial)> = Vec::new();
    let mut stack = vec![(Vec::new(), Polynomial::one(n), 0usize)];
    while let Some((indices, poly, start)) = stack.pop() {
        budget.check(products.len() as u64 + 1)?;
        products.push((indices.clone(), poly.clone()));
        for i in start..system.len() {
            let next = &poly * &system.constraints()[i].poly;
            if !next.is_zero() && next.total_degree() <= cap as i64 {
                let mut idx = indices.clone();
                idx.push(i);
                stack.push((idx, next, i));
            }
        }
    }
    products.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
    Ok(products)
}

/// Rewrites a polynomial lying in the cube ideal as explicit certificate
/// entries: single-monomial junta grounds times products of cube
/// generators, with negative coefficients absorbed by flipping exactly one
/// factor to the negated generator. `None` when the system is missing a
/// needed generator.
pub(crate) fn cube_correction_entries(
    residual: &Polynomial,
    base_product: &[usize],
    system: &ConstraintSystem,
) -> Option<Vec<CertEntry>> {
    if residual.is_zero() {
        return Some(Vec::new());
    }
    let mut entries = Vec::new();
    for term in polynomial_cube_decomposition(residual) {
        let total_pow: u32 = term.powers.iter().sum();
        debug_assert!(total_pow >= 1, "residual must lie in the cube ideal");
        let negative = term.coeff.is_negative();
        let mut product: Vec<usize> = base_product.to_vec();
        let mut flipped = false;
        for (i, &k) in term.powers.iter().enumerate() {
            for _ in 0..k {
                let idx = if negative && !flipped {
                    flipped = true;
                    system.cube_minus_index(i)?
                } else {
                    system.cube_plus_index(i)?
                };
                product.push(idx);
            }
        }
        product.sort_unstable();
        let ones: BTreeSet<usize> = term
            .monomial
            .entries()
            .iter()
            .enumerate()
            .filter(|(_, &v)| v > 0)
            .map(|(i, _)| i)
            .collect();
        let weight = rational_abs(&term.coeff);
        let jt = JuntaTerm::new(ones, BTreeSet::new(), weight)
            .expect("support sets are disjoint and the weight is nonnegative");
        entries.push(CertEntry {
            ground: GroundElement::Junta { terms: vec![jt] },
            product,
        });
    }
    Some(entries)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConvertError {
    #[error("conversion expects a {expected} certificate, got {got}")]
    WrongKind { expected: CertKind, got: CertKind },
    #[error("entry {entry}: {reason}")]
    MalformedGround { entry: usize, reason: String },
    #[error("entry {entry}: no positive scaling makes the matrix dominant")]
    NotScalable { entry: usize },
    #[error("entry {entry}: {source}")]
    Circuit { entry: usize, source: CircuitError },
    #[error("entry {entry}: {source}")]
    Junta { entry: usize, source: JuntaError },
    #[error("the target system must contain both cube generators x_i^2 - x_i and x_i - x_i^2 for every variable")]
    MissingCube,
}

/// Splits every scaled-dominant gram entry into weighted binomial squares
/// and folds each square into a boundary circuit. The result proves the
/// same identity entry by entry: products, degree, and shape carry over.
pub fn convert_sdsos_to_sonc(cert: &Certificate) -> Result<Certificate, ConvertError> {
    if cert.kind != CertKind::Sdsos {
        return Err(ConvertError::WrongKind {
            expected: CertKind::Sdsos,
            got: cert.kind,
        });
    }
    let mut entries = Vec::new();
    for (i, entry) in cert.entries.iter().enumerate() {
        let GroundElement::SdsosGram {
            monomials,
            gram,
            scaling,
        } = &entry.ground
        else {
            return Err(ConvertError::MalformedGround {
                entry: i,
                reason: "expected a scaled gram ground".to_string(),
            });
        };
        if gram.size() != monomials.len() || scaling.len() != gram.size() {
            return Err(ConvertError::MalformedGround {
                entry: i,
                reason: "matrix, scaling, and monomial sizes disagree".to_string(),
            });
        }
        if scaling.iter().any(|d| !d.is_positive()) {
            return Err(ConvertError::MalformedGround {
                entry: i,
                reason: "scaling entries must be positive".to_string(),
            });
        }
        for a in 0..monomials.len() {
            for b in (a + 1)..monomials.len() {
                if monomials[a] == monomials[b] {
                    return Err(ConvertError::MalformedGround {
                        entry: i,
                        reason: "monomials must be pairwise distinct".to_string(),
                    });
                }
            }
        }
        let squares = binomial_squares_from_scaling(gram, scaling)
            .ok_or(ConvertError::NotScalable { entry: i })?;
        for st in &squares {
            let form: Vec<(Exponent, Rational)> = st
                .form
                .iter()
                .map(|(k, c)| (monomials[*k].clone(), c.clone()))
                .collect();
            let circuit = circuit_from_weighted_square(&st.weight, &form)
                .map_err(|e| ConvertError::Circuit { entry: i, source: e })?;
            entries.push(CertEntry {
                ground: GroundElement::Circuit {
                    weight: rat(1),
                    circuit,
                },
                product: entry.product.clone(),
            });
        }
    }
    Ok(Certificate {
        kind: CertKind::Sonc,
        shape: cert.shape,
        degree: cert.degree,
        entries,
    })
}

/// Tabulates every weighted circuit over the cube into a junta combination
/// and restores the exact identity with explicit cube-generator multiples.
/// The degree doubles: junta columns are charged by their reduced degree,
/// which stays within the original budget.
pub fn convert_sonc_to_sa(
    cert: &Certificate,
    system: &ConstraintSystem,
) -> Result<Certificate, ConvertError> {
    if cert.kind != CertKind::Sonc {
        return Err(ConvertError::WrongKind {
            expected: CertKind::Sonc,
            got: cert.kind,
        });
    }
    if !system.has_hypercube() {
        return Err(ConvertError::MissingCube);
    }
    let n = system.nvars();
    let mut entries = Vec::new();
    for (i, entry) in cert.entries.iter().enumerate() {
        let GroundElement::Circuit { weight, circuit } = &entry.ground else {
            return Err(ConvertError::MalformedGround {
                entry: i,
                reason: "expected a circuit ground".to_string(),
            });
        };
        if circuit.nvars() != n {
            return Err(ConvertError::MalformedGround {
                entry: i,
                reason: format!("circuit has {} variables, system has {n}", circuit.nvars()),
            });
        }
        if weight.is_negative() {
            return Err(ConvertError::MalformedGround {
                entry: i,
                reason: "circuit weight is negative".to_string(),
            });
        }
        if weight.is_zero() {
            continue;
        }
        let base = circuit_to_junta(circuit)
            .map_err(|e| ConvertError::Junta { entry: i, source: e })?;
        let scaled: Vec<JuntaTerm> = base
            .iter()
            .map(|t| {
                JuntaTerm::new(t.ones().clone(), t.zeros().clone(), t.weight() * weight)
                    .expect("positive rescaling keeps terms valid")
            })
            .collect();
        let mut junta_poly = Polynomial::zero(n);
        for t in &scaled {
            junta_poly = &junta_poly + &t.polynomial(n);
        }
        let circuit_poly = circuit.polynomial().scale(weight);
        let diff = &circuit_poly - &junta_poly;
        entries.push(CertEntry {
            ground: GroundElement::Junta { terms: scaled },
            product: entry.product.clone(),
        });
        entries.extend(
            cube_correction_entries(&diff, &entry.product, system)
                .ok_or(ConvertError::MissingCube)?,
        );
    }
    let all_single = entries.iter().all(|e| e.product.len() <= 1);
    Ok(Certificate {
        kind: CertKind::Sa,
        shape: if cert.shape == Shape::Putinar && all_single {
            Shape::Putinar
        } else {
            Shape::Schmuedgen
        },
        degree: 2 * cert.degree,
        entries,
    })
}

/// The squared affine form `(1 - x_1 - ... - x_n)^2`: a rank-one square
/// whose coefficient matrix over `(1, x)` is all ones.
pub fn witness_signed_quadric(n: usize) -> Polynomial {
    let mut l = Polynomial::one(n);
    for j in 0..n {
        l = &l - &Polynomial::variable(n, j);
    }
    &l * &l
}

/// The degree `2n + 2` circuit `1 + sum_j x^(2e + 2e_j) - (n + 1) x^(2e)`
/// with `e` the all-ones exponent: nonnegative with inner term exactly on
/// the boundary, vanishing at every sign vector, and not a sum of squares.
pub fn witness_generalized_motzkin(n: usize) -> Polynomial {
    assert!(n >= 2, "the witness needs at least two variables");
    let mut terms = vec![(Exponent::zeros(n), rat(1))];
    for j in 0..n {
        let e: Vec<u32> = (0..n).map(|i| if i == j { 4 } else { 2 }).collect();
        terms.push((Exponent::new(e), rat(1)));
    }
    terms.push((Exponent::new(vec![2; n]), rat(-(n as i64) - 1)));
    Polynomial::from_terms(n, terms).expect("consistent dimension")
}

/// The explicit rank-one gram certificate for [`witness_signed_quadric`]
/// over the monomials `(1, x_1, ..., x_n)`.
pub fn quadric_sos_certificate(n: usize) -> Certificate {
    let mut monomials = vec![Exponent::zeros(n)];
    for j in 0..n {
        monomials.push(Exponent::unit(n, j));
    }
    let sign = |i: usize| if i == 0 { rat(1) } else { rat(-1) };
    let mut gram = SymmetricMatrix::zero(n + 1);
    for i in 0..=n {
        for j in i..=n {
            gram.set(i, j, sign(i) * sign(j));
        }
    }
    Certificate {
        kind: CertKind::Sos,
        shape: Shape::Putinar,
        degree: 2,
        entries: vec![CertEntry {
            ground: GroundElement::SosGram { monomials, gram },
            product: Vec::new(),
        }],
    }
}

/// The single-circuit certificate for [`witness_generalized_motzkin`].
pub fn motzkin_sonc_certificate(n: usize) -> Certificate {
    let circuit = Circuit::from_polynomial(&witness_generalized_motzkin(n))
        .expect("the witness is a circuit by construction");
    Certificate {
        kind: CertKind::Sonc,
        shape: Shape::Putinar,
        degree: 2 * n + 2,
        entries: vec![CertEntry {
            ground: GroundElement::Circuit {
                weight: rat(1),
                circuit,
            },
            product: Vec::new(),
        }],
    }
}

/// Which witness family a constrained problem is built around.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CpopKind {
    /// Objective [`witness_signed_quadric`] over a unit ball power: the
    /// unconstrained minimum is already attained inside the feasible set.
    SosFriendly,
    /// Objective [`witness_generalized_motzkin`] over a ball power wide
    /// enough to hold all sign vectors.
    SoncFriendly,
}

/// Builds a constrained minimization witness: the objective together with a
/// one-constraint system `(R^2 - sum_j x_j^2)^m >= 0`. The exponent `m` is
/// the smallest odd number at least `t + 1` for the square-friendly family
/// and at least `(t + 2) / 2` for the circuit-friendly family; the radius
/// is `1`, respectively the smallest integer whose square reaches `n`.
pub fn witness_cpop(kind: CpopKind, n: usize, t: usize) -> (Polynomial, ConstraintSystem) {
    let odd_at_least = |k: usize| if k % 2 == 1 { k } else { k + 1 };
    let (f, m, radius) = match kind {
        CpopKind::SosFriendly => (witness_signed_quadric(n), odd_at_least(t + 1), 1i64),
        CpopKind::SoncFriendly => {
            let mut r = 1i64;
            while r * r < n as i64 {
                r += 1;
            }
            (witness_generalized_motzkin(n), odd_at_least((t + 2) / 2), r)
        }
    };
    let mut ball = Polynomial::constant(n, rat(radius * radius));
    for j in 0..n {
        let xj = Polynomial::variable(n, j);
        ball = &ball - &(&xj * &xj);
    }
    let g = ball.pow(m as u32);
    let mut system = ConstraintSystem::new(n);
    system.push("ball", g).expect("dimension matches");
    (f, system)
}

/// Verified facts about the two witness families at one size: each boolean
/// is the outcome of running the corresponding exact check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeparationReport {
    pub n: usize,
    pub t: usize,
    /// The squared affine form carries an accepted rank-one gram
    /// certificate.
    pub quadric_is_sos: bool,
    /// The quadratic membership test refutes the squared affine form, with
    /// a validated infeasibility certificate.
    pub quadric_not_sonc: bool,
    /// The circuit witness carries an accepted single-circuit certificate.
    pub motzkin_is_sonc: bool,
    /// The circuit witness fails the mediated-set test for squares.
    pub motzkin_not_sos: bool,
    pub details: SeparationDetails,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeparationDetails {
    pub quadric_gram_size: usize,
    pub quadric_refutation_checked: bool,
    pub motzkin_lambda: Vec<String>,
    pub motzkin_simplex: String,
    pub motzkin_cert_degree: usize,
    pub cpop_square_friendly: CpopFacts,
    pub cpop_circuit_friendly: CpopFacts,
}

/// Feasibility facts for one constrained witness: the constraint degree,
/// and whether the known minimizers are feasible with vanishing objective.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CpopFacts {
    pub constraint_degree: usize,
    pub minimizer_count: usize,
    pub minimizers_feasible: bool,
    pub objective_vanishes: bool,
}

fn cpop_facts(kind: CpopKind, n: usize, t: usize) -> CpopFacts {
    let (f, system) = witness_cpop(kind, n, t);
    let g = &system.constraints()[0].poly;
    let minimizers: Vec<Vec<Rational>> = match kind {
        CpopKind::SosFriendly => (0..n)
            .map(|j| (0..n).map(|i| if i == j { rat(1) } else { rat(0) }).collect())
            .collect(),
        CpopKind::SoncFriendly => (0..1usize << n)
            .map(|mask| {
                (0..n)
                    .map(|i| if (mask >> i) & 1 == 1 { rat(1) } else { rat(-1) })
                    .collect()
            })
            .collect(),
    };
    let minimizers_feasible = minimizers
        .iter()
        .all(|p| !g.eval(p).expect("matching dimension").is_negative());
    let objective_vanishes = minimizers
        .iter()
        .all(|p| f.eval(p).expect("matching dimension").is_zero());
    CpopFacts {
        constraint_degree: g.total_degree().max(0) as usize,
        minimizer_count: minimizers.len(),
        minimizers_feasible,
        objective_vanishes,
    }
}

/// Runs the four separating checks at size `n` plus the constrained witness
/// construction at tolerance `t`, returning a deterministic report.
pub fn separation_report(n: usize, t: usize) -> SeparationReport {
    assert!(n >= 2, "separation needs at least two variables");
    let empty = ConstraintSystem::new(n);

    let quadric = witness_signed_quadric(n);
    let sos_cert = quadric_sos_certificate(n);
    let quadric_is_sos = verify(&quadric, &Rational::zero(), &empty, &sos_cert).accepted;

    let (quadric_not_sonc, refutation_checked) =
        match quadratic_sonc_membership(&quadric).expect("degree two") {
            QuadraticSoncOutcome::NotMember { problem, farkas } => {
                (true, exactlp::check_certificate(&problem, &farkas))
            }
            QuadraticSoncOutcome::Member { .. } => (false, false),
        };

    let motzkin = witness_generalized_motzkin(n);
    let sonc_cert = motzkin_sonc_certificate(n);
    let motzkin_is_sonc = verify(&motzkin, &Rational::zero(), &empty, &sonc_cert).accepted;

    let circuit = Circuit::from_polynomial(&motzkin).expect("circuit by construction");
    let motzkin_not_sos = !circuit.is_sum_of_squares();
    let motzkin_lambda: Vec<String> = circuit
        .lambda()
        .expect("inner term present")
        .iter()
        .map(format_rational)
        .collect();
    let motzkin_simplex = match circuit.simplex_kind().expect("classifiable at this size") {
        SimplexKind::H => "h".to_string(),
        SimplexKind::M => "m".to_string(),
        SimplexKind::Intermediate => "intermediate".to_string(),
    };

    SeparationReport {
        n,
        t,
        quadric_is_sos,
        quadric_not_sonc,
        motzkin_is_sonc,
        motzkin_not_sos,
        details: SeparationDetails {
            quadric_gram_size: n + 1,
            quadric_refutation_checked: refutation_checked,
            motzkin_lambda,
            motzkin_simplex,
            motzkin_cert_degree: 2 * n + 2,
            cpop_square_friendly: cpop_facts(CpopKind::SosFriendly, n, t),
            cpop_circuit_friendly: cpop_facts(CpopKind::SoncFriendly, n, t),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

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

    #[test]
    fn hypercube_system_is_self_describing() {
        let s = ConstraintSystem::new(2).with_hypercube();
        assert_eq!(s.len(), 4);
        assert!(s.has_hypercube());
        assert_eq!(s.cube_plus_index(0), Some(0));
        assert_eq!(s.cube_minus_index(0), Some(1));
        assert_eq!(s.cube_plus_index(1), Some(2));
        assert_eq!(s.cube_minus_index(1), Some(3));
        assert_eq!(
            s.cube_constraint_indices().into_iter().collect::<Vec<_>>(),
            vec![0, 1, 2, 3]
        );
        assert!(!ConstraintSystem::new(2).has_hypercube());
    }

    #[test]
    fn system_json_round_trips_and_rejects_bad_dimensions() {
        let mut s = ConstraintSystem::new(2).with_hypercube();
        s.push("extra", poly(2, &[(&[1, 0], 1)])).unwrap();
        let text = serde_json::to_string(&s.to_json()).unwrap();
        let parsed: ConstraintSystemJson = serde_json::from_str(&text).unwrap();
        assert_eq!(ConstraintSystem::from_json(&parsed).unwrap(), s);

        let mut bad = s.to_json();
        bad.constraints[0].poly.n = 3;
        assert!(ConstraintSystem::from_json(&bad).is_err());
    }

    #[test]
    fn preprime_products_of_one_cube_variable() {
        let s = ConstraintSystem::new(1).with_hypercube();
        let products = preprime_products(&s, 2, &Budget::default()).unwrap();
        let indices: Vec<Vec<usize>> = products.iter().map(|(i, _)| i.clone()).collect();
        assert_eq!(indices, vec![vec![], vec![0], vec![1]]);
        assert_eq!(products[1].1, cube_generator(1, 0));
        assert_eq!(products[2].1, -&cube_generator(1, 0));
    }

    #[test]
    fn preprime_budget_is_respected() {
        let s = ConstraintSystem::new(1).with_hypercube();
        assert!(preprime_products(&s, 2, &Budget::new(2)).is_err());
    }

    #[test]
    fn quadric_gram_certificate_verifies() {
        let n = 3;
        let f = witness_signed_quadric(n);
        let cert = quadric_sos_certificate(n);
        let report = verify(&f, &Rational::zero(), &ConstraintSystem::new(n), &cert);
        assert!(report.accepted, "failures: {:?}", report.failures);
        assert!(report.residual.is_zero());
    }

    #[test]
    fn tampered_gram_is_rejected_with_reasons() {
        let n = 2;
        let f = witness_signed_quadric(n);
        let mut cert = quadric_sos_certificate(n);
        if let GroundElement::SosGram { gram, .. } = &mut cert.entries[0].ground {
            gram.set(0, 0, rat(-1));
        }
        let report = verify(&f, &Rational::zero(), &ConstraintSystem::new(n), &cert);
        assert!(!report.accepted);
        assert!(report
            .failures
            .iter()
            .any(|m| m.contains("not positive semidefinite")));
        assert!(report
            .failures
            .iter()
            .any(|m| m.contains("nonzero residual")));
    }

    #[test]
    fn kind_and_ground_must_agree() {
        let n = 2;
        let f = witness_generalized_motzkin(n);
        let mut cert = motzkin_sonc_certificate(n);
        cert.kind = CertKind::Sos;
        let report = verify(&f, &Rational::zero(), &ConstraintSystem::new(n), &cert);
        assert!(!report.accepted);
        assert!(report
            .failures
            .iter()
            .any(|m| m.contains("does not belong")));
    }

    #[test]
    fn motzkin_single_circuit_verifies_at_its_degree() {
        for n in 2..=4 {
            let f = witness_generalized_motzkin(n);
            let cert = motzkin_sonc_certificate(n);
            assert_eq!(cert.degree, 2 * n + 2);
            let report = verify(&f, &Rational::zero(), &ConstraintSystem::new(n), &cert);
            assert!(report.accepted, "n = {n}: {:?}", report.failures);
        }
    }

    #[test]
    fn degree_budget_failures_are_reported() {
        let n = 2;
        let f = witness_generalized_motzkin(n);
        let mut cert = motzkin_sonc_certificate(n);
        cert.degree = 4;
        let report = verify(&f, &Rational::zero(), &ConstraintSystem::new(n), &cert);
        assert!(!report.accepted);
        assert!(report.failures.iter().any(|m| m.contains("exceeds budget")));
    }

    #[test]
    fn putinar_certificates_reject_products() {
        let mut s = ConstraintSystem::new(1);
        s.push("g", poly(1, &[(&[1], 1)])).unwrap();
        let f = poly(1, &[(&[2], 1)]);
        let circuit = Circuit::from_polynomial(&poly(1, &[(&[0], 1)])).unwrap();
        let cert = Certificate {
            kind: CertKind::Sonc,
            shape: Shape::Putinar,
            degree: 2,
            entries: vec![CertEntry {
                ground: GroundElement::Circuit {
                    weight: rat(1),
                    circuit,
                },
                product: vec![0, 0],
            }],
        };
        let report = verify(&f, &Rational::zero(), &s, &cert);
        assert!(report
            .failures
            .iter()
            .any(|m| m.contains("single-factor")));
    }

    #[test]
    fn sdsos_entries_convert_to_verifying_circuits() {
        // z^T G z for z = (x, y) with G = [[2, -2], [-2, 2]].
        let n = 2;
        let monomials = vec![Exponent::unit(n, 0), Exponent::unit(n, 1)];
        let gram = SymmetricMatrix::from_rows(vec![
            vec![rat(2), rat(-2)],
            vec![rat(-2), rat(2)],
        ])
        .unwrap();
        let f = gram_expansion(n, &monomials, &gram);
        let cert = Certificate {
            kind: CertKind::Sdsos,
            shape: Shape::Putinar,
            degree: 2,
            entries: vec![CertEntry {
                ground: GroundElement::SdsosGram {
                    monomials,
                    gram,
                    scaling: vec![rat(1), rat(1)],
                },
                product: Vec::new(),
            }],
        };
        let empty = ConstraintSystem::new(n);
        assert!(verify(&f, &Rational::zero(), &empty, &cert).accepted);
        let sonc = convert_sdsos_to_sonc(&cert).unwrap();
        assert_eq!(sonc.kind, CertKind::Sonc);
        assert_eq!(sonc.degree, cert.degree);
        let report = verify(&f, &Rational::zero(), &empty, &sonc);
        assert!(report.accepted, "failures: {:?}", report.failures);
        assert!(report.residual.is_zero());
    }

    #[test]
    fn sonc_certificates_convert_to_junta_form() {
        let n = 2;
        let f = witness_generalized_motzkin(n);
        let cert = motzkin_sonc_certificate(n);
        let system = ConstraintSystem::new(n).with_hypercube();
        let sa = convert_sonc_to_sa(&cert, &system).unwrap();
        assert_eq!(sa.kind, CertKind::Sa);
        assert_eq!(sa.degree, 2 * cert.degree);
        // Corrections multiply several cube generators, so the result is
        // honest about needing products.
        assert_eq!(sa.shape, Shape::Schmuedgen);
        assert!(sa.entries.iter().any(|e| e.product.len() > 1));
        let report = verify(&f, &Rational::zero(), &system, &sa);
        assert!(report.accepted, "failures: {:?}", report.failures);
        // Corrections are real entries referencing cube generators.
        assert!(sa.entries.iter().any(|e| !e.product.is_empty()));
    }

    #[test]
    fn conversion_requires_cube_generators() {
        let cert = motzkin_sonc_certificate(2);
        let bare = ConstraintSystem::new(2);
        assert!(matches!(
            convert_sonc_to_sa(&cert, &bare),
            Err(ConvertError::MissingCube)
        ));
    }

    #[test]
    fn certificate_json_round_trips() {
        let cert = motzkin_sonc_certificate(2);
        let text = serde_json::to_string(&cert.to_json()).unwrap();
        let parsed: CertificateJson = serde_json::from_str(&text).unwrap();
        assert_eq!(Certificate::from_json(&parsed).unwrap(), cert);

        let system = ConstraintSystem::new(2).with_hypercube();
        let sa = convert_sonc_to_sa(&cert, &system).unwrap();
        let text = serde_json::to_string(&sa.to_json()).unwrap();
        let parsed: CertificateJson = serde_json::from_str(&text).unwrap();
        assert_eq!(Certificate::from_json(&parsed).unwrap(), sa);
    }

    #[test]
    fn signed_quadric_expands_to_the_frozen_form() {
        let f = witness_signed_quadric(2);
        let expect = poly(
            2,
            &[
                (&[0, 0], 1),
                (&[1, 0], -2),
                (&[0, 1], -2),
                (&[2, 0], 1),
                (&[1, 1], 2),
                (&[0, 2], 1),
            ],
        );
        assert_eq!(f, expect);
    }

    #[test]
    fn generalized_motzkin_matches_the_classical_case() {
        let f = witness_generalized_motzkin(2);
        let expect = poly(2, &[(&[0, 0], 1), (&[4, 2], 1), (&[2, 4], 1), (&[2, 2], -3)]);
        assert_eq!(f, expect);
    }

    #[test]
    fn cpop_witnesses_match_the_degree_rules() {
        let (f, system) = witness_cpop(CpopKind::SosFriendly, 2, 1);
        assert_eq!(f, witness_signed_quadric(2));
        assert_eq!(system.constraints()[0].poly.total_degree(), 6);

        let (g, system) = witness_cpop(CpopKind::SoncFriendly, 2, 7);
        assert_eq!(g, witness_generalized_motzkin(2));
        assert_eq!(system.constraints()[0].poly.total_degree(), 10);
        // Radius reaches the sign vectors: the constraint is nonnegative
        // exactly up to the ball, and (1, 1) sits on radius sqrt(2) <= 2.
        let v = system.constraints()[0]
            .poly
            .eval(&[rat(1), rat(1)])
            .unwrap();
        assert!(!v.is_negative());
    }

    #[test]
    fn separation_report_is_fully_green_and_deterministic() {
        for n in [2, 3] {
            let report = separation_report(n, 1);
            assert!(report.quadric_is_sos);
            assert!(report.quadric_not_sonc);
            assert!(report.motzkin_is_sonc);
            assert!(report.motzkin_not_sos);
            assert!(report.details.quadric_refutation_checked);
            assert_eq!(report.details.motzkin_simplex, "m");
            assert!(report.details.cpop_square_friendly.minimizers_feasible);
            assert!(report.details.cpop_square_friendly.objective_vanishes);
            assert!(report.details.cpop_circuit_friendly.minimizers_feasible);
            assert!(report.details.cpop_circuit_friendly.objective_vanishes);
            let a = serde_json::to_string(&report).unwrap();
            let b = serde_json::to_string(&separation_report(n, 1)).unwrap();
            assert_eq!(a, b);
        }
    }
}
