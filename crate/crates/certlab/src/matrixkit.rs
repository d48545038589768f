//! Exact symmetric matrix tools: positive semidefiniteness with witnesses,
//! diagonal dominance, and scaled diagonal dominance.
//!
//! `psd_check` runs an LDL^T elimination with symmetric pivoting. It either
//! returns a permuted factorization that reconstructs the input, proving
//! semidefiniteness, or a rational vector `v` with `v^T M v < 0`, proving
//! the opposite. `sdd_scaling` finds a positive diagonal rescaling making a
//! matrix diagonally dominant (when one exists) with an exact feasibility
//! program, and `sdd_to_binomial_squares` turns that into an explicit sum
//! of weighted one- and two-variable squares.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::exactlp::{self, LPOutcome, LPProblem, LinearConstraint, Rel, VarBound};
use crate::polycore::{Exponent, Polynomial};
use crate::ratio::{format_rational, parse_rational, rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricMatrix {
    size: usize,
    rows: Vec<Vec<Rational>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatrixError {
    #[error("row {row} has {got} entries, expected {expected}")]
    RaggedRow {
        row: usize,
        expected: usize,
        got: usize,
    },
    #[error("entries ({i}, {j}) and ({j}, {i}) differ")]
    NotSymmetric { i: usize, j: usize },
}

impl SymmetricMatrix {
    pub fn zero(size: usize) -> Self {
        SymmetricMatrix {
            size,
            rows: vec![vec![Rational::zero(); size]; size],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, MatrixError> {
        let size = rows.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != size {
                return Err(MatrixError::RaggedRow {
                    row: i,
                    expected: size,
                    got: row.len(),
                });
            }
        }
        for i in 0..size {
            for j in (i + 1)..size {
                if rows[i][j] != rows[j][i] {
                    return Err(MatrixError::NotSymmetric { i, j });
                }
            }
        }
        Ok(SymmetricMatrix { size, rows })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.rows[i][j]
    }

    /// Sets both `(i, j)` and `(j, i)`.
    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.rows[i][j] = v.clone();
        self.rows[j][i] = v;
    }

    /// Adds `v` at `(i, j)` and, when off-diagonal, at `(j, i)` too.
    pub fn add_at(&mut self, i: usize, j: usize, v: &Rational) {
        self.rows[i][j] += v;
        if i != j {
            self.rows[j][i] += v;
        }
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    /// The value `v^T M v`.
    pub fn quadratic_form(&self, v: &[Rational]) -> Rational {
        assert_eq!(v.len(), self.size, "vector length must match matrix size");
        let mut acc = Rational::zero();
        for i in 0..self.size {
            if v[i].is_zero() {
                continue;
            }
            for j in 0..self.size {
                if !v[j].is_zero() && !self.rows[i][j].is_zero() {
                    acc += &self.rows[i][j] * &v[i] * &v[j];
                }
            }
        }
        acc
    }

    pub fn to_json(&self) -> SymmetricMatrixJson {
        SymmetricMatrixJson {
            size: self.size,
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(format_rational).collect())
                .collect(),
        }
    }

    pub fn from_json(json: &SymmetricMatrixJson) -> Result<Self, MatrixJsonError> {
        let mut rows = Vec::with_capacity(json.rows.len());
        for r in &json.rows {
            rows.push(
                r.iter()
                    .map(|s| parse_rational(s))
                    .collect::<Result<Vec<_>, _>>()?,
            );
        }
        if rows.len() != json.size {
            return Err(MatrixJsonError::SizeMismatch {
                declared: json.size,
                got: rows.len(),
            });
        }
        Ok(SymmetricMatrix::from_rows(rows)?)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SymmetricMatrixJson {
    pub size: usize,
    pub rows: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatrixJsonError {
    #[error("{0}")]
    BadRational(#[from] crate::ratio::ParseRationalError),
    #[error("declared size {declared} does not match {got} rows")]
    SizeMismatch { declared: usize, got: usize },
    #[error("{0}")]
    BadMatrix(#[from] MatrixError),
}

/// Result of the exact semidefiniteness test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PsdOutcome {
    Psd(PsdFactorization),
    NotPsd {
        /// Rational vector with `v^T M v < 0`.
        witness: Vec<Rational>,
    },
}

/// Permuted factorization `P M P^T = L D L^T` with unit lower triangular
/// `L` and nonnegative diagonal `D`; position `k` of the permuted system
/// holds original index `perm[k]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsdFactorization {
    pub perm: Vec<usize>,
    pub lower: Vec<Vec<Rational>>,
    pub diag: Vec<Rational>,
}

impl PsdFactorization {
    /// Re-expands `L D L^T` and compares against the permuted input.
    pub fn reconstructs(&self, m: &SymmetricMatrix) -> bool {
        let n = m.size();
        if self.perm.len() != n || self.lower.len() != n || self.diag.len() != n {
            return false;
        }
        if self.diag.iter().any(|d| d.is_negative()) {
            return false;
        }
        for a in 0..n {
            for b in 0..=a {
                let mut s = Rational::zero();
                for k in 0..=b {
                    if !self.diag[k].is_zero() {
                        s += &self.lower[a][k] * &self.lower[b][k] * &self.diag[k];
                    }
                }
                if &s != m.get(self.perm[a], self.perm[b]) {
                    return false;
                }
            }
        }
        true
    }
}

/// Decides semidefiniteness exactly. The factorization case reconstructs
/// the input matrix; the witness case pins down a direction of negative
/// curvature in rational arithmetic.
pub fn psd_check(m: &SymmetricMatrix) -> PsdOutcome {
    let n = m.size();
    let mut s: Vec<Vec<Rational>> = m.rows().to_vec();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut lower = vec![vec![Rational::zero(); n]; n];
    let mut diag = vec![Rational::zero(); n];
    for i in 0..n {
        lower[i][i] = Rational::one();
    }

    let swap = |s: &mut Vec<Vec<Rational>>,
                lower: &mut Vec<Vec<Rational>>,
                perm: &mut Vec<usize>,
                k: usize,
                j: usize| {
        if k == j {
            return;
        }
        s.swap(k, j);
        for row in s.iter_mut() {
            row.swap(k, j);
        }
        perm.swap(k, j);
        // Only the already-built columns of L carry information.
        for col in 0..k {
            let tmp = lower[k][col].clone();
            lower[k][col] = lower[j][col].clone();
            lower[j][col] = tmp;
        }
    };

    let mut k = 0usize;
    while k < n {
        if let Some(j) = (k..n).find(|&j| s[j][j].is_positive()) {
            swap(&mut s, &mut lower, &mut perm, k, j);
            let d = s[k][k].clone();
            diag[k] = d.clone();
            for i in (k + 1)..n {
                lower[i][k] = &s[i][k] / &d;
            }
            for i in (k + 1)..n {
                if s[i][k].is_zero() {
                    continue;
                }
                for j in (k + 1)..=i {
                    if !s[j][k].is_zero() {
                        let delta = &lower[i][k] * &s[j][k];
                        s[i][j] = &s[i][j] - &delta;
                        if i != j {
                            s[j][i] = s[i][j].clone();
                        }
                    }
                }
            }
            k += 1;
            continue;
        }
        // No positive diagonal remains.
        let mut u = vec![Rational::zero(); n];
        if let Some(j) = (k..n).find(|&j| s[j][j].is_negative()) {
            u[j] = Rational::one();
        } else if let Some((i, j)) = (k..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .find(|&(i, j)| !s[i][j].is_zero())
        {
            // Both diagonals vanish, so this direction evaluates to
            // minus twice the absolute off-diagonal entry.
            u[j] = Rational::one();
            u[i] = if s[i][j].is_positive() {
                -Rational::one()
            } else {
                Rational::one()
            };
        } else {
            // Remaining block is identically zero: semidefinite.
            break;
        }
        // Pull the reduced witness back through the completed columns:
        // choose the leading part so the factored contribution vanishes.
        let mut w = u;
        for i in (0..k).rev() {
            let mut acc = Rational::zero();
            for r in (i + 1)..n {
                if !w[r].is_zero() && !lower[r][i].is_zero() {
                    acc += &lower[r][i] * &w[r];
                }
            }
            w[i] = -acc;
        }
        let mut witness = vec![Rational::zero(); n];
        for (pos, &orig) in perm.iter().enumerate() {
            witness[orig] = w[pos].clone();
        }
        debug_assert!(m.quadratic_form(&witness).is_negative());
        return PsdOutcome::NotPsd { witness };
    }

    let fact = PsdFactorization { perm, lower, diag };
    debug_assert!(fact.reconstructs(m));
    PsdOutcome::Psd(fact)
}

/// One weighted square of a linear form in at most two coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareTerm {
    pub weight: Rational,
    /// Coordinate indices with their coefficients; length one or two.
    pub form: Vec<(usize, Rational)>,
}

impl SquareTerm {
    /// Adds `weight * (sum_k c_k z_{i_k})^2` into `acc`.
    fn accumulate(&self, acc: &mut SymmetricMatrix) {
        for (a, ca) in &self.form {
            for (b, cb) in &self.form {
                if a <= b {
                    let v = &self.weight * ca * cb;
                    acc.add_at(*a, *b, &v);
                }
            }
        }
    }
}

/// Expands a list of square terms into the symmetric matrix of the
/// quadratic form they sum to.
pub fn squares_to_matrix(size: usize, terms: &[SquareTerm]) -> SymmetricMatrix {
    let mut acc = SymmetricMatrix::zero(size);
    for t in terms {
        t.accumulate(&mut acc);
    }
    acc
}

/// Splits a diagonally dominant matrix into weighted binomial and single
/// squares; returns `None` when some row violates dominance.
pub fn dd_decompose(m: &SymmetricMatrix) -> Option<Vec<SquareTerm>> {
    let n = m.size();
    let mut residual: Vec<Rational> = (0..n).map(|i| m.get(i, i).clone()).collect();
    let mut terms = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let a = m.get(i, j);
            if a.is_zero() {
                continue;
            }
            let w = a.abs();
            residual[i] -= &w;
            residual[j] -= &w;
            let sign_j = if a.is_positive() {
                Rational::one()
            } else {
                -Rational::one()
            };
            terms.push(SquareTerm {
                weight: w,
                form: vec![(i, Rational::one()), (j, sign_j)],
            });
        }
    }
    for (i, r) in residual.into_iter().enumerate() {
        if r.is_negative() {
            return None;
        }
        if !r.is_zero() {
            terms.push(SquareTerm {
                weight: r,
                form: vec![(i, Rational::one())],
            });
        }
    }
    Some(terms)
}

/// Whether each diagonal entry dominates the absolute off-diagonal row sum.
pub fn is_diagonally_dominant(m: &SymmetricMatrix) -> bool {
    let n = m.size();
    (0..n).all(|i| {
        let off: Rational = (0..n)
            .filter(|&j| j != i)
            .map(|j| m.get(i, j).abs())
            .sum();
        *m.get(i, i) >= off
    })
}

/// Shorter name for [`is_diagonally_dominant`].
pub fn is_dd(m: &SymmetricMatrix) -> bool {
    is_diagonally_dominant(m)
}

/// Result of the scaled-dominance decision: either a positive diagonal
/// scaling, or the scaling program together with its infeasibility
/// certificate for independent validation.
#[derive(Debug, Clone)]
pub enum SddOutcome {
    Sdd { scaling: Vec<Rational> },
    NotSdd { problem: LPProblem, farkas: LPOutcome },
}

/// Decides whether some `d > 0` makes `D M D` diagonally dominant, through
/// the linearized system `M_ii d_i >= sum_{j != i} |M_ij| d_j` with
/// `d_i >= 1` (any positive solution rescales to one with entries at least
/// one).
pub fn is_sdd(m: &SymmetricMatrix) -> SddOutcome {
    let n = m.size();
    if n == 0 {
        return SddOutcome::Sdd {
            scaling: Vec::new(),
        };
    }
    let mut constraints = Vec::with_capacity(n);
    for i in 0..n {
        let mut coeffs = vec![Rational::zero(); n];
        coeffs[i] = m.get(i, i).clone();
        for j in 0..n {
            if j != i {
                coeffs[j] = -m.get(i, j).abs();
            }
        }
        constraints.push(LinearConstraint::new(coeffs, Rel::Ge, Rational::zero()));
    }
    let problem = LPProblem::new(None, constraints, vec![VarBound::at_least(rat(1)); n]);
    match exactlp::solve(&problem).expect("well-formed scaling program") {
        LPOutcome::Optimal { primal, .. } => {
            debug_assert!(is_diagonally_dominant(&scale_congruence(m, &primal)));
            SddOutcome::Sdd { scaling: primal }
        }
        out @ LPOutcome::Infeasible { .. } => {
            debug_assert!(exactlp::check_certificate(&problem, &out));
            SddOutcome::NotSdd {
                problem,
                farkas: out,
            }
        }
        LPOutcome::Unbounded { .. } => unreachable!("feasibility program"),
    }
}

/// `Some(d)` certifies scaled diagonal dominance; `None` refutes it.
pub fn sdd_scaling(m: &SymmetricMatrix) -> Option<Vec<Rational>> {
    match is_sdd(m) {
        SddOutcome::Sdd { scaling } => Some(scaling),
        SddOutcome::NotSdd { .. } => None,
    }
}

/// The congruence `D M D` for diagonal `d`.
pub fn scale_congruence(m: &SymmetricMatrix, d: &[Rational]) -> SymmetricMatrix {
    let n = m.size();
    assert_eq!(d.len(), n, "scaling length must match matrix size");
    let mut out = SymmetricMatrix::zero(n);
    for i in 0..n {
        for j in i..n {
            out.set(i, j, m.get(i, j) * &d[i] * &d[j]);
        }
    }
    out
}

/// Splits `M` into weighted squares of forms in at most two coordinates,
/// given a scaling `d` with `D M D` diagonally dominant:
/// `z^T M z = sum_t w_t (z_i / d_i +- z_j / d_j)^2 + sum_i r_i (z_i / d_i)^2`.
/// Returns `None` when the scaled matrix fails dominance.
pub fn binomial_squares_from_scaling(
    m: &SymmetricMatrix,
    d: &[Rational],
) -> Option<Vec<SquareTerm>> {
    let scaled = scale_congruence(m, d);
    let inner = dd_decompose(&scaled)?;
    let terms: Vec<SquareTerm> = inner
        .into_iter()
        .map(|t| SquareTerm {
            weight: t.weight,
            form: t
                .form
                .into_iter()
                .map(|(i, c)| {
                    let scaled_c = c / &d[i];
                    (i, scaled_c)
                })
                .collect(),
        })
        .collect();
    debug_assert_eq!(squares_to_matrix(m.size(), &terms), *m);
    Some(terms)
}

/// Writes a scaled diagonally dominant matrix as a sum of weighted binomial
/// and single squares, finding the scaling itself. Returns `None` exactly
/// when no positive scaling exists.
pub fn sdd_to_binomial_squares(m: &SymmetricMatrix) -> Option<Vec<SquareTerm>> {
    let d = sdd_scaling(m)?;
    Some(binomial_squares_from_scaling(m, &d).expect("scaling certifies dominance"))
}

/// Exact check of a quadratic-form representation of a polynomial: the
/// expansion `sum_ij G_ij x^(m_i + m_j)` must reproduce `f`, and `G` must
/// be positive semidefinite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramReport {
    pub accepted: bool,
    pub psd: bool,
    /// Direction of negative curvature when the matrix is not semidefinite.
    pub witness: Option<Vec<Rational>>,
    pub failures: Vec<String>,
    pub residual: Polynomial,
}

pub fn gram_verify(
    f: &Polynomial,
    monomials: &[Exponent],
    gram: &SymmetricMatrix,
) -> GramReport {
    let n = f.nvars();
    let mut failures = Vec::new();
    if gram.size() != monomials.len() {
        failures.push(format!(
            "matrix size {} does not match {} monomials",
            gram.size(),
            monomials.len()
        ));
    }
    if monomials.iter().any(|m| m.len() != n) {
        failures.push("monomial exponent length differs from the polynomial".to_string());
    }
    if !failures.is_empty() {
        return GramReport {
            accepted: false,
            psd: false,
            witness: None,
            failures,
            residual: f.clone(),
        };
    }
    let size = gram.size();
    let mut terms = Vec::new();
    for i in 0..size {
        for j in 0..size {
            let g = gram.get(i, j);
            if !g.is_zero() {
                terms.push((monomials[i].add(&monomials[j]), g.clone()));
            }
        }
    }
    let expansion = Polynomial::from_terms(n, terms).expect("consistent dimension");
    let residual = f - &expansion;
    if !residual.is_zero() {
        failures.push("expansion of the quadratic form does not match the polynomial".to_string());
    }
    let (psd, witness) = match psd_check(gram) {
        PsdOutcome::Psd(_) => (true, None),
        PsdOutcome::NotPsd { witness } => {
            failures.push("matrix is not positive semidefinite".to_string());
            (false, Some(witness))
        }
    };
    GramReport {
        accepted: failures.is_empty(),
        psd,
        witness,
        failures,
        residual,
    }
}
