//! Exact rational linear programming with verifiable certificates.
//!
//! `solve` runs a dense two-phase primal simplex over `Rational` entries with
//! Bland's rule, so it terminates on every input, including the classic
//! cycling examples. Outcomes carry certificates:
//!
//! * optimal: a primal point plus a dual vector with zero duality gap,
//! * infeasible: a Farkas vector contradicting the constraint system,
//! * unbounded: a feasible point plus an improving recession direction.
//!
//! Certificates are indexed by the rows of [`LPProblem::row_form`]: the
//! declared constraints in order, then one `x_j >= l_j` row per finite lower
//! bound (in variable order), then one `x_j <= u_j` row per finite upper
//! bound. `check_certificate` re-verifies any outcome against the problem
//! using only rational arithmetic.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::ratio::{format_rational, parse_rational, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rel {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearConstraint {
    pub coeffs: Vec<Rational>,
    pub rel: Rel,
    pub rhs: Rational,
}

impl LinearConstraint {
    pub fn new(coeffs: Vec<Rational>, rel: Rel, rhs: Rational) -> Self {
        LinearConstraint { coeffs, rel, rhs }
    }

    /// Whether `x` satisfies this row exactly.
    pub fn satisfied_by(&self, x: &[Rational]) -> bool {
        let lhs = dot(&self.coeffs, x);
        match self.rel {
            Rel::Le => lhs <= self.rhs,
            Rel::Eq => lhs == self.rhs,
            Rel::Ge => lhs >= self.rhs,
        }
    }
}

/// Optional per-variable bounds; `None` on both sides means a free variable.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VarBound {
    pub lower: Option<Rational>,
    pub upper: Option<Rational>,
}

impl VarBound {
    pub fn free() -> Self {
        VarBound::default()
    }
    pub fn at_least(l: Rational) -> Self {
        VarBound {
            lower: Some(l),
            upper: None,
        }
    }
    pub fn between(l: Rational, u: Rational) -> Self {
        VarBound {
            lower: Some(l),
            upper: Some(u),
        }
    }
}

/// A linear program in maximization form. `objective: None` is a pure
/// feasibility problem (equivalent to maximizing the zero objective).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LPProblem {
    pub objective: Option<Vec<Rational>>,
    pub constraints: Vec<LinearConstraint>,
    pub bounds: Vec<VarBound>,
}

impl LPProblem {
    pub fn new(
        objective: Option<Vec<Rational>>,
        constraints: Vec<LinearConstraint>,
        bounds: Vec<VarBound>,
    ) -> Self {
        LPProblem {
            objective,
            constraints,
            bounds,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.bounds.len()
    }

    pub fn validate(&self) -> Result<(), LpError> {
        let n = self.num_vars();
        if let Some(c) = &self.objective {
            if c.len() != n {
                return Err(LpError::ShapeMismatch {
                    what: "objective length",
                    expected: n,
                    got: c.len(),
                });
            }
        }
        for (i, row) in self.constraints.iter().enumerate() {
            if row.coeffs.len() != n {
                return Err(LpError::RowLengthMismatch {
                    row: i,
                    expected: n,
                    got: row.coeffs.len(),
                });
            }
        }
        Ok(())
    }

    /// The row list certificates are indexed by: declared constraints, then
    /// `x_j >= l_j` rows for finite lower bounds, then `x_j <= u_j` rows for
    /// finite upper bounds, both in variable order.
    pub fn row_form(&self) -> Vec<LinearConstraint> {
        let n = self.num_vars();
        let mut rows = self.constraints.clone();
        for (j, b) in self.bounds.iter().enumerate() {
            if let Some(l) = &b.lower {
                rows.push(LinearConstraint::new(unit_row(n, j), Rel::Ge, l.clone()));
            }
        }
        for (j, b) in self.bounds.iter().enumerate() {
            if let Some(u) = &b.upper {
                rows.push(LinearConstraint::new(unit_row(n, j), Rel::Le, u.clone()));
            }
        }
        rows
    }

    fn objective_vector(&self) -> Vec<Rational> {
        match &self.objective {
            Some(c) => c.clone(),
            None => vec![Rational::zero(); self.num_vars()],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LPOutcome {
    Optimal {
        primal: Vec<Rational>,
        objective: Rational,
        /// One multiplier per `row_form` row; `<=` rows carry nonnegative
        /// multipliers, `>=` rows nonpositive, equations are unrestricted.
        dual: Vec<Rational>,
    },
    Infeasible {
        /// One multiplier per `row_form` row, same sign conventions as `dual`.
        /// Combining rows with these weights yields `0 <= negative`.
        farkas: Vec<Rational>,
    },
    Unbounded {
        feasible: Vec<Rational>,
        direction: Vec<Rational>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LpError {
    #[error("{what}: expected {expected}, got {got}")]
    ShapeMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("constraint row {row}: expected {expected} coefficients, got {got}")]
    RowLengthMismatch {
        row: usize,
        expected: usize,
        got: usize,
    },
}

fn unit_row(n: usize, j: usize) -> Vec<Rational> {
    let mut row = vec![Rational::zero(); n];
    row[j] = Rational::one();
    row
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    let mut s = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += x * y;
        }
    }
    s
}

// Internal standardization: each variable becomes nonnegative columns.
#[derive(Debug, Clone)]
enum VarMap {
    /// xi = x - l; one column.
    Shift { lower: Rational },
    /// xi = u - x; one column.
    Mirror { upper: Rational },
    /// x = xi_plus - xi_minus; two columns.
    Split,
}

#[derive(Debug, Clone, Copy)]
enum RowOrigin {
    /// Declared constraint with this index.
    Constraint(usize),
    /// Gap row `xi_j <= u_j - l_j` of a two-sided variable; maps to the
    /// row_form upper-bound row of variable `j`.
    UpperGap(usize),
}

struct Standardized {
    /// Column j of the equality system, indexed by internal row.
    cols: Vec<Vec<Rational>>,
    /// Objective per column (phase 2).
    costs: Vec<Rational>,
    rhs: Vec<Rational>,
    /// Row sign applied during rhs normalization.
    sigma: Vec<Rational>,
    origins: Vec<RowOrigin>,
    var_maps: Vec<VarMap>,
    /// Structural column -> (variable, sign of dx/dxi).
    col_vars: Vec<(usize, Rational)>,
    n_structural: usize,
    n_slack: usize,
}

fn standardize(p: &LPProblem) -> Standardized {
    let n = p.num_vars();
    let c = p.objective_vector();

    let mut var_maps = Vec::with_capacity(n);
    let mut col_vars: Vec<(usize, Rational)> = Vec::new();
    let mut var_cols: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (j, b) in p.bounds.iter().enumerate() {
        let vm = match (&b.lower, &b.upper) {
            (Some(l), _) => VarMap::Shift { lower: l.clone() },
            (None, Some(u)) => VarMap::Mirror { upper: u.clone() },
            (None, None) => VarMap::Split,
        };
        match &vm {
            VarMap::Shift { .. } => {
                var_cols[j].push(col_vars.len());
                col_vars.push((j, Rational::one()));
            }
            VarMap::Mirror { .. } => {
                var_cols[j].push(col_vars.len());
                col_vars.push((j, -Rational::one()));
            }
            VarMap::Split => {
                var_cols[j].push(col_vars.len());
                col_vars.push((j, Rational::one()));
                var_cols[j].push(col_vars.len());
                col_vars.push((j, -Rational::one()));
            }
        }
        var_maps.push(vm);
    }
    let n_structural = col_vars.len();

    // Internal rows in x-space: declared constraints, then gap rows.
    struct XRow {
        coeffs: Vec<(usize, Rational)>,
        rel: Rel,
        rhs: Rational,
        origin: RowOrigin,
    }
    let mut xrows: Vec<XRow> = Vec::new();
    for (r, row) in p.constraints.iter().enumerate() {
        let coeffs = row
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(j, v)| (j, v.clone()))
            .collect();
        xrows.push(XRow {
            coeffs,
            rel: row.rel,
            rhs: row.rhs.clone(),
            origin: RowOrigin::Constraint(r),
        });
    }
    for (j, b) in p.bounds.iter().enumerate() {
        if b.lower.is_some() && b.upper.is_some() {
            xrows.push(XRow {
                coeffs: vec![(j, Rational::one())],
                rel: Rel::Le,
                rhs: b.upper.clone().unwrap(),
                origin: RowOrigin::UpperGap(j),
            });
        }
    }

    let m = xrows.len();
    let n_slack = xrows.iter().filter(|r| r.rel != Rel::Eq).count();
    let total_cols = n_structural + n_slack + m;

    let mut cols = vec![vec![Rational::zero(); m]; total_cols];
    let mut costs = vec![Rational::zero(); total_cols];
    let mut rhs = vec![Rational::zero(); m];
    let mut sigma = vec![Rational::one(); m];
    let mut origins = Vec::with_capacity(m);

    // Structural costs and the substituted rows.
    for (cidx, (j, sign)) in col_vars.iter().enumerate() {
        costs[cidx] = &c[*j] * sign;
    }
    let mut slack_cursor = n_structural;
    for (r, xr) in xrows.iter().enumerate() {
        origins.push(xr.origin);
        let mut b = xr.rhs.clone();
        for (j, a) in &xr.coeffs {
            match &var_maps[*j] {
                VarMap::Shift { lower } => b -= a * lower,
                VarMap::Mirror { upper } => b -= a * upper,
                VarMap::Split => {}
            }
            for &cidx in &var_cols[*j] {
                let (_, sign) = &col_vars[cidx];
                cols[cidx][r] = a * sign;
            }
        }
        match xr.rel {
            Rel::Le => {
                cols[slack_cursor][r] = Rational::one();
                slack_cursor += 1;
            }
            Rel::Ge => {
                cols[slack_cursor][r] = -Rational::one();
                slack_cursor += 1;
            }
            Rel::Eq => {}
        }
        rhs[r] = b;
    }
    // Normalize rhs >= 0.
    for r in 0..m {
        if rhs[r].is_negative() {
            sigma[r] = -Rational::one();
            rhs[r] = -rhs[r].clone();
            for col in cols.iter_mut() {
                if !col[r].is_zero() {
                    col[r] = -col[r].clone();
                }
            }
        }
    }
    // Artificial columns, one per row.
    for r in 0..m {
        cols[n_structural + n_slack + r][r] = Rational::one();
    }

    Standardized {
        cols,
        costs,
        rhs,
        sigma,
        origins,
        var_maps,
        col_vars,
        n_structural,
        n_slack,
    }
}

struct Tableau {
    /// tab[r][j]: current (basis-inverse applied) coefficient.
    tab: Vec<Vec<Rational>>,
    b: Vec<Rational>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn new(s: &Standardized) -> Self {
        let m = s.rhs.len();
        let ncols = s.cols.len();
        let mut tab = vec![vec![Rational::zero(); ncols]; m];
        for (j, col) in s.cols.iter().enumerate() {
            for r in 0..m {
                tab[r][j] = col[r].clone();
            }
        }
        let basis = (0..m).map(|r| s.n_structural + s.n_slack + r).collect();
        Tableau {
            tab,
            b: s.rhs.clone(),
            basis,
            ncols,
        }
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.tab[row][col].clone();
        debug_assert!(!p.is_zero());
        let inv = Rational::one() / p;
        for j in 0..self.ncols {
            if !self.tab[row][j].is_zero() {
                self.tab[row][j] = &self.tab[row][j] * &inv;
            }
        }
        self.b[row] = &self.b[row] * &inv;
        for r in 0..self.tab.len() {
            if r == row || self.tab[r][col].is_zero() {
                continue;
            }
            let factor = self.tab[r][col].clone();
            for j in 0..self.ncols {
                if !self.tab[row][j].is_zero() {
                    let delta = &factor * &self.tab[row][j];
                    self.tab[r][j] = &self.tab[r][j] - &delta;
                }
            }
            let delta = &factor * &self.b[row];
            self.b[r] = &self.b[r] - &delta;
        }
        self.basis[row] = col;
    }

    fn reduced_cost(&self, costs: &[Rational], j: usize) -> Rational {
        let mut rc = costs[j].clone();
        for (r, &bj) in self.basis.iter().enumerate() {
            if !costs[bj].is_zero() && !self.tab[r][j].is_zero() {
                rc -= &costs[bj] * &self.tab[r][j];
            }
        }
        rc
    }

    /// Bland's rule iteration until optimality or unboundedness.
    fn run_simplex(&mut self, costs: &[Rational], allow: impl Fn(usize) -> bool) -> SimplexEnd {
        loop {
            let mut entering = None;
            for j in 0..self.ncols {
                if self.basis.contains(&j) || !allow(j) {
                    continue;
                }
                if self.reduced_cost(costs, j).is_positive() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(je) = entering else {
                return SimplexEnd::Optimal;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for r in 0..self.tab.len() {
                if self.tab[r][je].is_positive() {
                    let ratio = &self.b[r] / &self.tab[r][je];
                    let better = match &leave {
                        None => true,
                        Some((lr, lratio)) => {
                            ratio < *lratio
                                || (ratio == *lratio && self.basis[r] < self.basis[*lr])
                        }
                    };
                    if better {
                        leave = Some((r, ratio));
                    }
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, je),
                None => return SimplexEnd::Unbounded { entering: je },
            }
        }
    }

    fn value_of_col(&self, j: usize) -> Rational {
        for (r, &bj) in self.basis.iter().enumerate() {
            if bj == j {
                return self.b[r].clone();
            }
        }
        Rational::zero()
    }

    /// Multiplier of internal row `r` under the cost vector, read off the
    /// artificial column of that row.
    fn row_multiplier(&self, costs: &[Rational], art_col: usize) -> Rational {
        let mut y = Rational::zero();
        for (r, &bj) in self.basis.iter().enumerate() {
            if !costs[bj].is_zero() && !self.tab[r][art_col].is_zero() {
                y += &costs[bj] * &self.tab[r][art_col];
            }
        }
        y
    }
}

enum SimplexEnd {
    Optimal,
    Unbounded { entering: usize },
}

/// Solves the program exactly. See the module docs for certificate semantics.
pub fn solve(p: &LPProblem) -> Result<LPOutcome, LpError> {
    p.validate()?;
    let s = standardize(p);
    let m = s.rhs.len();
    let n_struct_slack = s.n_structural + s.n_slack;
    let mut t = Tableau::new(&s);

    // Phase 1: maximize minus the sum of artificials.
    let mut phase1 = vec![Rational::zero(); t.ncols];
    for j in n_struct_slack..t.ncols {
        phase1[j] = -Rational::one();
    }
    match t.run_simplex(&phase1, |_| true) {
        SimplexEnd::Optimal => {}
        SimplexEnd::Unbounded { .. } => unreachable!("phase 1 objective is bounded"),
    }
    let art_sum: Rational = (n_struct_slack..t.ncols).map(|j| t.value_of_col(j)).sum();
    if !art_sum.is_zero() {
        let y_int: Vec<Rational> = (0..m)
            .map(|r| t.row_multiplier(&phase1, n_struct_slack + r))
            .collect();
        let farkas = assemble_row_multipliers(p, &s, &y_int, None);
        debug_assert!(farkas_is_valid(p, &farkas));
        return Ok(LPOutcome::Infeasible { farkas });
    }

    // Drive basic artificials out where possible; redundant rows stay pinned
    // at zero and never move again.
    for r in 0..m {
        if t.basis[r] >= n_struct_slack {
            if let Some(j) = (0..n_struct_slack).find(|&j| !t.tab[r][j].is_zero()) {
                t.pivot(r, j);
            }
        }
    }

    // Phase 2 on the real objective.
    match t.run_simplex(&s.costs, |j| j < n_struct_slack) {
        SimplexEnd::Optimal => {
            let x = recover_point(&s, &t);
            let objective = dot(&p.objective_vector(), &x);
            let y_int: Vec<Rational> = (0..m)
                .map(|r| t.row_multiplier(&s.costs, n_struct_slack + r))
                .collect();
            let dual = assemble_row_multipliers(p, &s, &y_int, Some(&t));
            debug_assert!(dual_is_valid(p, &x, &objective, &dual));
            Ok(LPOutcome::Optimal {
                primal: x,
                objective,
                dual,
            })
        }
        SimplexEnd::Unbounded { entering } => {
            let feasible = recover_point(&s, &t);
            let mut dxi = vec![Rational::zero(); t.ncols];
            dxi[entering] = Rational::one();
            for (r, &bj) in t.basis.iter().enumerate() {
                if !t.tab[r][entering].is_zero() {
                    dxi[bj] = -t.tab[r][entering].clone();
                }
            }
            let mut direction = vec![Rational::zero(); p.num_vars()];
            for (cidx, (j, sign)) in s.col_vars.iter().enumerate() {
                if !dxi[cidx].is_zero() {
                    direction[*j] += sign * &dxi[cidx];
                }
            }
            Ok(LPOutcome::Unbounded {
                feasible,
                direction,
            })
        }
    }
}

fn recover_point(s: &Standardized, t: &Tableau) -> Vec<Rational> {
    let n = s.var_maps.len();
    let mut xi = vec![Rational::zero(); s.n_structural];
    for (r, &bj) in t.basis.iter().enumerate() {
        if bj < s.n_structural {
            xi[bj] = t.b[r].clone();
        }
    }
    let mut x = vec![Rational::zero(); n];
    let mut cursor = 0usize;
    for (j, vm) in s.var_maps.iter().enumerate() {
        match vm {
            VarMap::Shift { lower } => {
                x[j] = lower + &xi[cursor];
                cursor += 1;
            }
            VarMap::Mirror { upper } => {
                x[j] = upper - &xi[cursor];
                cursor += 1;
            }
            VarMap::Split => {
                x[j] = &xi[cursor] - &xi[cursor + 1];
                cursor += 2;
            }
        }
    }
    x
}

/// Turns internal row multipliers into a row_form vector. For optimal
/// outcomes (`tableau` present) bound rows receive `c_j - t_j`; for Farkas
/// vectors they receive `-t_j`, where `t_j` collects the mapped internal
/// contributions on variable `j`.
fn assemble_row_multipliers(
    p: &LPProblem,
    s: &Standardized,
    y_int: &[Rational],
    tableau: Option<&Tableau>,
) -> Vec<Rational> {
    let n = p.num_vars();
    let nrows_constraints = p.constraints.len();
    let c = p.objective_vector();

    // row_form index of each bound row.
    let mut lower_idx = vec![None; n];
    let mut upper_idx = vec![None; n];
    let mut cursor = nrows_constraints;
    for (j, b) in p.bounds.iter().enumerate() {
        if b.lower.is_some() {
            lower_idx[j] = Some(cursor);
            cursor += 1;
        }
    }
    for (j, b) in p.bounds.iter().enumerate() {
        if b.upper.is_some() {
            upper_idx[j] = Some(cursor);
            cursor += 1;
        }
    }
    let total_rows = cursor;
    let mut out = vec![Rational::zero(); total_rows];

    // Undo row normalization and route internal rows to row_form slots.
    let mut t = vec![Rational::zero(); n];
    for (r, origin) in s.origins.iter().enumerate() {
        let y = &y_int[r] * &s.sigma[r];
        if y.is_zero() {
            continue;
        }
        match origin {
            RowOrigin::Constraint(idx) => {
                for (j, a) in p.constraints[*idx].coeffs.iter().enumerate() {
                    if !a.is_zero() {
                        t[j] += a * &y;
                    }
                }
                out[*idx] = y;
            }
            RowOrigin::UpperGap(j) => {
                t[*j] += &y;
                out[upper_idx[*j].expect("two-sided variable has an upper row")] = y;
            }
        }
    }

    for j in 0..n {
        let residual = match tableau {
            Some(_) => &c[j] - &t[j],
            None => -t[j].clone(),
        };
        if residual.is_zero() {
            continue;
        }
        match &s.var_maps[j] {
            VarMap::Shift { .. } => {
                out[lower_idx[j].expect("shifted variable has a lower row")] = residual;
            }
            VarMap::Mirror { .. } => {
                out[upper_idx[j].expect("mirrored variable has an upper row")] = residual;
            }
            VarMap::Split => {
                // Free variables force the residual to vanish at optimality
                // and in Farkas vectors alike.
                debug_assert!(residual.is_zero());
            }
        }
    }
    out
}

fn dual_signs_ok(rows: &[LinearConstraint], y: &[Rational]) -> bool {
    rows.iter().zip(y).all(|(row, v)| match row.rel {
        Rel::Le => !v.is_negative(),
        Rel::Ge => !v.is_positive(),
        Rel::Eq => true,
    })
}

fn combined_coeffs(rows: &[LinearConstraint], y: &[Rational], n: usize) -> Vec<Rational> {
    let mut acc = vec![Rational::zero(); n];
    for (row, v) in rows.iter().zip(y) {
        if v.is_zero() {
            continue;
        }
        for (j, a) in row.coeffs.iter().enumerate() {
            if !a.is_zero() {
                acc[j] += a * v;
            }
        }
    }
    acc
}

fn dual_is_valid(p: &LPProblem, x: &[Rational], objective: &Rational, dual: &[Rational]) -> bool {
    let rows = p.row_form();
    if dual.len() != rows.len() {
        return false;
    }
    if !rows.iter().all(|r| r.satisfied_by(x)) {
        return false;
    }
    if &dot(&p.objective_vector(), x) != objective {
        return false;
    }
    if !dual_signs_ok(&rows, dual) {
        return false;
    }
    if combined_coeffs(&rows, dual, p.num_vars()) != p.objective_vector() {
        return false;
    }
    let dual_value: Rational = rows
        .iter()
        .zip(dual)
        .map(|(r, v)| &r.rhs * v)
        .sum();
    dual_value == *objective
}

fn farkas_is_valid(p: &LPProblem, farkas: &[Rational]) -> bool {
    let rows = p.row_form();
    if farkas.len() != rows.len() {
        return false;
    }
    if !dual_signs_ok(&rows, farkas) {
        return false;
    }
    if combined_coeffs(&rows, farkas, p.num_vars())
        .iter()
        .any(|v| !v.is_zero())
    {
        return false;
    }
    let value: Rational = rows
        .iter()
        .zip(farkas)
        .map(|(r, v)| &r.rhs * v)
        .sum();
    value.is_negative()
}

fn unbounded_is_valid(p: &LPProblem, feasible: &[Rational], direction: &[Rational]) -> bool {
    let rows = p.row_form();
    if feasible.len() != p.num_vars() || direction.len() != p.num_vars() {
        return false;
    }
    if !rows.iter().all(|r| r.satisfied_by(feasible)) {
        return false;
    }
    for row in &rows {
        let d = dot(&row.coeffs, direction);
        let ok = match row.rel {
            Rel::Le => !d.is_positive(),
            Rel::Eq => d.is_zero(),
            Rel::Ge => !d.is_negative(),
        };
        if !ok {
            return false;
        }
    }
    dot(&p.objective_vector(), direction).is_positive()
}

/// Re-verifies an outcome's certificate against the problem.
pub fn check_certificate(p: &LPProblem, o: &LPOutcome) -> bool {
    if p.validate().is_err() {
        return false;
    }
    match o {
        LPOutcome::Optimal {
            primal,
            objective,
            dual,
        } => primal.len() == p.num_vars() && dual_is_valid(p, primal, objective, dual),
        LPOutcome::Infeasible { farkas } => farkas_is_valid(p, farkas),
        LPOutcome::Unbounded {
            feasible,
            direction,
        } => unbounded_is_valid(p, feasible, direction),
    }
}

// JSON forms.

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LPProblemJson {
    pub objective: Option<Vec<String>>,
    pub constraints: Vec<ConstraintJson>,
    pub bounds: Vec<BoundJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConstraintJson {
    pub row: Vec<String>,
    pub rel: String,
    pub rhs: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundJson {
    pub lower: Option<String>,
    pub upper: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LPOutcomeJson {
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub primal: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub objective: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dual: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub farkas: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub direction: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LpJsonError {
    #[error("{0}")]
    BadRational(#[from] crate::ratio::ParseRationalError),
    #[error("unknown relation {0:?}, expected \"<=\", \"=\" or \">=\"")]
    BadRel(String),
}

fn rel_str(rel: Rel) -> &'static str {
    match rel {
        Rel::Le => "<=",
        Rel::Eq => "=",
        Rel::Ge => ">=",
    }
}

fn parse_rel(s: &str) -> Result<Rel, LpJsonError> {
    match s {
        "<=" => Ok(Rel::Le),
        "=" | "==" => Ok(Rel::Eq),
        ">=" => Ok(Rel::Ge),
        other => Err(LpJsonError::BadRel(other.to_string())),
    }
}

fn parse_vec(v: &[String]) -> Result<Vec<Rational>, LpJsonError> {
    v.iter()
        .map(|s| parse_rational(s).map_err(Into::into))
        .collect()
}

fn format_vec(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

impl LPProblem {
    pub fn to_json(&self) -> LPProblemJson {
        LPProblemJson {
            objective: self.objective.as_ref().map(|c| format_vec(c)),
            constraints: self
                .constraints
                .iter()
                .map(|c| ConstraintJson {
                    row: format_vec(&c.coeffs),
                    rel: rel_str(c.rel).to_string(),
                    rhs: format_rational(&c.rhs),
                })
                .collect(),
            bounds: self
                .bounds
                .iter()
                .map(|b| BoundJson {
                    lower: b.lower.as_ref().map(format_rational),
                    upper: b.upper.as_ref().map(format_rational),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &LPProblemJson) -> Result<Self, LpJsonError> {
        let objective = match &json.objective {
            Some(c) => Some(parse_vec(c)?),
            None => None,
        };
        let mut constraints = Vec::with_capacity(json.constraints.len());
        for c in &json.constraints {
            constraints.push(LinearConstraint::new(
                parse_vec(&c.row)?,
                parse_rel(&c.rel)?,
                parse_rational(&c.rhs)?,
            ));
        }
        let mut bounds = Vec::with_capacity(json.bounds.len());
        for b in &json.bounds {
            bounds.push(VarBound {
                lower: b.lower.as_ref().map(|s| parse_rational(s)).transpose()?,
                upper: b.upper.as_ref().map(|s| parse_rational(s)).transpose()?,
            });
        }
        Ok(LPProblem::new(objective, constraints, bounds))
    }
}

impl LPOutcome {
    pub fn to_json(&self) -> LPOutcomeJson {
        match self {
            LPOutcome::Optimal {
                primal,
                objective,
                dual,
            } => LPOutcomeJson {
                status: "optimal".into(),
                primal: Some(format_vec(primal)),
                objective: Some(format_rational(objective)),
                dual: Some(format_vec(dual)),
                farkas: None,
                direction: None,
            },
            LPOutcome::Infeasible { farkas } => LPOutcomeJson {
                status: "infeasible".into(),
                primal: None,
                objective: None,
                dual: None,
                farkas: Some(format_vec(farkas)),
                direction: None,
            },
            LPOutcome::Unbounded {
                feasible,
                direction,
            } => LPOutcomeJson {
                status: "unbounded".into(),
                primal: Some(format_vec(feasible)),
                objective: None,
                dual: None,
                farkas: None,
                direction: Some(format_vec(direction)),
            },
        }
    }
}
