//! Linear programming kernel: bounded-variable revised simplex producing
//! primal values, row duals and reduced costs.
//!
//! Problems are maximisations over `lower <= x <= upper` with rows
//! `a_i · x <= b_i`. Every row gets a slack `s_i >= 0`; rows whose slack
//! would start negative get an artificial variable and a phase-one solve.
//!
//! The basis inverse is kept dense and updated in product form, with a full
//! refactorisation every [`REFACTOR_INTERVAL`] pivots. Pricing is Dantzig's
//! rule; after [`DEGENERATE_STREAK`] consecutive degenerate pivots the solver
//! switches to Bland's rule until the objective moves again.
//!
//! A [`Basis`] from a previous solve can be passed back in. If it is primal
//! feasible for the new problem the primal simplex resumes from it; if it is
//! only dual feasible (typical after tightening bounds in branch-and-bound)
//! the dual simplex runs first. Otherwise the solve starts cold.

use std::fmt::Write as _;
use std::time::Instant;

use thiserror::Error;

/// Primal feasibility tolerance.
pub const FEAS_TOL: f64 = 1e-9;
/// Reduced cost (dual feasibility) tolerance.
pub const OPT_TOL: f64 = 1e-9;
/// Tolerance for reported primal/dual objective agreement.
pub const GAP_TOL: f64 = 1e-6;
const PIVOT_TOL: f64 = 1e-9;
pub const REFACTOR_INTERVAL: usize = 100;
pub const DEGENERATE_STREAK: usize = 50;
/// Phase-one infeasibility above which the problem is declared infeasible.
const PHASE_ONE_TOL: f64 = 1e-7;

#[derive(Debug, Error, PartialEq)]
pub enum LpError {
    #[error("variable index {0} out of range")]
    VariableOutOfRange(usize),
    #[error("row index {0} out of range")]
    RowOutOfRange(usize),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

/// Maximisation LP with `<=` rows, stored column-wise.
#[derive(Debug, Clone, Default)]
pub struct LinearProgram {
    rhs: Vec<f64>,
    cost: Vec<f64>,
    lower: Vec<f64>,
    upper: Vec<f64>,
    columns: Vec<Vec<(usize, f64)>>,
}

impl LinearProgram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn num_rows(&self) -> usize {
        self.rhs.len()
    }

    pub fn num_vars(&self) -> usize {
        self.cost.len()
    }

    /// Adds an empty row `0 <= rhs`; coefficients arrive with columns.
    pub fn add_row(&mut self, rhs: f64) -> usize {
        self.rhs.push(rhs);
        self.rhs.len() - 1
    }

    pub fn add_variable(&mut self, cost: f64, lower: f64, upper: f64) -> usize {
        self.cost.push(cost);
        self.lower.push(lower);
        self.upper.push(upper);
        self.columns.push(Vec::new());
        self.cost.len() - 1
    }

    /// Adds a variable together with its coefficients in existing rows.
    pub fn add_column(
        &mut self,
        cost: f64,
        lower: f64,
        upper: f64,
        entries: &[(usize, f64)],
    ) -> Result<usize, LpError> {
        if let Some(&(r, _)) = entries.iter().find(|(r, _)| *r >= self.num_rows()) {
            return Err(LpError::RowOutOfRange(r));
        }
        let j = self.add_variable(cost, lower, upper);
        self.columns[j] = entries.iter().copied().filter(|&(_, a)| a != 0.0).collect();
        Ok(j)
    }

    /// Adds the row `Σ coef·x_var <= rhs`.
    pub fn add_constraint(&mut self, terms: &[(usize, f64)], rhs: f64) -> Result<usize, LpError> {
        if let Some(&(v, _)) = terms.iter().find(|(v, _)| *v >= self.num_vars()) {
            return Err(LpError::VariableOutOfRange(v));
        }
        let r = self.add_row(rhs);
        for &(v, a) in terms {
            if a != 0.0 {
                self.columns[v].push((r, a));
            }
        }
        Ok(r)
    }

    pub fn set_bounds(&mut self, var: usize, lower: f64, upper: f64) {
        self.lower[var] = lower;
        self.upper[var] = upper;
    }

    pub fn set_cost(&mut self, var: usize, cost: f64) {
        self.cost[var] = cost;
    }

    pub fn cost(&self, var: usize) -> f64 {
        self.cost[var]
    }

    pub fn bounds(&self, var: usize) -> (f64, f64) {
        (self.lower[var], self.upper[var])
    }

    pub fn column(&self, var: usize) -> &[(usize, f64)] {
        &self.columns[var]
    }

    pub fn rhs(&self, row: usize) -> f64 {
        self.rhs[row]
    }

    pub fn objective(&self, x: &[f64]) -> f64 {
        self.cost.iter().zip(x).map(|(c, v)| c * v).sum()
    }

    pub fn row_activity(&self, x: &[f64]) -> Vec<f64> {
        let mut act = vec![0.0; self.num_rows()];
        for (j, col) in self.columns.iter().enumerate() {
            for &(r, a) in col {
                act[r] += a * x[j];
            }
        }
        act
    }

    /// `b·y + Σ_j d_j x_j`; equals the primal objective at an optimum.
    pub fn dual_objective(&self, sol: &LpSolution) -> f64 {
        let by: f64 = self.rhs.iter().zip(&sol.duals).map(|(b, y)| b * y).sum();
        let dx: f64 = sol.reduced_costs.iter().zip(&sol.x).map(|(d, x)| d * x).sum();
        by + dx
    }

    /// Human-readable export in the CPLEX LP layout:
    ///
    /// ```text
    /// Maximize
    ///  obj: 1 x0 - 1 x1
    /// Subject To
    ///  r0: 1 x0 - 1 x2 <= 0
    /// Bounds
    ///  0 <= x0 <= 1
    ///  x1 >= 0
    /// End
    /// ```
    ///
    /// Variables are named `x<j>`, rows `r<i>`. Not meant for round-tripping.
    pub fn to_lp_format(&self) -> String {
        let term = |out: &mut String, first: bool, a: f64, name: String| {
            let sign = if a < 0.0 { "-" } else if first { "" } else { "+" };
            let _ = write!(out, "{sign}{}{} {name}", if sign.is_empty() { "" } else { " " }, a.abs());
        };
        let mut out = String::from("Maximize\n obj:");
        let mut first = true;
        for (j, &c) in self.cost.iter().enumerate() {
            if c != 0.0 {
                out.push(' ');
                term(&mut out, first, c, format!("x{j}"));
                first = false;
            }
        }
        if first {
            out.push_str(" 0");
        }
        out.push_str("\nSubject To\n");
        let mut rows: Vec<Vec<(usize, f64)>> = vec![Vec::new(); self.num_rows()];
        for (j, col) in self.columns.iter().enumerate() {
            for &(r, a) in col {
                rows[r].push((j, a));
            }
        }
        for (i, row) in rows.iter().enumerate() {
            let _ = write!(out, " r{i}:");
            if row.is_empty() {
                out.push_str(" 0");
            }
            for (k, &(j, a)) in row.iter().enumerate() {
                out.push(' ');
                term(&mut out, k == 0, a, format!("x{j}"));
            }
            let _ = writeln!(out, " <= {}", self.rhs[i]);
        }
        out.push_str("Bounds\n");
        for j in 0..self.num_vars() {
            let (l, u) = (self.lower[j], self.upper[j]);
            if u.is_infinite() {
                let _ = writeln!(out, " x{j} >= {l}");
            } else {
                let _ = writeln!(out, " {l} <= x{j} <= {u}");
            }
        }
        out.push_str("End\n");
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
    /// Iteration cap or deadline reached before optimality was proven.
    IterationLimit,
}

/// A basic variable: structural column or row slack.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VarRef {
    Structural(usize),
    Slack(usize),
}

/// Simplex basis, reusable as a warm start after columns are appended or
/// bounds change.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Basis {
    pub basic: Vec<VarRef>,
    /// Nonbasic structural variables sitting at their upper bound.
    pub at_upper: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct LpSolution {
    pub status: LpStatus,
    pub x: Vec<f64>,
    /// One dual price per row; nonnegative at an optimum.
    pub duals: Vec<f64>,
    /// `c_j - y·a_j` per structural variable.
    pub reduced_costs: Vec<f64>,
    pub objective: f64,
    pub iterations: usize,
    pub basis: Option<Basis>,
}

#[derive(Debug, Clone, Default)]
pub struct LpOptions {
    pub max_iterations: Option<usize>,
    pub deadline: Option<Instant>,
}

pub fn solve_lp(p: &LinearProgram, warm_start: Option<&Basis>) -> Result<LpSolution, LpError> {
    solve_lp_with(p, warm_start, &LpOptions::default())
}

pub fn solve_lp_with(
    p: &LinearProgram,
    warm_start: Option<&Basis>,
    opts: &LpOptions,
) -> Result<LpSolution, LpError> {
    validate(p)?;
    let m = p.num_rows();
    let n = p.num_vars();
    if (0..n).any(|j| p.lower[j] > p.upper[j]) {
        return Ok(LpSolution {
            status: LpStatus::Infeasible,
            x: vec![0.0; n],
            duals: vec![0.0; m],
            reduced_costs: vec![0.0; n],
            objective: 0.0,
            iterations: 0,
            basis: None,
        });
    }
    let max_iter = opts
        .max_iterations
        .unwrap_or_else(|| 50_000usize.max(20 * (m + n)));
    let mut s = Simplex::new(p, max_iter, opts.deadline);

    if let Some(b) = warm_start {
        if let Some(sol) = s.try_warm(b) {
            return Ok(sol);
        }
        log::trace!("warm start rejected, solving cold");
        s = Simplex::new(p, max_iter, opts.deadline);
    }
    Ok(s.solve_cold())
}

fn validate(p: &LinearProgram) -> Result<(), LpError> {
    let bad = |v: f64| v.is_nan() || v.is_infinite();
    if p.rhs.iter().any(|&b| bad(b)) {
        return Err(LpError::InvalidInput("non-finite right-hand side".into()));
    }
    for j in 0..p.num_vars() {
        if bad(p.cost[j]) || p.columns[j].iter().any(|&(_, a)| bad(a)) {
            return Err(LpError::InvalidInput(format!("non-finite data in column {j}")));
        }
        if p.lower[j].is_nan() || p.upper[j].is_nan() {
            return Err(LpError::InvalidInput(format!("NaN bound on variable {j}")));
        }
        if p.lower[j].is_infinite() && p.upper[j].is_infinite() {
            return Err(LpError::InvalidInput(format!("free variable {j} is not supported")));
        }
    }
    Ok(())
}

const NONBASIC: usize = usize::MAX;

enum Outcome {
    Optimal,
    Unbounded,
    Infeasible,
    Limit,
}

struct Simplex<'a> {
    p: &'a LinearProgram,
    m: usize,
    n: usize,
    /// Extended variable space: structurals, slacks, artificials.
    lower: Vec<f64>,
    upper: Vec<f64>,
    cost: Vec<f64>,
    art_row: Vec<usize>,
    x: Vec<f64>,
    at_upper: Vec<bool>,
    basis: Vec<usize>,
    position: Vec<usize>,
    /// Row-major dense inverse of the basis matrix.
    binv: Vec<f64>,
    since_refactor: usize,
    iterations: usize,
    max_iter: usize,
    deadline: Option<Instant>,
}

impl<'a> Simplex<'a> {
    fn new(p: &'a LinearProgram, max_iter: usize, deadline: Option<Instant>) -> Self {
        let m = p.num_rows();
        let n = p.num_vars();
        let mut lower = p.lower.clone();
        let mut upper = p.upper.clone();
        lower.extend(std::iter::repeat_n(0.0, m));
        upper.extend(std::iter::repeat_n(f64::INFINITY, m));
        Simplex {
            p,
            m,
            n,
            lower,
            upper,
            cost: vec![0.0; n + m],
            art_row: Vec::new(),
            x: vec![0.0; n + m],
            at_upper: vec![false; n + m],
            basis: Vec::with_capacity(m),
            position: vec![NONBASIC; n + m],
            binv: vec![0.0; m * m],
            since_refactor: 0,
            iterations: 0,
            max_iter,
            deadline,
        }
    }

    fn num_ext(&self) -> usize {
        self.n + self.m + self.art_row.len()
    }

    /// Calls `f(row, coef)` for each nonzero of extended column `j`.
    #[inline]
    fn for_col(&self, j: usize, mut f: impl FnMut(usize, f64)) {
        if j < self.n {
            for &(r, a) in &self.p.columns[j] {
                f(r, a);
            }
        } else if j < self.n + self.m {
            f(j - self.n, 1.0);
        } else {
            f(self.art_row[j - self.n - self.m], -1.0);
        }
    }

    fn dot_col(&self, v: &[f64], j: usize) -> f64 {
        let mut s = 0.0;
        self.for_col(j, |r, a| s += v[r] * a);
        s
    }

    fn binv_col(&self, j: usize) -> Vec<f64> {
        let m = self.m;
        let mut w = vec![0.0; m];
        self.for_col(j, |r, a| {
            for (i, wi) in w.iter_mut().enumerate() {
                *wi += self.binv[i * m + r] * a;
            }
        });
        w
    }

    fn duals(&self) -> Vec<f64> {
        let m = self.m;
        let mut y = vec![0.0; m];
        for (r, &b) in self.basis.iter().enumerate() {
            let c = self.cost[b];
            if c != 0.0 {
                let row = &self.binv[r * m..(r + 1) * m];
                for (yi, bi) in y.iter_mut().zip(row) {
                    *yi += c * bi;
                }
            }
        }
        y
    }

    fn reduced_cost(&self, y: &[f64], j: usize) -> f64 {
        self.cost[j] - self.dot_col(y, j)
    }

    fn is_fixed(&self, j: usize) -> bool {
        self.upper[j] - self.lower[j] <= 0.0
    }

    fn set_nonbasic(&mut self, j: usize, at_upper: bool) {
        self.position[j] = NONBASIC;
        self.at_upper[j] = at_upper;
        self.x[j] = if at_upper { self.upper[j] } else { self.lower[j] };
    }

    /// Gauss-Jordan inversion of the current basis. False if singular.
    fn refactor(&mut self) -> bool {
        let m = self.m;
        let mut a = vec![0.0; m * m];
        for (c, &j) in self.basis.iter().enumerate() {
            self.for_col(j, |r, v| a[r * m + c] = v);
        }
        let mut inv = vec![0.0; m * m];
        for i in 0..m {
            inv[i * m + i] = 1.0;
        }
        for col in 0..m {
            let (piv, best) = (col..m)
                .map(|r| (r, a[r * m + col].abs()))
                .fold((col, -1.0), |acc, (r, v)| if v > acc.1 { (r, v) } else { acc });
            if best < 1e-12 {
                return false;
            }
            if piv != col {
                for k in 0..m {
                    a.swap(piv * m + k, col * m + k);
                    inv.swap(piv * m + k, col * m + k);
                }
            }
            let d = a[col * m + col];
            for k in 0..m {
                a[col * m + k] /= d;
                inv[col * m + k] /= d;
            }
            for r in 0..m {
                if r != col {
                    let f = a[r * m + col];
                    if f != 0.0 {
                        for k in 0..m {
                            a[r * m + k] -= f * a[col * m + k];
                            inv[r * m + k] -= f * inv[col * m + k];
                        }
                    }
                }
            }
        }
        self.binv = inv;
        self.since_refactor = 0;
        true
    }

    fn compute_basic_values(&mut self) {
        let m = self.m;
        let mut rhs = self.p.rhs.clone();
        for j in 0..self.num_ext() {
            if self.position[j] == NONBASIC && self.x[j] != 0.0 {
                let xj = self.x[j];
                self.for_col(j, |r, a| rhs[r] -= a * xj);
            }
        }
        for r in 0..m {
            let row = &self.binv[r * m..(r + 1) * m];
            let v: f64 = row.iter().zip(&rhs).map(|(b, h)| b * h).sum();
            self.x[self.basis[r]] = v;
        }
    }

    fn pivot(&mut self, r: usize, entering: usize, w: &[f64]) {
        let m = self.m;
        let piv = w[r];
        for k in 0..m {
            self.binv[r * m + k] /= piv;
        }
        let (before, rest) = self.binv.split_at_mut(r * m);
        let (prow, after) = rest.split_at_mut(m);
        for (i, row) in before.chunks_mut(m).chain(after.chunks_mut(m)).enumerate() {
            let idx = if i < r { i } else { i + 1 };
            let f = w[idx];
            if f != 0.0 {
                for (a, b) in row.iter_mut().zip(prow.iter()) {
                    *a -= f * b;
                }
            }
        }
        let leaving = self.basis[r];
        self.position[leaving] = NONBASIC;
        self.basis[r] = entering;
        self.position[entering] = r;
        self.since_refactor += 1;
        if self.since_refactor >= REFACTOR_INTERVAL {
            if self.refactor() {
                self.compute_basic_values();
            } else {
                log::warn!("basis refactorisation failed; continuing with updated inverse");
            }
        }
    }

    fn out_of_budget(&self) -> bool {
        if self.iterations >= self.max_iter {
            return true;
        }
        self.iterations.is_multiple_of(16) && self.deadline.is_some_and(|d| Instant::now() >= d)
    }

    fn primal(&mut self) -> Outcome {
        let mut degenerate = 0usize;
        let mut bland = false;
        loop {
            if self.out_of_budget() {
                return Outcome::Limit;
            }
            let y = self.duals();
            let mut entering = None;
            let mut best = 0.0;
            for j in 0..self.num_ext() {
                if self.position[j] != NONBASIC || self.is_fixed(j) {
                    continue;
                }
                let d = self.reduced_cost(&y, j);
                let gain = if self.at_upper[j] { -d } else { d };
                if gain > OPT_TOL {
                    if bland {
                        entering = Some(j);
                        break;
                    }
                    if gain > best {
                        best = gain;
                        entering = Some(j);
                    }
                }
            }
            let Some(q) = entering else {
                return Outcome::Optimal;
            };
            let dir = if self.at_upper[q] { -1.0 } else { 1.0 };
            let w = self.binv_col(q);

            let mut step = f64::INFINITY;
            let mut leave: Option<(usize, bool)> = None;
            let mut leave_alpha = 0.0;
            for (r, &wr) in w.iter().enumerate() {
                let alpha = dir * wr;
                let b = self.basis[r];
                let (ratio, to_upper) = if alpha > PIVOT_TOL {
                    ((self.x[b] - self.lower[b]) / alpha, false)
                } else if alpha < -PIVOT_TOL && self.upper[b].is_finite() {
                    ((self.upper[b] - self.x[b]) / -alpha, true)
                } else {
                    continue;
                };
                let ratio = ratio.max(0.0);
                let better = match leave {
                    None => true,
                    Some((lr, _)) => {
                        if ratio < step - 1e-12 {
                            true
                        } else if ratio <= step + 1e-12 {
                            if bland {
                                b < self.basis[lr]
                            } else {
                                alpha.abs() > leave_alpha
                            }
                        } else {
                            false
                        }
                    }
                };
                if better {
                    step = ratio;
                    leave = Some((r, to_upper));
                    leave_alpha = alpha.abs();
                }
            }
            let range = self.upper[q] - self.lower[q];
            let flip = range.is_finite() && range <= step;
            if flip {
                step = range;
            } else if leave.is_none() {
                return Outcome::Unbounded;
            }

            self.iterations += 1;
            if step > FEAS_TOL {
                degenerate = 0;
                bland = false;
            } else {
                degenerate += 1;
                if degenerate >= DEGENERATE_STREAK {
                    bland = true;
                }
            }

            for (r, &wr) in w.iter().enumerate() {
                if wr != 0.0 {
                    self.x[self.basis[r]] -= dir * step * wr;
                }
            }
            if flip {
                let up = !self.at_upper[q];
                self.set_nonbasic(q, up);
                continue;
            }
            self.x[q] += dir * step;
            let (r, to_upper) = leave.expect("checked above");
            let leaving = self.basis[r];
            self.pivot(r, q, &w);
            self.set_nonbasic(leaving, to_upper);
        }
    }

    /// Dual simplex from a dual feasible basis.
    fn dual(&mut self) -> Outcome {
        loop {
            if self.out_of_budget() {
                return Outcome::Limit;
            }
            // leaving row: largest bound violation
            let mut leave = None;
            let mut worst = FEAS_TOL;
            for r in 0..self.m {
                let b = self.basis[r];
                let below = self.lower[b] - self.x[b];
                let above = self.x[b] - self.upper[b];
                if below > worst {
                    worst = below;
                    leave = Some((r, false));
                }
                if above > worst {
                    worst = above;
                    leave = Some((r, true));
                }
            }
            let Some((r, above)) = leave else {
                return Outcome::Optimal;
            };
            let m = self.m;
            let rho = self.binv[r * m..(r + 1) * m].to_vec();
            let y = self.duals();

            let mut entering = None;
            let mut best_ratio = f64::INFINITY;
            let mut best_alpha = 0.0;
            for j in 0..self.num_ext() {
                if self.position[j] != NONBASIC || self.is_fixed(j) {
                    continue;
                }
                let alpha = self.dot_col(&rho, j);
                let eligible = if above {
                    (!self.at_upper[j] && alpha > PIVOT_TOL) || (self.at_upper[j] && alpha < -PIVOT_TOL)
                } else {
                    (!self.at_upper[j] && alpha < -PIVOT_TOL) || (self.at_upper[j] && alpha > PIVOT_TOL)
                };
                if !eligible {
                    continue;
                }
                let ratio = self.reduced_cost(&y, j).abs() / alpha.abs();
                if ratio < best_ratio - 1e-12
                    || (ratio <= best_ratio + 1e-12 && alpha.abs() > best_alpha)
                {
                    best_ratio = ratio;
                    best_alpha = alpha.abs();
                    entering = Some(j);
                }
            }
            let Some(q) = entering else {
                return Outcome::Infeasible;
            };
            self.iterations += 1;
            let leaving = self.basis[r];
            let target = if above { self.upper[leaving] } else { self.lower[leaving] };
            let w = self.binv_col(q);
            let delta = (self.x[leaving] - target) / w[r];
            for (i, &wi) in w.iter().enumerate() {
                if wi != 0.0 {
                    self.x[self.basis[i]] -= delta * wi;
                }
            }
            self.x[q] += delta;
            self.pivot(r, q, &w);
            self.set_nonbasic(leaving, above);
        }
    }

    fn use_phase_two_costs(&mut self) {
        for j in 0..self.num_ext() {
            self.cost[j] = if j < self.n { self.p.cost[j] } else { 0.0 };
        }
    }

    fn solve_cold(mut self) -> LpSolution {
        let (m, n) = (self.m, self.n);
        for j in 0..n {
            let at_upper = !self.lower[j].is_finite();
            self.set_nonbasic(j, at_upper);
        }
        let mut slack = self.p.rhs.clone();
        for j in 0..n {
            let xj = self.x[j];
            if xj != 0.0 {
                for &(r, a) in &self.p.columns[j] {
                    slack[r] -= a * xj;
                }
            }
        }
        self.basis.clear();
        for (i, &s) in slack.iter().enumerate() {
            if s >= -FEAS_TOL {
                let j = n + i;
                self.position[j] = i;
                self.basis.push(j);
                self.x[j] = s.max(0.0);
                self.binv[i * m + i] = 1.0;
            } else {
                // artificial with column -e_i, value -s
                let j = self.num_ext();
                self.art_row.push(i);
                self.lower.push(0.0);
                self.upper.push(f64::INFINITY);
                self.cost.push(0.0);
                self.x.push(-s);
                self.at_upper.push(false);
                self.position.push(i);
                self.basis.push(j);
                self.set_nonbasic(n + i, false);
                self.binv[i * m + i] = -1.0;
            }
        }

        if !self.art_row.is_empty() {
            for j in 0..self.num_ext() {
                self.cost[j] = if j >= n + m { -1.0 } else { 0.0 };
            }
            match self.primal() {
                Outcome::Limit => return self.finish(LpStatus::IterationLimit),
                Outcome::Optimal | Outcome::Unbounded | Outcome::Infeasible => {}
            }
            let infeas: f64 = (n + m..self.num_ext()).map(|j| self.x[j]).sum();
            if infeas > PHASE_ONE_TOL {
                return self.finish(LpStatus::Infeasible);
            }
            for j in n + m..self.num_ext() {
                self.upper[j] = 0.0;
                if self.position[j] == NONBASIC {
                    self.set_nonbasic(j, false);
                }
            }
        }
        self.use_phase_two_costs();
        let status = match self.primal() {
            Outcome::Optimal => LpStatus::Optimal,
            Outcome::Unbounded => LpStatus::Unbounded,
            Outcome::Infeasible => LpStatus::Infeasible,
            Outcome::Limit => LpStatus::IterationLimit,
        };
        self.finish(status)
    }

    /// Resumes from a previous basis. `None` means the basis is unusable and
    /// the caller should start cold.
    fn try_warm(&mut self, b: &Basis) -> Option<LpSolution> {
        let (m, n) = (self.m, self.n);
        if b.basic.len() != m {
            return None;
        }
        for j in 0..n {
            let at_upper = !self.lower[j].is_finite();
            self.set_nonbasic(j, at_upper);
        }
        for &j in &b.at_upper {
            if j >= n || !self.upper[j].is_finite() {
                return None;
            }
            self.set_nonbasic(j, true);
        }
        for i in 0..m {
            self.set_nonbasic(n + i, false);
        }
        self.basis.clear();
        for (r, v) in b.basic.iter().enumerate() {
            let j = match *v {
                VarRef::Structural(j) if j < n => j,
                VarRef::Slack(i) if i < m => n + i,
                _ => return None,
            };
            if self.position[j] != NONBASIC {
                return None;
            }
            self.position[j] = r;
            self.basis.push(j);
        }
        if !self.refactor() {
            return None;
        }
        self.use_phase_two_costs();
        self.compute_basic_values();

        let primal_feasible = self.basis.iter().all(|&j| {
            self.x[j] >= self.lower[j] - FEAS_TOL && self.x[j] <= self.upper[j] + FEAS_TOL
        });
        if !primal_feasible {
            let y = self.duals();
            let dual_feasible = (0..self.num_ext()).all(|j| {
                if self.position[j] != NONBASIC || self.is_fixed(j) {
                    return true;
                }
                let d = self.reduced_cost(&y, j);
                if self.at_upper[j] {
                    d >= -OPT_TOL
                } else {
                    d <= OPT_TOL
                }
            });
            if !dual_feasible {
                return None;
            }
            match self.dual() {
                Outcome::Optimal => {}
                Outcome::Infeasible => return Some(self.finish_ref(LpStatus::Infeasible)),
                Outcome::Limit => return Some(self.finish_ref(LpStatus::IterationLimit)),
                Outcome::Unbounded => return None,
            }
        }
        let status = match self.primal() {
            Outcome::Optimal => LpStatus::Optimal,
            Outcome::Unbounded => LpStatus::Unbounded,
            Outcome::Infeasible => LpStatus::Infeasible,
            Outcome::Limit => LpStatus::IterationLimit,
        };
        Some(self.finish_ref(status))
    }

    fn finish(mut self, status: LpStatus) -> LpSolution {
        self.finish_ref(status)
    }

    fn finish_ref(&mut self, status: LpStatus) -> LpSolution {
        let (m, n) = (self.m, self.n);
        if status == LpStatus::Optimal && self.refactor() {
            self.compute_basic_values();
        }
        self.use_phase_two_costs();
        let y = self.duals();
        let x: Vec<f64> = self.x[..n].to_vec();
        let reduced_costs = (0..n)
            .map(|j| {
                if self.position[j] == NONBASIC {
                    self.reduced_cost(&y, j)
                } else {
                    0.0
                }
            })
            .collect();
        // Artificials still basic at zero are swapped for their row slack,
        // which spans the same direction.
        let basis = (status == LpStatus::Optimal).then(|| Basis {
            basic: self
                .basis
                .iter()
                .map(|&j| {
                    if j < n {
                        VarRef::Structural(j)
                    } else if j < n + m {
                        VarRef::Slack(j - n)
                    } else {
                        VarRef::Slack(self.art_row[j - n - m])
                    }
                })
                .collect(),
            at_upper: (0..n)
                .filter(|&j| self.position[j] == NONBASIC && self.at_upper[j] && !self.is_fixed(j))
                .collect(),
        });
        LpSolution {
            status,
            objective: self.p.objective(&x),
            x,
            duals: y,
            reduced_costs,
            iterations: self.iterations,
            basis,
        }
    }
}
