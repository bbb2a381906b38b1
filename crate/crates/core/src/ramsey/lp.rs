//! Exact dense two-phase simplex with Bland's rule.
//!
//! Problems are `min c·x` subject to row constraints and `x >= 0`. They are
//! converted to the standard form `A x = b, x >= 0, b >= 0` (slacks appended,
//! rows with negative right-hand side negated); certificates refer to that
//! form and can be checked with [`LinearProgram::verify`].

use num_traits::{One, Signed, Zero};

use crate::rational::Q;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone)]
pub struct LinearProgram {
    num_vars: usize,
    objective: Vec<Q>,
    rows: Vec<(Vec<Q>, Relation, Q)>,
}

/// `A x = b`, `x >= 0`, `b >= 0`, minimize `c·x`.
#[derive(Debug, Clone, PartialEq)]
pub struct StandardForm {
    pub a: Vec<Vec<Q>>,
    pub b: Vec<Q>,
    pub c: Vec<Q>,
    /// Columns `0..num_original` are the caller's variables.
    pub num_original: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    /// `x` is optimal for the standard form, `y` satisfies `Aᵀy <= c` and
    /// `b·y = c·x`.
    Optimal { x: Vec<Q>, y: Vec<Q>, value: Q },
    /// Farkas certificate: `Aᵀy <= 0` and `b·y > 0`.
    Infeasible { y: Vec<Q> },
    /// A feasible `x` and a ray `d >= 0` with `A d = 0`, `c·d < 0`.
    Unbounded { x: Vec<Q>, ray: Vec<Q> },
}

impl LpOutcome {
    pub fn is_optimal(&self) -> bool {
        matches!(self, LpOutcome::Optimal { .. })
    }
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> LinearProgram {
        LinearProgram {
            num_vars,
            objective: vec![Q::zero(); num_vars],
            rows: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn set_objective(&mut self, c: Vec<Q>) {
        assert_eq!(c.len(), self.num_vars);
        self.objective = c;
    }

    pub fn add_row(&mut self, coeffs: Vec<Q>, relation: Relation, rhs: Q) {
        assert_eq!(coeffs.len(), self.num_vars);
        self.rows.push((coeffs, relation, rhs));
    }

    pub fn standard_form(&self) -> StandardForm {
        let slacks = self
            .rows
            .iter()
            .filter(|(_, rel, _)| *rel != Relation::Eq)
            .count();
        let width = self.num_vars + slacks;
        let mut a = Vec::with_capacity(self.rows.len());
        let mut b = Vec::with_capacity(self.rows.len());
        let mut next_slack = self.num_vars;
        for (coeffs, rel, rhs) in &self.rows {
            let mut row = coeffs.clone();
            row.resize(width, Q::zero());
            match rel {
                Relation::Le => {
                    row[next_slack] = Q::one();
                    next_slack += 1;
                }
                Relation::Ge => {
                    row[next_slack] = -Q::one();
                    next_slack += 1;
                }
                Relation::Eq => {}
            }
            let mut rhs = rhs.clone();
            if rhs.is_negative() {
                row.iter_mut().for_each(|v| *v = -v.clone());
                rhs = -rhs;
            }
            a.push(row);
            b.push(rhs);
        }
        let mut c = self.objective.clone();
        c.resize(width, Q::zero());
        StandardForm {
            a,
            b,
            c,
            num_original: self.num_vars,
        }
    }

    pub fn solve(&self) -> LpOutcome {
        solve_standard(&self.standard_form())
    }

    /// Checks a certificate against the standard form, exactly.
    pub fn verify(&self, outcome: &LpOutcome) -> bool {
        self.standard_form().verify(outcome)
    }
}

fn dot(u: &[Q], v: &[Q]) -> Q {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

impl StandardForm {
    fn column_dot(&self, j: usize, y: &[Q]) -> Q {
        self.a.iter().zip(y).map(|(row, yi)| &row[j] * yi).sum()
    }

    fn feasible(&self, x: &[Q]) -> bool {
        x.len() == self.c.len()
            && x.iter().all(|v| !v.is_negative())
            && self
                .a
                .iter()
                .zip(&self.b)
                .all(|(row, bi)| dot(row, x) == *bi)
    }

    pub fn verify(&self, outcome: &LpOutcome) -> bool {
        let n = self.c.len();
        match outcome {
            LpOutcome::Optimal { x, y, value } => {
                y.len() == self.b.len()
                    && self.feasible(x)
                    && (0..n).all(|j| self.column_dot(j, y) <= self.c[j])
                    && dot(&self.c, x) == *value
                    && dot(&self.b, y) == *value
            }
            LpOutcome::Infeasible { y } => {
                y.len() == self.b.len()
                    && (0..n).all(|j| !self.column_dot(j, y).is_positive())
                    && dot(&self.b, y).is_positive()
            }
            LpOutcome::Unbounded { x, ray } => {
                self.feasible(x)
                    && ray.len() == n
                    && ray.iter().all(|v| !v.is_negative())
                    && self.a.iter().all(|row| dot(row, ray).is_zero())
                    && dot(&self.c, ray).is_negative()
            }
        }
    }
}

/// Tableau over columns `0..n` (structural) and `n..n+m` (artificial).
struct Tableau {
    rows: Vec<Vec<Q>>,
    rhs: Vec<Q>,
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, col: usize, cost: &mut [Q], cost_value: &mut Q) {
        let p = self.rows[r][col].clone();
        let inv = p.recip();
        for v in self.rows[r].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        self.rhs[r] *= &inv;
        let pivot_row = self.rows[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r {
                continue;
            }
            let f = self.rows[i][col].clone();
            if f.is_zero() {
                continue;
            }
            for (v, pv) in self.rows[i].iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
            self.rhs[i] -= &f * &pivot_rhs;
        }
        let f = cost[col].clone();
        if !f.is_zero() {
            for (v, pv) in cost.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
            *cost_value -= &f * &pivot_rhs;
        }
        self.basis[r] = col;
    }

    /// Runs Bland's rule over entering columns `< allowed`. Returns `Err(col)`
    /// if the objective is unbounded along `col`.
    fn optimize(&mut self, cost: &mut [Q], value: &mut Q, allowed: usize) -> Result<(), usize> {
        loop {
            let Some(col) = (0..allowed).find(|&j| cost[j].is_negative()) else {
                return Ok(());
            };
            let mut leave: Option<(usize, Q)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][col];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                None => return Err(col),
                Some((r, _)) => self.pivot(r, col, cost, value),
            }
        }
    }

    fn solution(&self, width: usize) -> Vec<Q> {
        let mut x = vec![Q::zero(); width];
        for (i, &j) in self.basis.iter().enumerate() {
            if j < width {
                x[j] = self.rhs[i].clone();
            }
        }
        x
    }
}

fn solve_standard(sf: &StandardForm) -> LpOutcome {
    let m = sf.a.len();
    let n = sf.c.len();
    let total = n + m;
    let mut rows = Vec::with_capacity(m);
    for (i, row) in sf.a.iter().enumerate() {
        let mut r = row.clone();
        r.resize(total, Q::zero());
        r[n + i] = Q::one();
        rows.push(r);
    }
    let mut t = Tableau {
        rows,
        rhs: sf.b.clone(),
        basis: (n..total).collect(),
    };

    // phase 1: minimize the sum of artificials; reduced costs start at
    // 1 on artificials minus the column sums
    let mut cost1 = vec![Q::zero(); total];
    for j in n..total {
        cost1[j] = Q::one();
    }
    let mut value1 = Q::zero();
    for i in 0..m {
        for j in 0..total {
            cost1[j] -= &t.rows[i][j];
        }
        value1 -= &t.rhs[i];
    }
    t.optimize(&mut cost1, &mut value1, total)
        .expect("phase 1 is bounded below by zero");
    // value1 holds minus the phase-1 optimum
    if value1.is_negative() {
        // y_i = 1 - reduced cost of artificial i
        let y = (0..m).map(|i| Q::one() - &cost1[n + i]).collect();
        return LpOutcome::Infeasible { y };
    }

    // drive artificials out of the basis where possible
    for r in 0..m {
        if t.basis[r] >= n {
            if let Some(col) = (0..n).find(|&j| !t.rows[r][j].is_zero()) {
                t.pivot(r, col, &mut cost1, &mut value1);
            }
        }
    }

    // phase 2 reduced costs: c_j - c_B B^{-1} A_j, artificials priced at 0
    let mut cost2 = vec![Q::zero(); total];
    cost2[..n].clone_from_slice(&sf.c);
    let mut value2 = Q::zero();
    for (i, &bj) in t.basis.iter().enumerate() {
        let cb = if bj < n { sf.c[bj].clone() } else { Q::zero() };
        if cb.is_zero() {
            continue;
        }
        for j in 0..total {
            cost2[j] -= &cb * &t.rows[i][j];
        }
        value2 -= &cb * &t.rhs[i];
    }
    match t.optimize(&mut cost2, &mut value2, n) {
        Ok(()) => {
            let x = t.solution(n);
            let y = (0..m).map(|i| -cost2[n + i].clone()).collect();
            let value = dot(&sf.c, &x);
            LpOutcome::Optimal { x, y, value }
        }
        Err(col) => {
            let x = t.solution(n);
            let mut ray = vec![Q::zero(); n];
            ray[col] = Q::one();
            for (i, &bj) in t.basis.iter().enumerate() {
                if bj < n {
                    ray[bj] = -t.rows[i][col].clone();
                }
            }
            LpOutcome::Unbounded { x, ray }
        }
    }
}
