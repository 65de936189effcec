//! Exact two-phase simplex with Bland's pivoting rule.
//!
//! Every optimal answer carries a dual vector, and [`LpSolution::certify`]
//! re-checks primal feasibility, dual feasibility and equality of the two
//! objective values without trusting the solver.

use super::matrix::{dot, solve_square, RationalMatrix, RationalVector};
use super::rational::Rational;
use crate::error::{input, internal, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VarBound {
    NonNegative,
    Free,
}

/// `opt ⟨objective, x⟩` subject to `row_i · x (sense_i) rhs_i` and the
/// per-variable lower bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    pub direction: Direction,
    pub objective: RationalVector,
    pub constraints: RationalMatrix,
    pub senses: Vec<Sense>,
    pub rhs: RationalVector,
    pub bounds: Vec<VarBound>,
}

impl LinearProgram {
    /// All variables nonnegative.
    pub fn new(
        direction: Direction,
        objective: RationalVector,
        constraints: RationalMatrix,
        senses: Vec<Sense>,
        rhs: RationalVector,
    ) -> Result<Self> {
        let bounds = vec![VarBound::NonNegative; objective.len()];
        let lp = Self { direction, objective, constraints, senses, rhs, bounds };
        lp.validate()?;
        Ok(lp)
    }

    pub fn with_bounds(mut self, bounds: Vec<VarBound>) -> Result<Self> {
        self.bounds = bounds;
        self.validate()?;
        Ok(self)
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn num_rows(&self) -> usize {
        self.rhs.len()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.objective.len();
        let m = self.constraints.rows();
        if m > 0 && self.constraints.cols() != n {
            return input(format!(
                "constraint matrix has {} columns for {n} variables",
                self.constraints.cols()
            ));
        }
        if self.senses.len() != m || self.rhs.len() != m {
            return input(format!(
                "{m} constraint rows but {} senses and {} right-hand sides",
                self.senses.len(),
                self.rhs.len()
            ));
        }
        if self.bounds.len() != n {
            return input(format!("{} bounds for {n} variables", self.bounds.len()));
        }
        Ok(())
    }

    pub fn add_constraint(&mut self, row: &[Rational], sense: Sense, rhs: Rational) -> Result<()> {
        if row.len() != self.num_vars() {
            return input(format!("constraint of length {} for {} variables", row.len(), self.num_vars()));
        }
        if self.constraints.rows() == 0 {
            self.constraints = RationalMatrix::new(1, row.len(), row.to_vec())?;
        } else {
            self.constraints.push_row(row)?;
        }
        self.senses.push(sense);
        self.rhs.push(rhs);
        Ok(())
    }

    /// Exact feasibility test for a candidate point.
    pub fn is_feasible(&self, x: &[Rational]) -> bool {
        if x.len() != self.num_vars() {
            return false;
        }
        let bounds_ok = x
            .iter()
            .zip(&self.bounds)
            .all(|(v, b)| *b == VarBound::Free || !v.is_negative());
        bounds_ok
            && (0..self.num_rows()).all(|i| {
                let lhs = dot(self.constraints.row(i), x);
                match self.senses[i] {
                    Sense::Le => lhs <= self.rhs[i],
                    Sense::Ge => lhs >= self.rhs[i],
                    Sense::Eq => lhs == self.rhs[i],
                }
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub value: Rational,
    pub point: RationalVector,
    /// One multiplier per constraint row; see [`LpSolution::certify`].
    pub dual: RationalVector,
}

impl LpSolution {
    /// Checks the optimality certificate against `lp`.
    ///
    /// For minimization the dual must satisfy `Aᵀy ≤ c` on nonnegative
    /// variables (`=` on free ones), `y ≥ 0` on `≥` rows and `y ≤ 0` on `≤`
    /// rows; maximization flips every inequality. Both objectives must equal
    /// `value`.
    pub fn certify(&self, lp: &LinearProgram) -> bool {
        if !lp.is_feasible(&self.point) || self.dual.len() != lp.num_rows() {
            return false;
        }
        if dot(&lp.objective, &self.point) != self.value || dot(&lp.rhs, &self.dual) != self.value {
            return false;
        }
        let flip = lp.direction == Direction::Maximize;
        let signs_ok = self.dual.iter().zip(&lp.senses).all(|(y, s)| match (s, flip) {
            (Sense::Eq, _) => true,
            (Sense::Ge, false) | (Sense::Le, true) => !y.is_negative(),
            (Sense::Le, false) | (Sense::Ge, true) => !y.is_positive(),
        });
        let reduced_ok = (0..lp.num_vars()).all(|j| {
            let aty: Rational = (0..lp.num_rows())
                .map(|i| lp.constraints.get(i, j) * &self.dual[i])
                .sum();
            let slack = &lp.objective[j] - &aty;
            match (lp.bounds[j], flip) {
                (VarBound::Free, _) => slack.is_zero(),
                (VarBound::NonNegative, false) => !slack.is_negative(),
                (VarBound::NonNegative, true) => !slack.is_positive(),
            }
        });
        signs_ok && reduced_ok
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal(LpSolution),
    Unbounded,
    Infeasible,
}

impl LpOutcome {
    pub fn optimal(&self) -> Option<&LpSolution> {
        match self {
            LpOutcome::Optimal(s) => Some(s),
            _ => None,
        }
    }
}

struct Tableau {
    /// `rows × (cols + 1)`, last column is the right-hand side.
    t: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, e: usize, cost: &mut [Rational]) {
        let inv = self.t[r][e].recip();
        for v in self.t[r].iter_mut() {
            if !v.is_zero() {
                *v = &*v * &inv;
            }
        }
        let prow = std::mem::take(&mut self.t[r]);
        for (i, row) in self.t.iter_mut().enumerate() {
            if i == r || row[e].is_zero() {
                continue;
            }
            let f = row[e].clone();
            for (x, p) in row.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x = &*x - &(&f * p);
                }
            }
        }
        if !cost[e].is_zero() {
            let f = cost[e].clone();
            for (x, p) in cost.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x = &*x - &(&f * p);
                }
            }
        }
        self.t[r] = prow;
        self.basis[r] = e;
    }

    fn reduced_costs(&self, c: &[Rational]) -> Vec<Rational> {
        let mut cost: Vec<Rational> = c.to_vec();
        cost.push(Rational::zero());
        for (row, &b) in self.t.iter().zip(&self.basis) {
            if c[b].is_zero() {
                continue;
            }
            for (x, v) in cost.iter_mut().zip(row) {
                if !v.is_zero() {
                    *x = &*x - &(&c[b] * v);
                }
            }
        }
        cost
    }

    /// Bland's rule on columns `< allowed`. Returns `false` if unbounded.
    fn optimize(&mut self, cost: &mut [Rational], allowed: usize) -> bool {
        loop {
            let Some(e) = (0..allowed).find(|&j| cost[j].is_negative()) else {
                return true;
            };
            let rhs = self.cols;
            let mut best: Option<(usize, Rational)> = None;
            for (i, row) in self.t.iter().enumerate() {
                if !row[e].is_positive() {
                    continue;
                }
                let ratio = &row[rhs] / &row[e];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            let Some((r, _)) = best else {
                return false;
            };
            self.pivot(r, e, cost);
        }
    }
}

/// Solves `lp` exactly.
pub fn solve_lp(lp: &LinearProgram) -> Result<LpOutcome> {
    lp.validate()?;
    let n = lp.num_vars();
    let m = lp.num_rows();
    let sigma = if lp.direction == Direction::Maximize { -Rational::one() } else { Rational::one() };

    // Standard-form column layout: structural (split for free vars), then slacks.
    let mut var_cols: Vec<(usize, Option<usize>)> = Vec::with_capacity(n);
    let mut next = 0;
    for b in &lp.bounds {
        match b {
            VarBound::NonNegative => {
                var_cols.push((next, None));
                next += 1;
            }
            VarBound::Free => {
                var_cols.push((next, Some(next + 1)));
                next += 2;
            }
        }
    }
    let mut slack_col = vec![None; m];
    for (i, s) in lp.senses.iter().enumerate() {
        if *s != Sense::Eq {
            slack_col[i] = Some(next);
            next += 1;
        }
    }
    let n_std = next;

    // Rows with a +1 slack after sign normalization start basic on it;
    // the rest get an artificial column.
    let mut flips = vec![Rational::one(); m];
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(m);
    let mut start_basis: Vec<Option<usize>> = vec![None; m];
    for i in 0..m {
        let mut row = vec![Rational::zero(); n_std + 1];
        for (j, &(p, neg)) in var_cols.iter().enumerate() {
            let a = lp.constraints.get(i, j);
            row[p] = a.clone();
            if let Some(q) = neg {
                row[q] = -a;
            }
        }
        if let Some(s) = slack_col[i] {
            row[s] = match lp.senses[i] {
                Sense::Le => Rational::one(),
                _ => -Rational::one(),
            };
        }
        row[n_std] = lp.rhs[i].clone();
        if lp.rhs[i].is_negative() {
            flips[i] = -Rational::one();
            for v in row.iter_mut() {
                *v = -&*v;
            }
        }
        if let Some(s) = slack_col[i] {
            if row[s] == Rational::one() {
                start_basis[i] = Some(s);
            }
        }
        rows.push(row);
    }
    let artificial_rows: Vec<usize> = (0..m).filter(|&i| start_basis[i].is_none()).collect();
    let total = n_std + artificial_rows.len();
    let mut basis = Vec::with_capacity(m);
    let mut t = Vec::with_capacity(m);
    let mut art_index = n_std;
    for (i, row) in rows.iter().enumerate() {
        let mut full = row[..n_std].to_vec();
        full.resize(total, Rational::zero());
        full.push(row[n_std].clone());
        match start_basis[i] {
            Some(s) => basis.push(s),
            None => {
                full[art_index] = Rational::one();
                basis.push(art_index);
                art_index += 1;
            }
        }
        t.push(full);
    }
    let mut tab = Tableau { t, basis, cols: total };
    let mut live_rows: Vec<usize> = (0..m).collect();

    if !artificial_rows.is_empty() {
        let mut c1 = vec![Rational::zero(); total];
        for c in c1.iter_mut().skip(n_std) {
            *c = Rational::one();
        }
        let mut cost = tab.reduced_costs(&c1);
        tab.optimize(&mut cost, total);
        let infeasibility: Rational = tab
            .t
            .iter()
            .zip(&tab.basis)
            .filter(|(_, &b)| b >= n_std)
            .map(|(row, _)| row[total].clone())
            .sum();
        if infeasibility.is_positive() {
            return Ok(LpOutcome::Infeasible);
        }
        // Drive artificials out of the basis; drop rows that are redundant.
        let mut i = 0;
        while i < tab.t.len() {
            if tab.basis[i] >= n_std {
                if let Some(j) = (0..n_std).find(|&j| !tab.t[i][j].is_zero()) {
                    tab.pivot(i, j, &mut cost);
                } else {
                    tab.t.remove(i);
                    tab.basis.remove(i);
                    live_rows.remove(i);
                    continue;
                }
            }
            i += 1;
        }
        for row in tab.t.iter_mut() {
            let rhs = row[total].clone();
            row.truncate(n_std);
            row.push(rhs);
        }
        tab.cols = n_std;
    }

    let mut c2 = vec![Rational::zero(); n_std];
    for (j, &(p, neg)) in var_cols.iter().enumerate() {
        let c = &lp.objective[j] * &sigma;
        if let Some(q) = neg {
            c2[q] = -&c;
        }
        c2[p] = c;
    }
    let mut cost = tab.reduced_costs(&c2);
    if !tab.optimize(&mut cost, n_std) {
        return Ok(LpOutcome::Unbounded);
    }

    let mut x_std = vec![Rational::zero(); n_std];
    for (row, &b) in tab.t.iter().zip(&tab.basis) {
        x_std[b] = row[n_std].clone();
    }
    let point: RationalVector = var_cols
        .iter()
        .map(|&(p, neg)| match neg {
            Some(q) => &x_std[p] - &x_std[q],
            None => x_std[p].clone(),
        })
        .collect();
    let value = dot(&lp.objective, &point);

    // Duals from the optimal basis: Bᵀ y' = c_B over the surviving rows.
    let k = tab.basis.len();
    let mut dual = vec![Rational::zero(); m];
    if k > 0 {
        let mut bt = RationalMatrix::zeros(k, k);
        for (col, &b) in tab.basis.iter().enumerate() {
            for (r, &orig) in live_rows.iter().enumerate() {
                bt.set(col, r, rows[orig][b].clone());
            }
        }
        let cb: Vec<Rational> = tab.basis.iter().map(|&b| c2[b].clone()).collect();
        let Some(y) = solve_square(&bt, &cb)? else {
            return internal("optimal simplex basis is singular");
        };
        for (r, &orig) in live_rows.iter().enumerate() {
            dual[orig] = &(&y[r] * &flips[orig]) * &sigma;
        }
    }
    let sol = LpSolution { value, point, dual };
    if !sol.certify(lp) {
        return internal("simplex optimum failed its duality certificate");
    }
    Ok(LpOutcome::Optimal(sol))
}
