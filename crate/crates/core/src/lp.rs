//! Exact two-phase simplex over the rationals.
//!
//! Solves `minimize <c, x>` subject to `A x >= b` with free variables. Pivot
//! selection uses Bland's rule, so the method terminates on degenerate inputs.

use num_traits::{One, Signed, Zero};

use crate::rational::{QVec, Rat};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: Rat, point: QVec },
    Infeasible,
    Unbounded,
}

/// `minimize <objective, x>` subject to `<rows[i], x> >= rhs[i]`.
pub fn minimize(objective: &[Rat], rows: &[QVec], rhs: &[Rat]) -> Result<LpOutcome> {
    let n = objective.len();
    if rows.len() != rhs.len() || rows.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch("inconsistent LP dimensions".into()));
    }
    let m = rows.len();
    // Columns: x+ (n), x- (n), surplus (m), artificial (m), then rhs.
    let n_struct = 2 * n + m;
    let width = n_struct + m + 1;
    let mut tableau: Vec<Vec<Rat>> = Vec::with_capacity(m);
    for (i, (row, b)) in rows.iter().zip(rhs).enumerate() {
        let mut t = vec![Rat::zero(); width];
        let flip = b.is_negative();
        for j in 0..n {
            let a = if flip { -row[j].clone() } else { row[j].clone() };
            t[n + j] = -a.clone();
            t[j] = a;
        }
        t[2 * n + i] = if flip { Rat::one() } else { -Rat::one() };
        t[n_struct + i] = Rat::one();
        t[width - 1] = if flip { -b.clone() } else { b.clone() };
        tableau.push(t);
    }
    let mut basis: Vec<usize> = (0..m).map(|i| n_struct + i).collect();

    let mut phase1_cost = vec![Rat::zero(); width - 1];
    for c in phase1_cost.iter_mut().skip(n_struct) {
        *c = Rat::one();
    }
    let mut tab = Tableau {
        rows: tableau,
        basis: &mut basis,
        width,
    };
    if !tab.optimize(&phase1_cost, width - 1) {
        unreachable!("phase one objective is bounded below by zero");
    }
    if !tab.objective_value(&phase1_cost).is_zero() {
        return Ok(LpOutcome::Infeasible);
    }
    tab.drive_out_artificials(n_struct);

    let mut cost = vec![Rat::zero(); width - 1];
    for j in 0..n {
        cost[j] = objective[j].clone();
        cost[n + j] = -objective[j].clone();
    }
    if !tab.optimize(&cost, n_struct) {
        return Ok(LpOutcome::Unbounded);
    }
    let value = tab.objective_value(&cost);
    let mut x = vec![Rat::zero(); 2 * n];
    for (row, &b) in tab.basis.iter().enumerate() {
        if b < 2 * n {
            x[b] = tab.rows[row][width - 1].clone();
        }
    }
    let point: QVec = (0..n).map(|j| &x[j] - &x[n + j]).collect();
    Ok(LpOutcome::Optimal { value, point })
}

/// `maximize <objective, x>` subject to `<rows[i], x> >= rhs[i]`.
pub fn maximize(objective: &[Rat], rows: &[QVec], rhs: &[Rat]) -> Result<LpOutcome> {
    let negated: Vec<Rat> = objective.iter().map(|c| -c.clone()).collect();
    Ok(match minimize(&negated, rows, rhs)? {
        LpOutcome::Optimal { value, point } => LpOutcome::Optimal { value: -value, point },
        other => other,
    })
}

/// Largest `t <= 1` such that some `x` satisfies `<rows[i], x> - rhs[i] >= t`
/// for every row. Positive exactly when the region has nonempty interior;
/// negative when the system is infeasible.
pub fn interior_margin(rows: &[QVec], rhs: &[Rat]) -> Result<Rat> {
    let n = rows.first().map_or(0, |r| r.len());
    let mut lifted: Vec<QVec> = rows
        .iter()
        .map(|r| {
            let mut v = r.clone();
            v.push(-Rat::one());
            v
        })
        .collect();
    let mut b = rhs.to_vec();
    lifted.push(QVec::unit(n + 1, n).neg());
    b.push(-Rat::one());
    let mut objective = vec![Rat::zero(); n + 1];
    objective[n] = Rat::one();
    match maximize(&objective, &lifted, &b)? {
        LpOutcome::Optimal { value, .. } => Ok(value),
        LpOutcome::Infeasible => unreachable!("a margin of -infinity is never required"),
        LpOutcome::Unbounded => unreachable!("margin is capped at one"),
    }
}

struct Tableau<'a> {
    rows: Vec<Vec<Rat>>,
    basis: &'a mut Vec<usize>,
    width: usize,
}

impl Tableau<'_> {
    fn objective_value(&self, cost: &[Rat]) -> Rat {
        self.basis
            .iter()
            .zip(&self.rows)
            .fold(Rat::zero(), |acc, (&b, row)| acc + &cost[b] * &row[self.width - 1])
    }

    fn reduced_cost(&self, cost: &[Rat], col: usize) -> Rat {
        self.basis
            .iter()
            .zip(&self.rows)
            .fold(cost[col].clone(), |acc, (&b, row)| acc - &cost[b] * &row[col])
    }

    /// Runs simplex iterations over columns `< allowed`. Returns false when unbounded.
    fn optimize(&mut self, cost: &[Rat], allowed: usize) -> bool {
        loop {
            let entering = (0..allowed)
                .filter(|c| !self.basis.contains(c))
                .find(|&c| self.reduced_cost(cost, c).is_negative());
            let Some(col) = entering else {
                return true;
            };
            let rhs = self.width - 1;
            let mut best: Option<(Rat, usize)> = None;
            for (r, row) in self.rows.iter().enumerate() {
                if !row[col].is_positive() {
                    continue;
                }
                let ratio = &row[rhs] / &row[col];
                let better = match &best {
                    None => true,
                    Some((v, br)) => ratio < *v || (ratio == *v && self.basis[r] < self.basis[*br]),
                };
                if better {
                    best = Some((ratio, r));
                }
            }
            let Some((_, row)) = best else {
                return false;
            };
            self.pivot(row, col);
        }
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let inv = self.rows[row][col].recip();
        for v in self.rows[row].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = self.rows[row].clone();
        for (r, other) in self.rows.iter_mut().enumerate() {
            if r == row || other[col].is_zero() {
                continue;
            }
            let factor = other[col].clone();
            for (v, p) in other.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &factor * p;
                }
            }
        }
        self.basis[row] = col;
    }

    /// After a feasible phase one, replaces basic artificials by structural
    /// columns or drops their (redundant) rows.
    fn drive_out_artificials(&mut self, n_struct: usize) {
        let mut r = 0;
        while r < self.rows.len() {
            if self.basis[r] < n_struct {
                r += 1;
                continue;
            }
            match (0..n_struct).find(|&c| !self.rows[r][c].is_zero() && !self.basis.contains(&c)) {
                Some(c) => {
                    self.pivot(r, c);
                    r += 1;
                }
                None => {
                    self.rows.remove(r);
                    self.basis.remove(r);
                }
            }
        }
    }
}
