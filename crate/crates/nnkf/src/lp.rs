//! Exact dense simplex over the rationals.

use crate::arith::{Rat, RVec};
use num_traits::{One, Signed, Zero};

/// Outcome of a linear program `max c·x` over free variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { value: Rat, x: RVec },
}

/// Constraint rows `a·x = b` or `a·x >= b`.
#[derive(Debug, Clone, Default)]
pub struct Constraints {
    pub eq: Vec<(RVec, Rat)>,
    pub ge: Vec<(RVec, Rat)>,
}

struct Tableau {
    rows: Vec<RVec>,
    rhs: RVec,
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = Rat::one() / &self.rows[r][c];
        for v in self.rows[r].iter_mut() {
            *v *= &inv;
        }
        self.rhs[r] *= &inv;
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for j in 0..self.rows[i].len() {
                if !self.rows[r][j].is_zero() {
                    let v = &self.rows[i][j] - &f * &self.rows[r][j];
                    self.rows[i][j] = v;
                }
            }
            let v = &self.rhs[i] - &f * &self.rhs[r];
            self.rhs[i] = v;
        }
        self.basis[r] = c;
    }

    /// Maximizes `cost·y` over the current basis restricted to `allowed` columns, Bland's rule.
    fn optimize(&mut self, cost: &[Rat], allowed: usize) -> bool {
        loop {
            let reduced: Vec<Rat> = (0..allowed)
                .map(|j| {
                    let mut z = cost[j].clone();
                    for (i, &b) in self.basis.iter().enumerate() {
                        if !self.rows[i][j].is_zero() && !cost[b].is_zero() {
                            z -= &cost[b] * &self.rows[i][j];
                        }
                    }
                    z
                })
                .collect();
            let Some(enter) = (0..allowed).find(|&j| reduced[j].is_positive()) else { return true };
            let mut best: Option<(usize, Rat)> = None;
            for i in 0..self.rows.len() {
                if self.rows[i][enter].is_positive() {
                    let ratio = &self.rhs[i] / &self.rows[i][enter];
                    let better = match &best {
                        None => true,
                        Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            match best {
                None => return false,
                Some((r, _)) => self.pivot(r, enter),
            }
        }
    }
}

/// Solves `max c·x` subject to the constraints, with `x` free.
pub fn maximize(c: &[Rat], cons: &Constraints) -> LpOutcome {
    let n = c.len();
    let m_eq = cons.eq.len();
    let m_ge = cons.ge.len();
    let m = m_eq + m_ge;
    let structural = 2 * n + m_ge;
    let total = structural + m;
    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    for (k, (a, b)) in cons.eq.iter().chain(cons.ge.iter()).enumerate() {
        let mut row = vec![Rat::zero(); total];
        for j in 0..n {
            row[j] = a[j].clone();
            row[n + j] = -a[j].clone();
        }
        if k >= m_eq {
            row[2 * n + (k - m_eq)] = -Rat::one();
        }
        let mut b = b.clone();
        if b.is_negative() {
            for v in row.iter_mut() {
                *v = -v.clone();
            }
            b = -b;
        }
        row[structural + k] = Rat::one();
        rows.push(row);
        rhs.push(b);
    }
    let mut t = Tableau { rows, rhs, basis: (structural..total).collect() };
    let mut phase1 = vec![Rat::zero(); total];
    for v in phase1[structural..].iter_mut() {
        *v = -Rat::one();
    }
    t.optimize(&phase1, total);
    let infeas: Rat = t
        .basis
        .iter()
        .zip(&t.rhs)
        .filter(|(&b, _)| b >= structural)
        .map(|(_, v)| v.clone())
        .sum();
    if infeas.is_positive() {
        return LpOutcome::Infeasible;
    }
    for i in 0..t.rows.len() {
        if t.basis[i] >= structural {
            if let Some(j) = (0..structural).find(|&j| !t.rows[i][j].is_zero()) {
                t.pivot(i, j);
            }
        }
    }
    let keep: Vec<usize> = (0..t.rows.len()).filter(|&i| t.basis[i] < structural).collect();
    t.rows = keep.iter().map(|&i| t.rows[i].clone()).collect();
    t.rhs = keep.iter().map(|&i| t.rhs[i].clone()).collect();
    t.basis = keep.iter().map(|&i| t.basis[i]).collect();
    let mut cost = vec![Rat::zero(); total];
    for j in 0..n {
        cost[j] = c[j].clone();
        cost[n + j] = -c[j].clone();
    }
    if !t.optimize(&cost, structural) {
        return LpOutcome::Unbounded;
    }
    let mut y = vec![Rat::zero(); total];
    for (i, &b) in t.basis.iter().enumerate() {
        y[b] = t.rhs[i].clone();
    }
    let x: RVec = (0..n).map(|j| &y[j] - &y[n + j]).collect();
    let value = crate::arith::dot_rat(c, &x);
    LpOutcome::Optimal { value, x }
}

/// Finds `x` with `eq` rows satisfied and every `gt` row strict, or `None`.
pub fn strictly_feasible(eq: &[(RVec, Rat)], gt: &[(RVec, Rat)], n: usize) -> Option<RVec> {
    let mut cons = Constraints::default();
    for (a, b) in eq {
        let mut a = a.clone();
        a.push(Rat::zero());
        cons.eq.push((a, b.clone()));
    }
    for (a, b) in gt {
        let mut a = a.clone();
        a.push(-Rat::one());
        cons.ge.push((a, b.clone()));
    }
    let mut cap = vec![Rat::zero(); n + 1];
    cap[n] = -Rat::one();
    cons.ge.push((cap, -Rat::one()));
    let mut c = vec![Rat::zero(); n + 1];
    c[n] = Rat::one();
    match maximize(&c, &cons) {
        LpOutcome::Optimal { value, mut x } if value.is_positive() => {
            x.pop();
            Some(x)
        }
        _ => None,
    }
}
