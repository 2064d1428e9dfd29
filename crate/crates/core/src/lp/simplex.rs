//! Phase-one bounded-variable simplex with Bland's rule.
//!
//! Variables are shifted to `[0, hi - lo]`, each inequality gets a slack, and
//! rows without a usable `+1` slack get an artificial. Minimising the sum of
//! artificials yields a basic feasible solution, i.e. a vertex of the original
//! polytope.

use super::{reduce_against, ExtremePoint, LinearProgram, Sense, TightConstraint};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Structural,
    Slack,
    Artificial,
}

struct Tableau<S> {
    /// `B⁻¹A`, one dense row per constraint.
    rows: Vec<Vec<S>>,
    /// Current value of each row's basic variable.
    beta: Vec<S>,
    basis: Vec<usize>,
    /// Phase-one reduced costs.
    cost: Vec<S>,
    upper: Vec<Option<S>>,
    at_upper: Vec<bool>,
    is_basic: Vec<bool>,
    kind: Vec<Kind>,
}

impl<S: Scalar> Tableau<S> {
    fn value(&self, j: usize) -> S {
        if self.is_basic[j] {
            let r = self
                .basis
                .iter()
                .position(|&b| b == j)
                .expect("basic column has a row");
            self.beta[r].clone()
        } else if self.at_upper[j] {
            self.upper[j]
                .clone()
                .expect("only bounded columns sit at their upper bound")
        } else {
            S::zero()
        }
    }

    fn can_enter(&self, j: usize) -> Option<bool> {
        if self.is_basic[j] || self.kind[j] == Kind::Artificial {
            return None;
        }
        let d = &self.cost[j];
        if d.is_negligible() {
            return None;
        }
        let increase = !self.at_upper[j];
        let has_room = match &self.upper[j] {
            Some(u) => !u.is_negligible(),
            None => true,
        };
        match (increase, d.is_negative()) {
            (true, true) if has_room => Some(true),
            (false, false) => Some(false),
            _ => None,
        }
    }

    fn pivot(&mut self, r: usize, j: usize) {
        let p = self.rows[r][j].clone();
        for x in self.rows[r].iter_mut() {
            if !x.is_negligible() {
                *x = x.clone() / p.clone();
            }
        }
        let pivot_row = self.rows[r].clone();
        let nz: Vec<usize> = (0..pivot_row.len())
            .filter(|&c| !pivot_row[c].is_negligible())
            .collect();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][j].is_negligible() {
                continue;
            }
            let f = self.rows[i][j].clone();
            for &c in &nz {
                self.rows[i][c] = self.rows[i][c].clone() - f.clone() * pivot_row[c].clone();
            }
        }
        if !self.cost[j].is_negligible() {
            let f = self.cost[j].clone();
            for &c in &nz {
                self.cost[c] = self.cost[c].clone() - f.clone() * pivot_row[c].clone();
            }
        }
        let leaving = self.basis[r];
        self.is_basic[leaving] = false;
        self.is_basic[j] = true;
        self.basis[r] = j;
    }

    /// One Bland step. Returns false at optimality.
    fn step(&mut self) -> Result<bool> {
        let Some((j, increase)) =
            (0..self.cost.len()).find_map(|j| self.can_enter(j).map(|d| (j, d)))
        else {
            return Ok(false);
        };
        // Blocking candidates: (step length, variable index, row or None for a bound flip).
        let mut best: Option<(S, usize, Option<usize>)> = None;
        let mut offer = |theta: S, var: usize, row: Option<usize>| {
            let better = match &best {
                None => true,
                Some((t, v, _)) => theta < *t || (theta.approx_eq(t) && var < *v),
            };
            if better {
                best = Some((theta, var, row));
            }
        };
        if let Some(u) = &self.upper[j] {
            offer(u.clone(), j, None);
        }
        for i in 0..self.rows.len() {
            let a = &self.rows[i][j];
            if a.is_negligible() {
                continue;
            }
            // Rate of change of the basic variable per unit step.
            let rate = if increase { -a.clone() } else { a.clone() };
            let k = self.basis[i];
            if rate.is_negative() {
                offer(self.beta[i].clone() / -rate, k, Some(i));
            } else if let Some(u) = &self.upper[k] {
                offer((u.clone() - self.beta[i].clone()) / rate, k, Some(i));
            }
        }
        let Some((theta, _, row)) = best else {
            return Err(Error::Internal("phase-one objective is unbounded".into()));
        };
        for i in 0..self.rows.len() {
            let a = &self.rows[i][j];
            if a.is_negligible() {
                continue;
            }
            let delta = a.clone() * theta.clone();
            self.beta[i] = if increase {
                self.beta[i].clone() - delta
            } else {
                self.beta[i].clone() + delta
            };
        }
        match row {
            None => self.at_upper[j] = !self.at_upper[j],
            Some(r) => {
                let leaving = self.basis[r];
                let hit_upper = match &self.upper[leaving] {
                    Some(u) => self.beta[r].approx_eq(u) && !u.is_negligible(),
                    None => false,
                };
                let entering_value = if increase {
                    theta
                } else {
                    self.upper[j].clone().expect("decreasing column is bounded") - theta
                };
                self.pivot(r, j);
                self.beta[r] = entering_value;
                self.at_upper[leaving] = hit_upper;
                self.at_upper[j] = false;
            }
        }
        Ok(true)
    }
}

/// Finds a vertex of the feasible region with its tight-set certificate.
/// Deterministic for a given program.
pub fn solve_extreme_point<S: Scalar>(lp: &LinearProgram<S>) -> Result<ExtremePoint<S>> {
    lp.validate()?;
    let n = lp.n_vars();
    let m = lp.constraints.len();
    let n_slack = lp
        .constraints
        .iter()
        .filter(|c| c.sense != Sense::Eq)
        .count();
    let mut rows: Vec<Vec<S>> = Vec::with_capacity(m);
    let mut beta = Vec::with_capacity(m);
    let mut basis = vec![usize::MAX; m];
    let mut kind = vec![Kind::Structural; n];
    kind.extend(std::iter::repeat_n(Kind::Slack, n_slack));
    let mut upper: Vec<Option<S>> = (0..n)
        .map(|j| Some(lp.upper[j].clone() - lp.lower[j].clone()))
        .collect();
    upper.extend(std::iter::repeat_n(None, n_slack));
    let mut artificial_rows = Vec::new();
    let mut slack = n;
    for (i, c) in lp.constraints.iter().enumerate() {
        let mut row = vec![S::zero(); n + n_slack];
        let mut rhs = c.rhs.clone();
        for (j, a) in &c.coeffs {
            row[*j] = a.clone();
            rhs = rhs - a.clone() * lp.lower[*j].clone();
        }
        let slack_col = match c.sense {
            Sense::Ge => Some((slack, -S::one())),
            Sense::Le => Some((slack, S::one())),
            Sense::Eq => None,
        };
        if let Some((col, coef)) = &slack_col {
            row[*col] = coef.clone();
            slack += 1;
        }
        if rhs.is_negative() {
            row.iter_mut().for_each(|x| *x = -x.clone());
            rhs = -rhs;
        }
        match slack_col {
            Some((col, _)) if row[col].is_positive() => basis[i] = col,
            _ => artificial_rows.push(i),
        }
        rows.push(row);
        beta.push(rhs);
    }
    let n_cols = n + n_slack + artificial_rows.len();
    for row in rows.iter_mut() {
        row.resize(n_cols, S::zero());
    }
    let mut cost = vec![S::zero(); n_cols];
    for (a, &i) in artificial_rows.iter().enumerate() {
        let col = n + n_slack + a;
        rows[i][col] = S::one();
        basis[i] = col;
        kind.push(Kind::Artificial);
        upper.push(None);
        // Reduced costs: c_j - Σ over artificial rows of the row entries.
        for (c, x) in rows[i].iter().enumerate() {
            if !x.is_negligible() {
                cost[c] = cost[c].clone() - x.clone();
            }
        }
        cost[col] = S::zero();
    }
    let mut is_basic = vec![false; n_cols];
    for &b in &basis {
        is_basic[b] = true;
    }
    let mut t = Tableau {
        rows,
        beta,
        basis,
        cost,
        upper,
        at_upper: vec![false; n_cols],
        is_basic,
        kind,
    };

    let cap = 50 * (m + n_cols + 1) * (m + n_cols + 1);
    let mut steps = 0;
    while t.step()? {
        steps += 1;
        if steps > cap {
            return Err(Error::Internal(format!("simplex exceeded {cap} pivots")));
        }
    }

    if let Some(r) =
        (0..m).find(|&r| t.kind[t.basis[r]] == Kind::Artificial && !t.beta[r].is_negligible())
    {
        return Err(Error::Infeasible {
            constraint: Some(lp.constraints[r].tag.clone()),
        });
    }

    // Drive zero-valued artificials out of the basis where a real column can
    // replace them; rows where none can are redundant.
    for r in 0..m {
        if t.kind[t.basis[r]] != Kind::Artificial {
            continue;
        }
        let replacement =
            (0..n + n_slack).find(|&j| !t.is_basic[j] && !t.rows[r][j].is_negligible());
        if let Some(j) = replacement {
            let value = t.value(j);
            let leaving = t.basis[r];
            t.pivot(r, j);
            t.beta[r] = value;
            t.at_upper[leaving] = false;
            t.at_upper[j] = false;
        }
    }

    let values: Vec<S> = (0..n).map(|j| lp.lower[j].clone() + t.value(j)).collect();
    if let Some(tag) = lp.violation(&values) {
        return Err(Error::Internal(format!(
            "simplex returned a point violating {tag}"
        )));
    }
    let tight_set = certificate(lp, &values)?;
    Ok(ExtremePoint { values, tight_set })
}

/// Tight bounds first (unit rows, trivially independent), then tight rows
/// restricted to the remaining columns, by greedy elimination.
fn certificate<S: Scalar>(lp: &LinearProgram<S>, x: &[S]) -> Result<Vec<TightConstraint>> {
    let n = lp.n_vars();
    let mut tight = Vec::with_capacity(n);
    let mut free = Vec::new();
    for j in 0..n {
        if x[j].approx_eq(&lp.lower[j]) {
            tight.push(TightConstraint::Lower(j));
        } else if x[j].approx_eq(&lp.upper[j]) {
            tight.push(TightConstraint::Upper(j));
        } else {
            free.push(j);
        }
    }
    let mut col_of = vec![usize::MAX; n];
    for (c, &j) in free.iter().enumerate() {
        col_of[j] = c;
    }
    let mut basis: Vec<(usize, Vec<S>)> = Vec::new();
    for (i, c) in lp.constraints.iter().enumerate() {
        if basis.len() == free.len() {
            break;
        }
        if !c.is_tight(x) {
            continue;
        }
        let mut row = vec![S::zero(); free.len()];
        for (j, a) in &c.coeffs {
            if col_of[*j] != usize::MAX {
                row[col_of[*j]] = a.clone();
            }
        }
        if let Some(b) = reduce_against(&basis, row) {
            basis.push(b);
            tight.push(TightConstraint::Row(i));
        }
    }
    if basis.len() < free.len() {
        return Err(Error::Internal(format!(
            "solution has {} free variables but only {} independent tight rows",
            free.len(),
            basis.len()
        )));
    }
    Ok(tight)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::{verify_extreme_point, Constraint};
    use crate::scalar::{int, ratio};
    use crate::Rational;

    fn c(coeffs: &[(usize, i64)], sense: Sense, rhs: Rational) -> Constraint<Rational> {
        Constraint::new(
            coeffs.iter().map(|&(j, a)| (j, int(a))).collect(),
            sense,
            rhs,
            "c",
        )
    }

    #[test]
    fn one_dimensional_vertex() {
        let lp = LinearProgram::binary(1, vec![c(&[(0, 1)], Sense::Ge, ratio(1, 2))]);
        let p = solve_extreme_point(&lp).unwrap();
        assert!(p.values[0] == ratio(1, 2) || p.values[0] == int(1));
        assert!(verify_extreme_point(&lp, &p));
    }

    #[test]
    fn detects_infeasibility() {
        let lp = LinearProgram::binary(
            1,
            vec![
                c(&[(0, 1)], Sense::Ge, int(1)),
                c(&[(0, 1)], Sense::Le, int(0)),
            ],
        );
        assert!(matches!(
            solve_extreme_point(&lp),
            Err(Error::Infeasible { .. })
        ));
    }

    #[test]
    fn equality_and_shifted_bounds() {
        let lp = LinearProgram::new(
            vec![int(-2), int(1)],
            vec![int(3), int(5)],
            vec![
                c(&[(0, 1), (1, 1)], Sense::Eq, int(4)),
                c(&[(0, 2), (1, -1)], Sense::Le, int(1)),
            ],
        );
        let p = solve_extreme_point(&lp).unwrap();
        assert!(verify_extreme_point(&lp, &p));
    }

    #[test]
    fn no_constraints() {
        let lp: LinearProgram<Rational> = LinearProgram::binary(3, vec![]);
        let p = solve_extreme_point(&lp).unwrap();
        assert_eq!(p.values, vec![int(0); 3]);
        assert_eq!(p.tight_set.len(), 3);
    }

    #[test]
    fn float_scalar_agrees() {
        let lp = LinearProgram::<f64>::binary(
            2,
            vec![Constraint::new(
                vec![(0, 1.0), (1, 1.0)],
                Sense::Ge,
                1.5,
                "sum",
            )],
        );
        let p = solve_extreme_point(&lp).unwrap();
        assert!(verify_extreme_point(&lp, &p));
    }
}
