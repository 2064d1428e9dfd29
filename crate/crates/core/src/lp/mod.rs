//! Feasibility linear programs over a generic scalar, extreme-point solving by
//! bounded-variable simplex, and iterated relaxation to 0/1 assignments.

mod relax;
mod simplex;

pub use relax::{iterated_relax, DiscardRule, FractionalSupportRule, Relaxation, RelaxationState};
pub use simplex::solve_extreme_point;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Ge,
    Le,
    Eq,
}

impl fmt::Display for Sense {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sense::Ge => ">=",
            Sense::Le => "<=",
            Sense::Eq => "=",
        })
    }
}

/// `Σ coeffs · x  sense  rhs`, with a free-form tag for logs and errors.
#[derive(Debug, Clone, PartialEq)]
pub struct Constraint<S> {
    /// Sparse coefficients, sorted by variable and without duplicates.
    pub coeffs: Vec<(usize, S)>,
    pub sense: Sense,
    pub rhs: S,
    pub tag: String,
}

impl<S: Scalar> Constraint<S> {
    /// Merges duplicate variables and drops zero coefficients.
    pub fn new(coeffs: Vec<(usize, S)>, sense: Sense, rhs: S, tag: impl Into<String>) -> Self {
        let mut coeffs = coeffs;
        coeffs.sort_by_key(|(j, _)| *j);
        let mut merged: Vec<(usize, S)> = Vec::with_capacity(coeffs.len());
        for (j, a) in coeffs {
            match merged.last_mut() {
                Some((k, b)) if *k == j => *b = b.clone() + a,
                _ => merged.push((j, a)),
            }
        }
        merged.retain(|(_, a)| !a.is_negligible());
        Constraint {
            coeffs: merged,
            sense,
            rhs,
            tag: tag.into(),
        }
    }

    pub fn lhs(&self, x: &[S]) -> S {
        self.coeffs
            .iter()
            .fold(S::zero(), |acc, (j, a)| acc + a.clone() * x[*j].clone())
    }

    pub fn is_satisfied(&self, x: &[S]) -> bool {
        let lhs = self.lhs(x);
        match self.sense {
            Sense::Ge => lhs.ge_tol(&self.rhs),
            Sense::Le => self.rhs.ge_tol(&lhs),
            Sense::Eq => lhs.approx_eq(&self.rhs),
        }
    }

    pub fn is_tight(&self, x: &[S]) -> bool {
        self.lhs(x).approx_eq(&self.rhs)
    }
}

/// A feasibility LP: bounded variables and linear constraints, no objective.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram<S> {
    pub lower: Vec<S>,
    pub upper: Vec<S>,
    pub constraints: Vec<Constraint<S>>,
}

impl<S: Scalar> LinearProgram<S> {
    pub fn new(lower: Vec<S>, upper: Vec<S>, constraints: Vec<Constraint<S>>) -> Self {
        LinearProgram {
            lower,
            upper,
            constraints,
        }
    }

    /// All variables in `[0, 1]`.
    pub fn binary(n_vars: usize, constraints: Vec<Constraint<S>>) -> Self {
        LinearProgram {
            lower: vec![S::zero(); n_vars],
            upper: vec![S::one(); n_vars],
            constraints,
        }
    }

    pub fn n_vars(&self) -> usize {
        self.lower.len()
    }

    pub(crate) fn validate(&self) -> Result<()> {
        let n = self.n_vars();
        if self.upper.len() != n {
            return Err(Error::InvalidParameter(format!(
                "{} lower bounds but {} upper bounds",
                n,
                self.upper.len()
            )));
        }
        for j in 0..n {
            if self.lower[j] > self.upper[j] {
                return Err(Error::Infeasible {
                    constraint: Some(format!("bounds of x{j}")),
                });
            }
        }
        for c in &self.constraints {
            if let Some((j, _)) = c.coeffs.iter().find(|(j, _)| *j >= n) {
                return Err(Error::InvalidParameter(format!(
                    "constraint {} references x{j} but there are {n} variables",
                    c.tag
                )));
            }
        }
        Ok(())
    }

    /// First constraint or bound `x` violates, if any.
    pub fn violation(&self, x: &[S]) -> Option<String> {
        for j in 0..self.n_vars() {
            if !x[j].ge_tol(&self.lower[j]) || !self.upper[j].ge_tol(&x[j]) {
                return Some(format!("bounds of x{j}"));
            }
        }
        self.constraints
            .iter()
            .find(|c| !c.is_satisfied(x))
            .map(|c| c.tag.clone())
    }
}

/// A member of an extreme point's defining family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TightConstraint {
    Row(usize),
    Lower(usize),
    Upper(usize),
}

/// A basic feasible solution with `n_vars` linearly independent tight
/// constraints certifying that it is a vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtremePoint<S> {
    pub values: Vec<S>,
    pub tight_set: Vec<TightConstraint>,
}

impl<S: Scalar> ExtremePoint<S> {
    pub fn fractional(&self) -> Vec<usize> {
        (0..self.values.len())
            .filter(|&j| !self.values[j].is_integral())
            .collect()
    }
}

/// Dense coefficient vector of a tight-set member.
pub(crate) fn tight_row<S: Scalar>(lp: &LinearProgram<S>, t: TightConstraint) -> Vec<S> {
    let mut row = vec![S::zero(); lp.n_vars()];
    match t {
        TightConstraint::Row(i) => {
            for (j, a) in &lp.constraints[i].coeffs {
                row[*j] = a.clone();
            }
        }
        TightConstraint::Lower(j) | TightConstraint::Upper(j) => row[j] = S::one(),
    }
    row
}

/// Rank of a set of dense rows by Gaussian elimination.
pub fn rank<S: Scalar>(rows: &[Vec<S>]) -> usize {
    let mut basis: Vec<(usize, Vec<S>)> = Vec::new();
    for r in rows {
        if let Some(b) = reduce_against(&basis, r.clone()) {
            basis.push(b);
        }
    }
    basis.len()
}

/// Reduces `row` by an echelon basis; returns it with its pivot column if it
/// stays nonzero.
pub(crate) fn reduce_against<S: Scalar>(
    basis: &[(usize, Vec<S>)],
    mut row: Vec<S>,
) -> Option<(usize, Vec<S>)> {
    for (p, b) in basis {
        if row[*p].is_negligible() {
            continue;
        }
        let f = row[*p].clone() / b[*p].clone();
        for (x, y) in row.iter_mut().zip(b) {
            if !y.is_negligible() {
                *x = x.clone() - f.clone() * y.clone();
            }
        }
    }
    let p = row.iter().position(|x| !x.is_negligible())?;
    Some((p, row))
}

/// Checks feasibility of `point` and independence and tightness of its
/// certificate.
pub fn verify_extreme_point<S: Scalar>(lp: &LinearProgram<S>, point: &ExtremePoint<S>) -> bool {
    let x = &point.values;
    if x.len() != lp.n_vars() || lp.violation(x).is_some() || point.tight_set.len() != lp.n_vars() {
        return false;
    }
    let tight = point.tight_set.iter().all(|&t| match t {
        TightConstraint::Row(i) => i < lp.constraints.len() && lp.constraints[i].is_tight(x),
        TightConstraint::Lower(j) => x[j].approx_eq(&lp.lower[j]),
        TightConstraint::Upper(j) => x[j].approx_eq(&lp.upper[j]),
    });
    let rows: Vec<Vec<S>> = point.tight_set.iter().map(|&t| tight_row(lp, t)).collect();
    tight && rank(&rows) == lp.n_vars()
}
