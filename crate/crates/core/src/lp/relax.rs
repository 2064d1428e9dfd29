//! Iterated relaxation: solve for a vertex, fix its integral coordinates,
//! discard one tight constraint with small fractional support, repeat.

use super::{solve_extreme_point, Constraint, ExtremePoint, LinearProgram};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use std::fmt::Write as _;

/// Chooses which live constraint to drop once fractional variables remain.
pub trait DiscardRule<S: Scalar> {
    /// Largest fractional support the rule accepts; reported on failure.
    fn threshold(&self) -> usize;

    /// Index into `lp.constraints` of the constraint to discard, or `None`
    /// when no constraint qualifies.
    fn choose(&self, lp: &LinearProgram<S>, point: &ExtremePoint<S>) -> Option<usize>;
}

/// Picks the tight constraint with the fewest fractional variables in its
/// support (lowest index on ties), provided that count is at most
/// `max_fractional`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FractionalSupportRule {
    pub max_fractional: usize,
}

impl FractionalSupportRule {
    /// Fractional support of every tight constraint, as `(index, count)`.
    pub fn tight_supports<S: Scalar>(
        lp: &LinearProgram<S>,
        point: &ExtremePoint<S>,
    ) -> Vec<(usize, usize)> {
        lp.constraints
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_tight(&point.values))
            .map(|(i, c)| {
                let frac = c
                    .coeffs
                    .iter()
                    .filter(|(j, _)| !point.values[*j].is_integral())
                    .count();
                (i, frac)
            })
            .collect()
    }
}

impl<S: Scalar> DiscardRule<S> for FractionalSupportRule {
    fn threshold(&self) -> usize {
        self.max_fractional
    }

    fn choose(&self, lp: &LinearProgram<S>, point: &ExtremePoint<S>) -> Option<usize> {
        Self::tight_supports(lp, point)
            .into_iter()
            .min_by_key(|&(i, f)| (f, i))
            .filter(|&(_, f)| f <= self.max_fractional)
            .map(|(i, _)| i)
    }
}

/// Snapshot after one iteration.
#[derive(Debug, Clone, PartialEq)]
pub struct RelaxationState<S> {
    pub iteration: usize,
    /// Variables fixed in this iteration, in original numbering.
    pub newly_fixed: Vec<(usize, bool)>,
    pub discarded: Option<String>,
    /// Cumulative partial assignment.
    pub fixed: Vec<Option<bool>>,
    /// Cumulative discarded tags.
    pub discarded_all: Vec<String>,
    /// The remaining program over the unfixed variables; `live_vars[j]` is the
    /// original index of its variable `j`.
    pub live: LinearProgram<S>,
    pub live_vars: Vec<usize>,
}

impl<S> RelaxationState<S> {
    /// `iter k: fixed=[v=b,...] discarded=tag`
    pub fn to_line(&self) -> String {
        let mut out = format!("iter {}: fixed=[", self.iteration);
        for (i, (v, b)) in self.newly_fixed.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let _ = write!(out, "{v}={}", u8::from(*b));
        }
        let _ = write!(
            out,
            "] discarded={}",
            self.discarded.as_deref().unwrap_or("-")
        );
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Relaxation<S> {
    pub assignment: Vec<bool>,
    pub log: Vec<RelaxationState<S>>,
}

impl<S> Relaxation<S> {
    pub fn discards(&self) -> usize {
        self.log.iter().filter(|s| s.discarded.is_some()).count()
    }
}

/// Rounds a 0/1 program to an integral assignment. Every constraint is either
/// satisfied by the result or was discarded while tight with at most
/// `rule.threshold()` fractional variables.
pub fn iterated_relax<S: Scalar, R: DiscardRule<S>>(
    lp: &LinearProgram<S>,
    rule: &R,
) -> Result<Relaxation<S>> {
    lp.validate()?;
    let n = lp.n_vars();
    if (0..n).any(|j| !lp.lower[j].is_zero() || !lp.upper[j].is_one()) {
        return Err(Error::InvalidParameter(
            "iterated relaxation needs every variable bounded by [0, 1]".into(),
        ));
    }
    let cap = lp.constraints.len() + n;
    let mut fixed: Vec<Option<bool>> = vec![None; n];
    let mut discarded_all = Vec::new();
    let mut live = lp.clone();
    let mut live_vars: Vec<usize> = (0..n).collect();
    let mut log = Vec::new();
    let mut iteration = 0;
    while !live_vars.is_empty() {
        iteration += 1;
        if iteration > cap {
            return Err(Error::Internal(format!(
                "iterated relaxation did not finish within {cap} iterations"
            )));
        }
        let point = solve_extreme_point(&live)?;
        let mut newly_fixed = Vec::new();
        for (j, x) in point.values.iter().enumerate() {
            if x.is_integral() {
                let b = !x.is_negligible();
                fixed[live_vars[j]] = Some(b);
                newly_fixed.push((live_vars[j], b));
            }
        }
        let fractional = live_vars.len() - newly_fixed.len();
        let drop = if fractional > 0 {
            match rule.choose(&live, &point) {
                Some(i) => Some(i),
                None => {
                    return Err(Error::StructureViolation {
                        iteration,
                        threshold: rule.threshold(),
                        fractional,
                    })
                }
            }
        } else {
            None
        };
        let discarded = drop.map(|i| live.constraints[i].tag.clone());
        if let Some(tag) = &discarded {
            discarded_all.push(tag.clone());
        }
        (live, live_vars) = substitute(&live, &live_vars, &point, drop);
        log.push(RelaxationState {
            iteration,
            newly_fixed,
            discarded,
            fixed: fixed.clone(),
            discarded_all: discarded_all.clone(),
            live: live.clone(),
            live_vars: live_vars.clone(),
        });
    }
    let assignment = fixed
        .into_iter()
        .map(|f| f.expect("loop ends once every variable is fixed"))
        .collect();
    Ok(Relaxation { assignment, log })
}

/// Removes integral variables (moving their contribution to the right-hand
/// side), the discarded constraint, and constraints left without support.
fn substitute<S: Scalar>(
    lp: &LinearProgram<S>,
    vars: &[usize],
    point: &ExtremePoint<S>,
    drop: Option<usize>,
) -> (LinearProgram<S>, Vec<usize>) {
    let mut new_index = vec![usize::MAX; vars.len()];
    let mut kept = Vec::new();
    for (j, x) in point.values.iter().enumerate() {
        if !x.is_integral() {
            new_index[j] = kept.len();
            kept.push(vars[j]);
        }
    }
    let mut constraints = Vec::new();
    for (i, c) in lp.constraints.iter().enumerate() {
        if Some(i) == drop {
            continue;
        }
        let mut rhs = c.rhs.clone();
        let mut coeffs = Vec::new();
        for (j, a) in &c.coeffs {
            if new_index[*j] == usize::MAX {
                rhs = rhs - a.clone() * point.values[*j].clone();
            } else {
                coeffs.push((new_index[*j], a.clone()));
            }
        }
        if !coeffs.is_empty() {
            constraints.push(Constraint {
                coeffs,
                sense: c.sense,
                rhs,
                tag: c.tag.clone(),
            });
        }
    }
    let k = kept.len();
    (LinearProgram::binary(k, constraints), kept)
}
