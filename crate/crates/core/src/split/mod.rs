//! Degree-preserving bipartitions of the edge multiset and the recursive
//! split-then-resample decomposition drivers.

mod flow;

pub use flow::{flow_shrink, max_flow, shrink_network, Arc, FlowNetwork, MaxFlow};

use crate::error::{Error, Result};
use crate::generators::rng_from_seed;
use crate::hypergraph::{
    shrink_to_degree, verify_cover_decomposition, CoverDecomposition, Hypergraph,
};
use crate::lll::{lll_target_colours, moser_tardos_decompose, LllConfig, RESAMPLES_PER_EDGE};
use crate::lp::{iterated_relax, Constraint, FractionalSupportRule, LinearProgram, Sense};
use crate::scalar::{half, int};
use crate::Rational;
use rand::Rng;
use std::collections::BTreeSet;

/// Mixes a node index into a base seed.
const SEED_MIX: u64 = 0x9E37_79B9_7F4A_7C15;

/// Edge ids of the two sides of a split.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl Bipartition {
    fn from_sides(side: &[bool]) -> Self {
        let (mut left, mut right) = (Vec::new(), Vec::new());
        for (e, &s) in side.iter().enumerate() {
            if s {
                left.push(e);
            } else {
                right.push(e);
            }
        }
        Bipartition { left, right }
    }

    pub fn halves(&self, h: &Hypergraph) -> (Hypergraph, Hypergraph) {
        (h.restrict(&self.left), h.restrict(&self.right))
    }
}

fn require_regular(h: &Hypergraph) -> Result<usize> {
    if let Some(v) = h.isolated_vertex() {
        return Err(Error::IsolatedVertex(v));
    }
    if !h.is_regular() {
        return Err(Error::NotRegular {
            min: h.min_degree(),
            max: h.max_degree(),
        });
    }
    Ok(h.min_degree())
}

/// Degree both sides of a Beck-Fiala split are guaranteed: `⌈δ/2⌉ - R`.
pub fn beck_fiala_floor(big_r: usize, delta: usize) -> i64 {
    delta.div_ceil(2) as i64 - big_r as i64
}

/// Splits a δ-regular hypergraph so that both sides keep degree at least
/// `⌈δ/2⌉ - R`, by iterated relaxation of the half-degree LP.
pub fn beck_fiala_split(h: &Hypergraph) -> Result<Bipartition> {
    let delta = require_regular(h)?;
    let big_r = h.max_edge_size();
    let half_delta = int(delta as i64) * half();
    let mut constraints = Vec::with_capacity(2 * h.n_vertices());
    for (v, edges) in h.incidence().into_iter().enumerate() {
        let support: Vec<(usize, Rational)> = edges.into_iter().map(|e| (e, int(1))).collect();
        constraints.push(Constraint::new(
            support.clone(),
            Sense::Ge,
            half_delta.clone(),
            format!("cover[v{v}]"),
        ));
        constraints.push(Constraint::new(
            support,
            Sense::Le,
            int(delta as i64) - half_delta.clone(),
            format!("pack[v{v}]"),
        ));
    }
    let lp = LinearProgram::binary(h.n_edges(), constraints);
    let relaxed = iterated_relax(
        &lp,
        &FractionalSupportRule {
            max_fractional: big_r,
        },
    )?;
    let split = Bipartition::from_sides(&relaxed.assignment);
    let floor = beck_fiala_floor(big_r, delta);
    let (a, b) = split.halves(h);
    let worst = a.min_degree().min(b.min_degree()) as i64;
    if worst < floor {
        return Err(Error::GuaranteeViolated(format!(
            "split side has degree {worst}, below ⌈δ/2⌉ - R = {floor}"
        )));
    }
    Ok(split)
}

/// Discrepancy allowance `λ(d) = sqrt(2·d·ln(2·e·R·d))`.
pub fn chernoff_lambda(big_r: usize, d: usize) -> f64 {
    if d == 0 {
        return 0.0;
    }
    let d = d as f64;
    (2.0 * d * (2.0f64.ln() + 1.0 + (big_r.max(1) as f64).ln() + d.ln())).sqrt()
}

/// Degree both sides of a randomised split are guaranteed: `d/2 - λ(d)`.
pub fn chernoff_floor(big_r: usize, d: usize) -> f64 {
    d as f64 / 2.0 - chernoff_lambda(big_r, d)
}

/// Random bipartition of a d-regular hypergraph, resampling the edges at the
/// lowest vertex whose degree on either side falls below `d/2 - λ(d)`.
/// `cap` of `None` allows `1000·m` resampling steps.
pub fn chernoff_split(h: &Hypergraph, seed: u64, cap: Option<usize>) -> Result<Bipartition> {
    let d = require_regular(h)?;
    let big_r = h.max_edge_size();
    let floor = chernoff_floor(big_r, d);
    let cap = cap.unwrap_or(RESAMPLES_PER_EDGE.saturating_mul(h.n_edges()));
    let mut rng = rng_from_seed(seed);
    let inc = h.incidence();
    let mut side: Vec<bool> = (0..h.n_edges()).map(|_| rng.gen()).collect();
    let mut left = vec![0usize; h.n_vertices()];
    for (e, vs) in h.edges().iter().enumerate() {
        if side[e] {
            for &v in vs {
                left[v] += 1;
            }
        }
    }
    let is_bad = |l: usize| (l.min(d - l) as f64) < floor;
    let mut bad: BTreeSet<usize> = (0..h.n_vertices()).filter(|&v| is_bad(left[v])).collect();
    let mut steps = 0;
    while let Some(&v) = bad.first() {
        if steps == cap {
            return Err(Error::ResampleCapExceeded { cap });
        }
        steps += 1;
        for &e in &inc[v] {
            let s: bool = rng.gen();
            if s == side[e] {
                continue;
            }
            side[e] = s;
            for &u in h.edge(e) {
                if s {
                    left[u] += 1;
                } else {
                    left[u] -= 1;
                }
                if is_bad(left[u]) {
                    bad.insert(u);
                } else {
                    bad.remove(&u);
                }
            }
        }
    }
    Ok(Bipartition::from_sides(&side))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitStrategy {
    BeckFiala,
    Chernoff,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopRule {
    /// Split while the degree is at least `4R`.
    RangeR4R,
    /// Split for exactly `T` rounds, the largest `T` with `δ/2^T ≥ ln³R`.
    PolylogT,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitPlan {
    pub strategy: SplitStrategy,
    pub stop: StopRule,
    /// Resample cap for randomised splits; `None` means `1000·m`.
    pub split_cap: Option<usize>,
}

impl SplitPlan {
    pub fn new(strategy: SplitStrategy, stop: StopRule) -> Self {
        SplitPlan {
            strategy,
            stop,
            split_cap: None,
        }
    }

    /// Number of rounds the polylog rule performs. The target `ln³R` is
    /// floored at 1 so that `R ≤ e` still gives a finite count.
    pub fn polylog_rounds(big_r: usize, delta: usize) -> usize {
        let target = (big_r.max(1) as f64).ln().powi(3).max(1.0);
        let mut t = 0;
        while delta as f64 / 2f64.powi(t as i32 + 1) >= target {
            t += 1;
        }
        t
    }

    fn guaranteed_child_degree(&self, big_r: usize, delta: usize) -> f64 {
        match self.strategy {
            SplitStrategy::BeckFiala => beck_fiala_floor(big_r, delta) as f64,
            SplitStrategy::Chernoff => chernoff_floor(big_r, delta),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeafReport {
    pub path: String,
    pub delta: usize,
    pub big_r: usize,
    pub colours: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecursiveOutcome {
    pub decomposition: CoverDecomposition,
    pub leaves: Vec<LeafReport>,
    pub splits: usize,
    /// Rounds planned by the polylog rule, if it was used.
    pub planned_rounds: Option<usize>,
}

struct Node {
    path: String,
    /// Ids into the input hypergraph.
    ids: Vec<usize>,
    /// Regular hypergraph over `ids`, in the same order.
    h: Hypergraph,
    depth: usize,
}

fn wrap(path: &str, e: Error) -> Error {
    match e {
        Error::Recursion { .. } => e,
        other => Error::Recursion {
            path: path.to_string(),
            source: Box::new(other),
        },
    }
}

/// Splits recursively until the stop rule fires, then resamples each leaf
/// into `lll_target_colours(R, δ)` covers. `lll_cfg.colours` is ignored; its
/// seed and cap apply to every leaf.
pub fn recursive_decompose(
    h: &Hypergraph,
    plan: &SplitPlan,
    lll_cfg: &LllConfig,
) -> Result<CoverDecomposition> {
    recursive_decompose_report(h, plan, lll_cfg).map(|o| o.decomposition)
}

pub fn recursive_decompose_report(
    h: &Hypergraph,
    plan: &SplitPlan,
    lll_cfg: &LllConfig,
) -> Result<RecursiveOutcome> {
    if let Some(v) = h.isolated_vertex() {
        return Err(Error::IsolatedVertex(v));
    }
    let big_r = h.max_edge_size().max(1);
    let delta = h.min_degree();
    let rounds = match plan.stop {
        StopRule::RangeR4R => None,
        StopRule::PolylogT => Some(SplitPlan::polylog_rounds(big_r, delta)),
    };
    let root = Node {
        path: "root".into(),
        ids: (0..h.n_edges()).collect(),
        h: shrink_to_degree(h, delta).map_err(|e| wrap("root", e))?,
        depth: 0,
    };
    let mut stack = vec![root];
    let mut part_of = vec![usize::MAX; h.n_edges()];
    let mut k = 0;
    let mut leaves = Vec::new();
    let mut splits = 0;
    let mut node_index: u64 = 0;
    while let Some(node) = stack.pop() {
        node_index += 1;
        let d = node.h.min_degree();
        let wants_split = match plan.stop {
            StopRule::RangeR4R => d >= 4 * big_r,
            StopRule::PolylogT => node.depth < rounds.unwrap_or(0),
        };
        if wants_split && plan.guaranteed_child_degree(big_r, d) >= 1.0 {
            let seed = lll_cfg.seed ^ node_index.wrapping_mul(SEED_MIX);
            let split = match plan.strategy {
                SplitStrategy::BeckFiala => beck_fiala_split(&node.h),
                SplitStrategy::Chernoff => chernoff_split(&node.h, seed, plan.split_cap),
            }
            .map_err(|e| wrap(&node.path, e))?;
            splits += 1;
            let mut children = Vec::with_capacity(2);
            for (tag, side) in [("0", &split.left), ("1", &split.right)] {
                let sub = node.h.restrict(side);
                let cd = sub.min_degree();
                let path = format!("{}/{tag}", node.path);
                let shrunk = shrink_to_degree(&sub, cd).map_err(|e| wrap(&path, e))?;
                children.push(Node {
                    path,
                    ids: side.iter().map(|&i| node.ids[i]).collect(),
                    h: shrunk,
                    depth: node.depth + 1,
                });
            }
            let child_sum = children[0].h.min_degree() + children[1].h.min_degree();
            if plan.strategy == SplitStrategy::BeckFiala && child_sum + 2 * big_r < d {
                return Err(wrap(
                    &node.path,
                    Error::GuaranteeViolated(format!(
                        "children have degrees summing to {child_sum}, parent {d}, R = {big_r}"
                    )),
                ));
            }
            // Right child pushed first so the left subtree is processed first.
            stack.extend(children.into_iter().rev());
            continue;
        }
        let leaf_r = node.h.max_edge_size().max(1);
        let colours = lll_target_colours(leaf_r, d);
        let cfg = LllConfig {
            colours,
            seed: lll_cfg.seed ^ node_index.wrapping_mul(SEED_MIX),
            max_resamples: lll_cfg.max_resamples,
        };
        let local = moser_tardos_decompose(&node.h, &cfg).map_err(|e| wrap(&node.path, e))?;
        for (i, &id) in node.ids.iter().enumerate() {
            part_of[id] = k + local.part_of[i];
        }
        k += colours;
        leaves.push(LeafReport {
            path: node.path,
            delta: d,
            big_r: leaf_r,
            colours,
        });
    }
    let decomposition = CoverDecomposition::new(part_of, k);
    if !verify_cover_decomposition(h, &decomposition) {
        return Err(Error::Internal(
            "recursive decomposition failed verification on the input".into(),
        ));
    }
    Ok(RecursiveOutcome {
        decomposition,
        leaves,
        splits,
        planned_rounds: rounds,
    })
}

/// Shrinks to edge size at most `β` while losing at most `α` degree, then
/// decomposes recursively. Covers of the shrunk instance are covers of `h`.
pub fn sparse_decompose(
    h: &Hypergraph,
    alpha: usize,
    beta: usize,
    plan: &SplitPlan,
    lll_cfg: &LllConfig,
) -> Result<CoverDecomposition> {
    let shrunk = flow_shrink(h, alpha, beta)?;
    let d = recursive_decompose(&shrunk, plan, lll_cfg)?;
    if !verify_cover_decomposition(h, &d) {
        return Err(Error::Internal(
            "lifted decomposition is not a cover decomposition".into(),
        ));
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_fano, replicate};

    fn c4_times(mu: usize) -> Hypergraph {
        let base =
            Hypergraph::new(4, vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]]).unwrap();
        replicate(&base, mu).unwrap()
    }

    #[test]
    fn lambda_values() {
        assert!((chernoff_lambda(2, 2) - 3.5097).abs() < 1e-3);
        assert!((chernoff_lambda(3, 300) - 71.3956).abs() < 1e-3);
    }

    #[test]
    fn beck_fiala_on_replicated_c4() {
        let h = c4_times(4);
        let s = beck_fiala_split(&h).unwrap();
        let (a, b) = s.halves(&h);
        assert_eq!(s.left.len() + s.right.len(), h.n_edges());
        assert!(a.min_degree() >= 2 && b.min_degree() >= 2);
    }

    #[test]
    fn beck_fiala_requires_regularity() {
        let h = Hypergraph::new(2, vec![vec![0, 1], vec![0]]).unwrap();
        assert!(matches!(
            beck_fiala_split(&h),
            Err(Error::NotRegular { .. })
        ));
    }

    #[test]
    fn chernoff_vacuous_and_deterministic() {
        let h = Hypergraph::new(3, vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        let a = chernoff_split(&h, 5, None).unwrap();
        assert_eq!(a, chernoff_split(&h, 5, None).unwrap());
        assert_eq!(a.left.len() + a.right.len(), 3);
    }

    #[test]
    fn polylog_rounds() {
        assert_eq!(SplitPlan::polylog_rounds(3, 600), 8);
        assert_eq!(SplitPlan::polylog_rounds(1, 1), 0);
        assert_eq!(SplitPlan::polylog_rounds(2, 8), 3);
    }

    #[test]
    fn small_degree_goes_straight_to_leaf() {
        let h = gen_fano();
        let plan = SplitPlan::new(SplitStrategy::BeckFiala, StopRule::RangeR4R);
        let out = recursive_decompose_report(&h, &plan, &LllConfig::new(0, 0)).unwrap();
        assert_eq!(out.splits, 0);
        assert_eq!(out.decomposition.k, 1);
    }

    #[test]
    fn recursion_on_replicated_fano() {
        let h = replicate(&gen_fano(), 40).unwrap();
        let plan = SplitPlan::new(SplitStrategy::BeckFiala, StopRule::RangeR4R);
        let out = recursive_decompose_report(&h, &plan, &LllConfig::new(0, 3)).unwrap();
        assert!(out.leaves.len() >= 120 / 18);
        assert!(verify_cover_decomposition(&h, &out.decomposition));
    }

    #[test]
    fn sparse_on_triangle() {
        let h = Hypergraph::new(3, vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        let plan = SplitPlan::new(SplitStrategy::BeckFiala, StopRule::RangeR4R);
        let d = sparse_decompose(&h, 1, 2, &plan, &LllConfig::new(0, 0)).unwrap();
        assert!(d.k >= 1);
        assert!(verify_cover_decomposition(&h, &d));
    }
}
