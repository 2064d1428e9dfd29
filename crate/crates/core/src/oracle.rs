//! Exhaustive oracles for p, p′ and minimum set-cover size on small instances.
//!
//! Both decomposition oracles search downward from the trivial upper bound
//! (r for p, δ for p′) and return the first feasible k. Feasibility is a
//! depth-first assignment with label symmetry breaking (an item may only open
//! the next unused label) and a counting prune.

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

/// Largest edge count `oracle_pprime` accepts.
pub const PPRIME_EDGE_CAP: usize = 20;
/// Largest vertex count `oracle_p` accepts.
pub const P_VERTEX_CAP: usize = 20;
/// Largest edge count the exact set-cover search accepts.
pub const SET_COVER_EDGE_CAP: usize = 64;
/// Both oracles pack the other side of the incidence matrix into a `u128`.
pub const BITMASK_CAP: usize = 128;

fn check_cap(what: &'static str, size: usize, cap: usize) -> Result<()> {
    if size > cap {
        Err(Error::SearchCapExceeded { what, size, cap })
    } else {
        Ok(())
    }
}

/// Exact cover-decomposition number p′(h). Zero when some vertex is isolated.
pub fn oracle_pprime(h: &Hypergraph) -> Result<usize> {
    check_cap("edge set", h.n_edges(), PPRIME_EDGE_CAP)?;
    check_cap("vertex set", h.n_vertices(), BITMASK_CAP)?;
    let delta = h.min_degree();
    if h.n_vertices() == 0 {
        // Every family, including the empty one, covers the empty ground set.
        return Ok(h.n_edges());
    }
    if delta == 0 {
        return Ok(0);
    }
    let masks: Vec<u128> = h.edges().iter().map(|e| mask(e)).collect();
    let full = full_mask(h.n_vertices());
    for k in (2..=delta).rev() {
        if CoverSearch::new(&masks, full, h.n_vertices(), k).run() {
            return Ok(k);
        }
    }
    Ok(1)
}

/// Exact polychromatic number p(h). Zero when some edge is empty.
pub fn oracle_p(h: &Hypergraph) -> Result<usize> {
    check_cap("vertex set", h.n_vertices(), P_VERTEX_CAP)?;
    check_cap("edge set", h.n_edges(), BITMASK_CAP)?;
    if h.n_edges() == 0 {
        // Any colouring is polychromatic; every vertex may get its own colour.
        return Ok(h.n_vertices());
    }
    let r = h.min_edge_size();
    if r == 0 {
        return Ok(0);
    }
    let inc = h.incidence();
    for k in (2..=r).rev() {
        if ColourSearch::new(h, &inc, k).run() {
            return Ok(k);
        }
    }
    Ok(1)
}

fn mask(items: &[usize]) -> u128 {
    items.iter().fold(0u128, |m, &v| m | (1u128 << v))
}

fn full_mask(n: usize) -> u128 {
    if n == 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

struct CoverSearch<'a> {
    masks: &'a [u128],
    full: u128,
    n: usize,
    k: usize,
    covered: Vec<u128>,
    /// For each vertex, the number of not-yet-assigned edges containing it.
    remaining: Vec<usize>,
}

impl<'a> CoverSearch<'a> {
    fn new(masks: &'a [u128], full: u128, n: usize, k: usize) -> Self {
        let mut remaining = vec![0; n];
        for &m in masks {
            for (v, r) in remaining.iter_mut().enumerate() {
                if m >> v & 1 == 1 {
                    *r += 1;
                }
            }
        }
        CoverSearch {
            masks,
            full,
            n,
            k,
            covered: vec![0; k],
            remaining,
        }
    }

    fn run(&mut self) -> bool {
        self.assign(0, 0)
    }

    fn feasible(&self) -> bool {
        (0..self.n).all(|v| {
            let missing = self.covered.iter().filter(|&&c| c >> v & 1 == 0).count();
            missing <= self.remaining[v]
        })
    }

    fn assign(&mut self, edge: usize, used: usize) -> bool {
        if edge == self.masks.len() {
            return self.covered.iter().all(|&c| c == self.full);
        }
        let m = self.masks[edge];
        for v in 0..self.n {
            if m >> v & 1 == 1 {
                self.remaining[v] -= 1;
            }
        }
        let mut found = false;
        for part in 0..self.k.min(used + 1) {
            let before = self.covered[part];
            self.covered[part] |= m;
            if self.feasible() && self.assign(edge + 1, used.max(part + 1)) {
                found = true;
            }
            self.covered[part] = before;
            if found {
                break;
            }
        }
        for v in 0..self.n {
            if m >> v & 1 == 1 {
                self.remaining[v] += 1;
            }
        }
        found
    }
}

struct ColourSearch<'a> {
    h: &'a Hypergraph,
    inc: &'a [Vec<usize>],
    k: usize,
    /// Colours present in each edge so far, as a bitmask over `0..k`.
    seen: Vec<u64>,
    uncoloured: Vec<usize>,
}

impl<'a> ColourSearch<'a> {
    fn new(h: &'a Hypergraph, inc: &'a [Vec<usize>], k: usize) -> Self {
        ColourSearch {
            h,
            inc,
            k,
            seen: vec![0; h.n_edges()],
            uncoloured: h.edges().iter().map(Vec::len).collect(),
        }
    }

    fn run(&mut self) -> bool {
        self.k <= 64 && self.colour(0, 0)
    }

    fn edge_ok(&self, e: usize) -> bool {
        let missing = self.k - self.seen[e].count_ones() as usize;
        missing <= self.uncoloured[e]
    }

    fn colour(&mut self, v: usize, used: usize) -> bool {
        if v == self.h.n_vertices() {
            return true;
        }
        for c in 0..self.k.min(used + 1) {
            let saved: Vec<u64> = self.inc[v].iter().map(|&e| self.seen[e]).collect();
            for &e in &self.inc[v] {
                self.seen[e] |= 1 << c;
                self.uncoloured[e] -= 1;
            }
            let ok =
                self.inc[v].iter().all(|&e| self.edge_ok(e)) && self.colour(v + 1, used.max(c + 1));
            for (&e, s) in self.inc[v].iter().zip(saved) {
                self.seen[e] = s;
                self.uncoloured[e] += 1;
            }
            if ok {
                return true;
            }
        }
        false
    }
}

/// Minimum number of edges whose union is the vertex set.
///
/// With `exact` the true optimum is found by depth-first branching on the
/// uncovered vertex of fewest candidate edges, bounded by the greedy value.
/// Without it the greedy cover size, an upper bound on the optimum, is
/// returned.
pub fn min_set_cover_size(h: &Hypergraph, exact: bool) -> Result<usize> {
    if let Some(v) = h.isolated_vertex() {
        return Err(Error::NoCover { vertex: v });
    }
    let greedy = greedy_cover(h);
    if !exact {
        return Ok(greedy.len());
    }
    check_cap("edge set", h.n_edges(), SET_COVER_EDGE_CAP)?;
    let inc = h.incidence();
    let mut best = greedy.len();
    let mut covered = vec![0usize; h.n_vertices()];
    exact_cover_search(h, &inc, &mut covered, 0, &mut best);
    Ok(best)
}

fn greedy_cover(h: &Hypergraph) -> Vec<usize> {
    let mut covered = vec![false; h.n_vertices()];
    let mut left = h.n_vertices();
    let mut chosen = Vec::new();
    while left > 0 {
        let (best, gain) = h
            .edges()
            .iter()
            .enumerate()
            .map(|(id, e)| (id, e.iter().filter(|&&v| !covered[v]).count()))
            .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
            .expect("a vertex is uncovered, so some edge exists");
        debug_assert!(gain > 0);
        for &v in h.edge(best) {
            if !covered[v] {
                covered[v] = true;
                left -= 1;
            }
        }
        chosen.push(best);
    }
    chosen
}

fn exact_cover_search(
    h: &Hypergraph,
    inc: &[Vec<usize>],
    covered: &mut [usize],
    depth: usize,
    best: &mut usize,
) {
    let uncovered: Vec<usize> = (0..covered.len()).filter(|&v| covered[v] == 0).collect();
    if uncovered.is_empty() {
        *best = (*best).min(depth);
        return;
    }
    // Counting bound: each further edge covers at most R new vertices.
    let r = h.max_edge_size().max(1);
    if depth + uncovered.len().div_ceil(r) >= *best {
        return;
    }
    let pivot = *uncovered
        .iter()
        .min_by_key(|&&v| inc[v].len())
        .expect("nonempty");
    for &e in &inc[pivot] {
        for &v in h.edge(e) {
            covered[v] += 1;
        }
        exact_cover_search(h, inc, covered, depth + 1, best);
        for &v in h.edge(e) {
            covered[v] -= 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Hypergraph {
        Hypergraph::new(3, vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap()
    }

    #[test]
    fn small_values() {
        assert_eq!(oracle_pprime(&triangle()).unwrap(), 1);
        assert_eq!(oracle_p(&triangle()).unwrap(), 1);
        let single = Hypergraph::new(3, vec![vec![0, 1, 2]]).unwrap();
        assert_eq!(oracle_p(&single).unwrap(), 3);
        let laminar = Hypergraph::new(2, vec![vec![0], vec![1], vec![0, 1], vec![0, 1]]).unwrap();
        assert_eq!(oracle_pprime(&laminar).unwrap(), 3);
    }

    #[test]
    fn degenerate_conventions() {
        let iso = Hypergraph::new(2, vec![vec![0], vec![0]]).unwrap();
        assert_eq!(oracle_pprime(&iso).unwrap(), 0);
        let empty_edge = Hypergraph::new(2, vec![vec![0, 1], vec![]]).unwrap();
        assert_eq!(oracle_p(&empty_edge).unwrap(), 0);
    }

    #[test]
    fn caps_are_enforced() {
        let big = Hypergraph::new(1, vec![vec![0]; PPRIME_EDGE_CAP + 1]).unwrap();
        assert!(matches!(
            oracle_pprime(&big),
            Err(Error::SearchCapExceeded { .. })
        ));
        let wide = Hypergraph::new(P_VERTEX_CAP + 1, vec![]).unwrap();
        assert!(matches!(
            oracle_p(&wide),
            Err(Error::SearchCapExceeded { .. })
        ));
    }

    #[test]
    fn set_cover() {
        assert_eq!(min_set_cover_size(&triangle(), true).unwrap(), 2);
        assert_eq!(min_set_cover_size(&triangle(), false).unwrap(), 2);
        let iso = Hypergraph::new(3, vec![vec![0, 1]]).unwrap();
        assert_eq!(
            min_set_cover_size(&iso, true),
            Err(Error::NoCover { vertex: 2 })
        );
    }
}
