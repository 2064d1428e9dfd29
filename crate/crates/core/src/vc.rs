//! VC-dimension, cross-free and laminar families, and exact decomposition and
//! colouring for them.

use crate::error::{Error, Result};
use crate::hypergraph::{
    dual, verify_cover_decomposition, verify_polychromatic, CoverDecomposition, Hypergraph,
    VertexColouring,
};

/// Default largest set size the shattering search examines.
pub const DEFAULT_VC_CAP: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VcReport {
    pub vc_dim: usize,
    pub witness: Vec<usize>,
    pub dual_vc_dim: usize,
    pub dual_witness: Vec<usize>,
}

/// VC-dimension of `h` and of its dual. Sets up to size `cap` are examined;
/// if one of size `cap` is shattered the dimension is not certified and
/// `VcCapExceeded` is returned.
pub fn vc_dimension(h: &Hypergraph, cap: usize) -> Result<VcReport> {
    let (vc_dim, witness) = primal_vc(h, cap)?;
    let (dual_vc_dim, dual_witness) = primal_vc(&dual(h), cap)?;
    Ok(VcReport {
        vc_dim,
        witness,
        dual_vc_dim,
        dual_witness,
    })
}

/// Largest shattered set of `h`, searched level by level. Shattering is
/// inherited by subsets, so level `s + 1` only extends shattered sets of
/// level `s`.
pub fn primal_vc(h: &Hypergraph, cap: usize) -> Result<(usize, Vec<usize>)> {
    if cap > 16 {
        return Err(Error::InvalidParameter(
            "VC cap above 16 is not supported".into(),
        ));
    }
    if h.n_edges() == 0 {
        return Ok((0, Vec::new()));
    }
    let member: Vec<Vec<bool>> = h
        .edges()
        .iter()
        .map(|e| {
            let mut row = vec![false; h.n_vertices()];
            e.iter().for_each(|&v| row[v] = true);
            row
        })
        .collect();
    let shattered = |set: &[usize]| {
        let mut seen = vec![false; 1 << set.len()];
        let mut count = 0;
        for row in &member {
            let t = set
                .iter()
                .enumerate()
                .fold(0usize, |acc, (i, &v)| acc | (usize::from(row[v]) << i));
            if !seen[t] {
                seen[t] = true;
                count += 1;
                if count == seen.len() {
                    return true;
                }
            }
        }
        false
    };
    let mut level: Vec<Vec<usize>> = vec![Vec::new()];
    let mut best = Vec::new();
    for size in 1..=cap {
        let mut next = Vec::new();
        for set in &level {
            let start = set.last().map_or(0, |&v| v + 1);
            for v in start..h.n_vertices() {
                let mut cand = set.clone();
                cand.push(v);
                if shattered(&cand) {
                    next.push(cand);
                }
            }
        }
        if next.is_empty() {
            return Ok((size - 1, best));
        }
        best = next[0].clone();
        level = next;
    }
    Err(Error::VcCapExceeded { lower_bound: cap })
}

fn regions(s: &[usize], t: &[usize], n: usize) -> [usize; 4] {
    let inter = s.iter().filter(|v| t.binary_search(v).is_ok()).count();
    [
        inter,
        s.len() - inter,
        t.len() - inter,
        n + inter - s.len() - t.len(),
    ]
}

pub fn is_cross_free(h: &Hypergraph) -> bool {
    all_pairs(h, |r| r.contains(&0))
}

pub fn is_laminar(h: &Hypergraph) -> bool {
    all_pairs(h, |r| r[..3].contains(&0))
}

fn all_pairs(h: &Hypergraph, ok: impl Fn(&[usize; 4]) -> bool) -> bool {
    let e = h.edges();
    (0..e.len()).all(|i| (i + 1..e.len()).all(|j| ok(&regions(&e[i], &e[j], h.n_vertices()))))
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.len() <= b.len() && a.iter().all(|v| b.binary_search(v).is_ok())
}

/// Ids of the inclusion-minimal edges, one (the lowest id) per distinct set.
pub fn minimal_edge_ids(h: &Hypergraph) -> Vec<usize> {
    let e = h.edges();
    (0..e.len())
        .filter(|&i| {
            (0..e.len()).all(|j| j == i || !is_subset(&e[j], &e[i]) || (e[j] == e[i] && j > i))
        })
        .collect()
}

/// The inclusion-minimal edges, one representative per distinct set.
pub fn minimal_clutter(h: &Hypergraph) -> Hypergraph {
    h.restrict(&minimal_edge_ids(h))
}

fn require_min_degree(h: &Hypergraph) -> Result<usize> {
    match h.isolated_vertex() {
        Some(v) => Err(Error::IsolatedVertex(v)),
        None => Ok(h.min_degree()),
    }
}

/// Partitions a laminar family into exactly δ covers by peeling the
/// inclusion-maximal edges. Edges left after δ rounds join the last part.
pub fn laminar_decompose(h: &Hypergraph) -> Result<CoverDecomposition> {
    if !is_laminar(h) {
        return Err(Error::Precondition("hypergraph is not laminar".into()));
    }
    let delta = require_min_degree(h)?;
    let e = h.edges();
    let mut part_of = vec![usize::MAX; e.len()];
    let mut alive: Vec<usize> = (0..e.len()).collect();
    for round in 0..delta {
        let maximal: Vec<usize> = alive
            .iter()
            .copied()
            .filter(|&i| {
                alive
                    .iter()
                    .all(|&j| j == i || !is_subset(&e[i], &e[j]) || (e[i] == e[j] && j > i))
            })
            .collect();
        for &i in &maximal {
            part_of[i] = round;
        }
        alive.retain(|i| part_of[*i] == usize::MAX);
    }
    for i in alive {
        part_of[i] = delta - 1;
    }
    let d = CoverDecomposition::new(part_of, delta);
    if !verify_cover_decomposition(h, &d) {
        return Err(Error::GuaranteeViolated(
            "peeled layers of a laminar family are not covers".into(),
        ));
    }
    Ok(d)
}

/// Partitions a cross-free family into at least `⌊(δ+1)/2⌋` covers: pairs
/// whose union is the ground set first, then the laminar remainder. Laminar
/// input goes straight to [`laminar_decompose`] and gets δ covers.
pub fn crossfree_decompose(h: &Hypergraph) -> Result<CoverDecomposition> {
    if !is_cross_free(h) {
        return Err(Error::Precondition("hypergraph is not cross-free".into()));
    }
    let delta = require_min_degree(h)?;
    if is_laminar(h) {
        return laminar_decompose(h);
    }
    let n = h.n_vertices();
    let e = h.edges();
    let mut alive: Vec<usize> = (0..e.len()).collect();
    let mut parts: Vec<Vec<usize>> = Vec::new();
    while let Some((a, b)) = first_spanning_pair(h, &alive, n) {
        parts.push(vec![alive[a], alive[b]]);
        alive.remove(b);
        alive.remove(a);
    }
    let rest = h.restrict(&alive);
    if rest.min_degree() >= 1 {
        if !is_laminar(&rest) {
            return Err(Error::Internal(
                "cross-free remainder without spanning pairs is not laminar".into(),
            ));
        }
        let sub = laminar_decompose(&rest)?;
        for layer in sub.parts() {
            parts.push(layer.into_iter().map(|i| alive[i]).collect());
        }
    } else if let Some(first) = parts.first_mut() {
        first.extend(alive);
    }
    let d = CoverDecomposition::from_parts(e.len(), &parts)?;
    if d.k < delta.div_ceil(2) || !verify_cover_decomposition(h, &d) {
        return Err(Error::GuaranteeViolated(format!(
            "{} parts for δ = {delta}, need {} verified covers",
            d.k,
            delta.div_ceil(2)
        )));
    }
    Ok(d)
}

/// Lexicographically first pair of positions in `alive` whose edges cover V.
fn first_spanning_pair(h: &Hypergraph, alive: &[usize], n: usize) -> Option<(usize, usize)> {
    let e = h.edges();
    (0..alive.len()).find_map(|a| {
        (a + 1..alive.len())
            .find(|&b| regions(&e[alive[a]], &e[alive[b]], n)[3] == 0)
            .map(|b| (a, b))
    })
}

/// Polychromatic `k`-colouring of a cross-free family whose edges all have at
/// least `2k-1` vertices.
pub fn crossfree_polychromatic(h: &Hypergraph, k: usize) -> Result<VertexColouring> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    if !is_cross_free(h) {
        return Err(Error::Precondition("hypergraph is not cross-free".into()));
    }
    if h.n_edges() > 0 && h.min_edge_size() < 2 * k - 1 {
        return Err(Error::Precondition(format!(
            "an edge has {} vertices, fewer than 2k-1 = {}",
            h.min_edge_size(),
            2 * k - 1
        )));
    }
    let n = h.n_vertices();
    let clutter = minimal_clutter(h);
    let c = clutter.edges();
    let pairs = || (0..c.len()).flat_map(|i| (i + 1..c.len()).map(move |j| (i, j)));
    let disjoint = pairs().all(|(i, j)| regions(&c[i], &c[j], n)[0] == 0);
    let mut colour = vec![0usize; n];
    if k == 1 {
        // Every vertex colour 0.
    } else if disjoint {
        for edge in c {
            for (i, &v) in edge.iter().take(k).enumerate() {
                colour[v] = i;
            }
        }
    } else if pairs().all(|(i, j)| regions(&c[i], &c[j], n)[3] == 0) {
        // Edges are complements of disjoint sets S_i; `block[v]` names the S_i
        // containing v.
        let mut block = vec![usize::MAX; n];
        for (i, edge) in c.iter().enumerate() {
            let mut inside = vec![false; n];
            edge.iter().for_each(|&v| inside[v] = true);
            for v in (0..n).filter(|&v| !inside[v]) {
                block[v] = i;
            }
        }
        let mut done = vec![false; n];
        for j in 0..k - 1 {
            let v = (0..n)
                .find(|&v| !done[v])
                .ok_or_else(|| Error::Internal(format!("no uncoloured vertex in round {j}")))?;
            done[v] = true;
            colour[v] = j;
            let w = (0..n)
                .find(|&w| !done[w] && (block[w] == usize::MAX || block[w] != block[v]))
                .ok_or_else(|| Error::Internal(format!("no partner vertex in round {j}")))?;
            done[w] = true;
            colour[w] = j;
        }
        for v in (0..n).filter(|&v| !done[v]) {
            colour[v] = k - 1;
        }
    } else {
        return Err(Error::Internal(
            "cross-free clutter is neither pairwise disjoint nor pairwise spanning".into(),
        ));
    }
    let out = VertexColouring::new(colour, k);
    if !verify_polychromatic(h, &out) {
        return Err(Error::GuaranteeViolated(
            "cross-free colouring is not polychromatic".into(),
        ));
    }
    Ok(out)
}
