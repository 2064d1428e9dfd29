//! Instance builders shared by the integration tests.

#![allow(dead_code)]

use hypercover::sensor::SensorInstance;
use hypercover::treepaths::TreePathInstance;
use hypercover::Hypergraph;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `delta` random partitions of `0..n` into blocks of exactly `r` vertices;
/// each block is an edge. `r` must divide `n`. For `r = 2` this is a union of
/// random perfect matchings.
pub fn regular_blocks(n: usize, r: usize, delta: usize, rng: &mut ChaCha8Rng) -> Hypergraph {
    assert!(n.is_multiple_of(r));
    let mut edges = Vec::new();
    let mut order: Vec<usize> = (0..n).collect();
    for _ in 0..delta {
        order.shuffle(rng);
        for block in order.chunks(r) {
            let mut e = block.to_vec();
            e.sort_unstable();
            edges.push(e);
        }
    }
    Hypergraph::new(n, edges).unwrap()
}

/// Random attachment tree on `n` vertices: `parent[i] < i`.
pub fn random_parents(n: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    (0..n)
        .map(|i| if i == 0 { 0 } else { rng.gen_range(0..i) })
        .collect()
}

/// Tree edge ids on the path from `a` to `b`; tree edge `i - 1` joins `i` to
/// its parent.
pub fn path_edge_ids(parent: &[usize], a: usize, b: usize) -> Vec<usize> {
    let depth = |mut v: usize| {
        let mut d = 0;
        while v != 0 {
            v = parent[v];
            d += 1;
        }
        d
    };
    let (mut a, mut b) = (a, b);
    let (mut da, mut db) = (depth(a), depth(b));
    let mut out = Vec::new();
    while da > db {
        out.push(a - 1);
        a = parent[a];
        da -= 1;
    }
    while db > da {
        out.push(b - 1);
        b = parent[b];
        db -= 1;
    }
    while a != b {
        out.push(a - 1);
        out.push(b - 1);
        a = parent[a];
        b = parent[b];
    }
    out
}

/// Random tree with paths whose minimum tree-edge load is exactly `target`.
/// Paths are added through deficient edges, then pruned to a minimal family,
/// so every surviving path crosses an edge of load exactly `target`.
pub fn tree_paths_with_degree(n: usize, target: usize, rng: &mut ChaCha8Rng) -> TreePathInstance {
    assert!(n >= 2 && target >= 1);
    let parent = random_parents(n, rng);
    let tree_edges: Vec<(usize, usize)> = (1..n).map(|i| (parent[i], i)).collect();
    let in_subtree = |root: usize, v: usize| {
        let mut v = v;
        loop {
            if v == root {
                return true;
            }
            if v == 0 {
                return false;
            }
            v = parent[v];
        }
    };
    let mut load = vec![0usize; n - 1];
    let mut paths: Vec<((usize, usize), Vec<usize>)> = Vec::new();
    while let Some(e) = (0..n - 1).find(|&e| load[e] < target) {
        let child = e + 1;
        let below: Vec<usize> = (0..n).filter(|&v| in_subtree(child, v)).collect();
        let above: Vec<usize> = (0..n).filter(|&v| !in_subtree(child, v)).collect();
        let a = *below.choose(rng).unwrap();
        let b = *above.choose(rng).unwrap();
        let ids = path_edge_ids(&parent, a, b);
        for &id in &ids {
            load[id] += 1;
        }
        paths.push(((a, b), ids));
    }
    paths.shuffle(rng);
    let mut keep = vec![true; paths.len()];
    for (i, (_, ids)) in paths.iter().enumerate() {
        if ids.iter().all(|&id| load[id] > target) {
            keep[i] = false;
            for &id in ids {
                load[id] -= 1;
            }
        }
    }
    let endpoints: Vec<(usize, usize)> = paths
        .iter()
        .zip(&keep)
        .filter(|(_, &k)| k)
        .map(|(p, _)| p.0)
        .collect();
    TreePathInstance::new(n, tree_edges, &endpoints).unwrap()
}

/// Random laminar family on `0..n`: the nodes of a random hierarchical
/// partition, each with multiplicity 0 to 2; the ground set appears at least
/// once.
pub fn random_laminar(n: usize, rng: &mut ChaCha8Rng) -> Hypergraph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = Vec::new();
    let mut stack = vec![(order, true)];
    while let Some((set, is_root)) = stack.pop() {
        let copies = if is_root {
            rng.gen_range(1..=2)
        } else {
            rng.gen_range(0..=2)
        };
        let mut sorted = set.clone();
        sorted.sort_unstable();
        for _ in 0..copies {
            edges.push(sorted.clone());
        }
        if set.len() > 1 {
            let parts = rng.gen_range(2..=set.len().min(3));
            let mut cuts: Vec<usize> = (1..set.len()).collect();
            cuts.shuffle(rng);
            let mut cuts: Vec<usize> = cuts.into_iter().take(parts - 1).collect();
            cuts.sort_unstable();
            let mut prev = 0;
            for c in cuts.into_iter().chain([set.len()]) {
                stack.push((set[prev..c].to_vec(), false));
                prev = c;
            }
        }
    }
    Hypergraph::new(n, edges).unwrap()
}

/// Hypergraph whose incidences split into a part with at most `beta` per edge
/// and a part with at most `alpha` per vertex, so every `V'`, `E'` has at most
/// `alpha·|V'| + beta·|E'|` incidences. The first part is `delta_b` random
/// partitions into blocks of at most `beta` vertices; then every vertex joins
/// `alpha` further edges.
pub fn sparse_instance(
    n: usize,
    alpha: usize,
    beta: usize,
    delta_b: usize,
    rng: &mut ChaCha8Rng,
) -> Hypergraph {
    let mut edges: Vec<Vec<usize>> = Vec::new();
    let mut order: Vec<usize> = (0..n).collect();
    for _ in 0..delta_b {
        order.shuffle(rng);
        let mut i = 0;
        while i < n {
            let size = rng.gen_range(1..=beta).min(n - i);
            edges.push(order[i..i + size].to_vec());
            i += size;
        }
    }
    for v in 0..n {
        let mut candidates: Vec<usize> = (0..edges.len())
            .filter(|&e| !edges[e].contains(&v))
            .collect();
        candidates.shuffle(rng);
        for &e in candidates.iter().take(alpha) {
            edges[e].push(v);
        }
    }
    for e in &mut edges {
        e.sort_unstable();
    }
    Hypergraph::new(n, edges).unwrap()
}

/// Random multigraph on at most `max_n` vertices with durations in
/// `1..=max_d` and no isolated vertex.
pub fn random_sensor(max_n: usize, max_d: u64, rng: &mut ChaCha8Rng) -> SensorInstance {
    let n = rng.gen_range(2..=max_n);
    let mut edges = Vec::new();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    // A random spanning tree removes isolated vertices.
    for i in 1..n {
        let j = order[rng.gen_range(0..i)];
        edges.push((j, order[i], rng.gen_range(1..=max_d)));
    }
    let extra = rng.gen_range(0..=2 * n);
    for _ in 0..extra {
        let u = rng.gen_range(0..n);
        let mut v = rng.gen_range(0..n - 1);
        if v >= u {
            v += 1;
        }
        edges.push((u, v, rng.gen_range(1..=max_d)));
    }
    SensorInstance::new(n, edges).unwrap()
}

/// Uniform random hypergraph with `n` vertices and `m` edges, each incidence
/// present with probability one half.
pub fn random_small(n: usize, m: usize, rng: &mut ChaCha8Rng) -> Hypergraph {
    let edges = (0..m)
        .map(|_| (0..n).filter(|_| rng.gen_bool(0.5)).collect())
        .collect();
    Hypergraph::new(n, edges).unwrap()
}

/// Every multiset of `m` subsets of `0..n`, as hypergraphs.
pub fn all_hypergraphs(n: usize, m: usize) -> Vec<Hypergraph> {
    let subsets: Vec<Vec<usize>> = (0..1usize << n)
        .map(|mask| (0..n).filter(|&v| mask >> v & 1 == 1).collect())
        .collect();
    let mut out = Vec::new();
    let mut pick = vec![0usize; m];
    loop {
        let edges = pick.iter().map(|&i| subsets[i].clone()).collect();
        out.push(Hypergraph::new(n, edges).unwrap());
        // Next non-decreasing index sequence.
        let Some(i) = (0..m).rev().find(|&i| pick[i] + 1 < subsets.len()) else {
            return out;
        };
        pick[i] += 1;
        for j in i + 1..m {
            pick[j] = pick[i];
        }
    }
}
