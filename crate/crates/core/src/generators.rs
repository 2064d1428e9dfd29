//! Extremal constructions and seeded random instances.

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::treepaths::TreePathInstance;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Cap on n·m for `gen_random_hypergraph`.
pub const RANDOM_INCIDENCE_CAP: u64 = 100_000_000;
/// Rejection-sampling attempts allowed per path in `gen_random_tree_paths`.
pub const PATH_RETRY_CAP: usize = 10_000;
/// Cap on tree nodes plus hyperedges for `gen_tary_counterexample`.
pub const TARY_SIZE_CAP: u64 = 5_000_000;

pub(crate) fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Every instance family the crate can construct, with its parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenSpec {
    KneserDual {
        k: usize,
    },
    Fano,
    Ptt {
        k: usize,
    },
    Random {
        r: usize,
        delta: usize,
        seed: u64,
    },
    TaryCounterexample {
        k: usize,
    },
    ComplementSingletons {
        n: usize,
    },
    Replicate {
        base: Box<GenSpec>,
        mu: usize,
    },
    RandomTreePaths {
        n: usize,
        n_paths: usize,
        min_len: usize,
        seed: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Generated {
    Hypergraph(Hypergraph),
    TreePaths(TreePathInstance),
}

impl GenSpec {
    pub fn generate(&self) -> Result<Generated> {
        use Generated::Hypergraph as H;
        Ok(match self {
            GenSpec::KneserDual { k } => H(gen_kneser_dual(*k)?),
            GenSpec::Fano => H(gen_fano()),
            GenSpec::Ptt { k } => H(gen_ptt(*k)?),
            GenSpec::Random { r, delta, seed } => H(gen_random_hypergraph(*r, *delta, *seed)?),
            GenSpec::ComplementSingletons { n } => H(gen_complement_singletons(*n)?),
            GenSpec::TaryCounterexample { k } => Generated::TreePaths(gen_tary_counterexample(*k)?),
            GenSpec::RandomTreePaths {
                n,
                n_paths,
                min_len,
                seed,
            } => Generated::TreePaths(gen_random_tree_paths(*n, *n_paths, *min_len, *seed)?),
            GenSpec::Replicate { base, mu } => match base.generate()? {
                Generated::Hypergraph(h) => H(replicate(&h, *mu)?),
                Generated::TreePaths(_) => {
                    return Err(Error::InvalidParameter(
                        "replication applies to hypergraphs only".into(),
                    ))
                }
            },
        })
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// The dual of the complete k-uniform hypergraph on `2k-1` points: one edge
/// per point `i`, one vertex per k-subset `S`, with `S ∈ edge i` iff `i ∈ S`.
/// It is k-regular and has no cover split into two.
pub fn gen_kneser_dual(k: usize) -> Result<Hypergraph> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    if k > 12 {
        return Err(Error::SizeOverflow(format!(
            "C({}, {k}) vertices",
            2 * k - 1
        )));
    }
    let subsets = k_subsets(2 * k - 1, k);
    let mut edges = vec![Vec::new(); 2 * k - 1];
    for (vertex, s) in subsets.iter().enumerate() {
        for &i in s {
            edges[i].push(vertex);
        }
    }
    Hypergraph::new(subsets.len(), edges)
}

/// Every edge repeated `mu` times; copy `c` of edge `e` gets id `c·m + e`.
pub fn replicate(h: &Hypergraph, mu: usize) -> Result<Hypergraph> {
    if mu == 0 {
        return Err(Error::InvalidParameter("mu must be at least 1".into()));
    }
    let edges = (0..mu).flat_map(|_| h.edges().iter().cloned()).collect();
    Hypergraph::new(h.n_vertices(), edges)
}

/// The Fano plane: lines `{i+1, i+2, i+4} mod 7` from the difference set
/// {1, 2, 4}.
pub fn gen_fano() -> Hypergraph {
    let edges = (0..7)
        .map(|i| [1, 2, 4].iter().map(|d| (i + d) % 7).collect())
        .collect();
    Hypergraph::new(7, edges).expect("valid construction")
}

/// The tree construction with sibling and ancestor edges on the complete k-ary
/// tree with `k` levels.
///
/// Nodes are numbered breadth-first (root 0, children of `u` are
/// `k·u+1 ..= k·u+k`). Sibling edges of the internal nodes come first in node
/// order, then the ancestor edge of each leaf.
pub fn gen_ptt(k: usize) -> Result<Hypergraph> {
    if k < 2 {
        return Err(Error::InvalidParameter("k must be at least 2".into()));
    }
    let mut level_sizes = vec![1u64];
    for _ in 1..k {
        let next = level_sizes.last().unwrap().checked_mul(k as u64);
        match next {
            Some(s) if s <= 1 << 22 => level_sizes.push(s),
            _ => return Err(Error::SizeOverflow(format!("PTT_{k}"))),
        }
    }
    let total: u64 = level_sizes.iter().sum();
    let leaves = *level_sizes.last().unwrap() as usize;
    let internal = total as usize - leaves;
    let mut edges = Vec::with_capacity(total as usize);
    for u in 0..internal {
        edges.push((k * u + 1..=k * u + k).collect());
    }
    for leaf in internal..total as usize {
        let mut path = vec![leaf];
        let mut cur = leaf;
        while cur != 0 {
            cur = (cur - 1) / k;
            path.push(cur);
        }
        edges.push(path);
    }
    Hypergraph::new(total as usize, edges)
}

/// Random hypergraph with `n = R'^2 δ'` vertices and `m = R' δ'^2` edges; each
/// incidence is present independently with probability `1/(R' δ')`.
pub fn gen_random_hypergraph(
    r_target: usize,
    delta_target: usize,
    seed: u64,
) -> Result<Hypergraph> {
    if r_target < 2 || delta_target < 2 {
        return Err(Error::InvalidParameter(
            "R' and delta' must be at least 2".into(),
        ));
    }
    let (r, d) = (r_target as u64, delta_target as u64);
    let n = r.checked_mul(r).and_then(|x| x.checked_mul(d));
    let m = r.checked_mul(d).and_then(|x| x.checked_mul(d));
    let (n, m) = match (n, m) {
        (Some(n), Some(m)) if n.checked_mul(m).is_some_and(|p| p <= RANDOM_INCIDENCE_CAP) => {
            (n as usize, m as usize)
        }
        _ => return Err(Error::SizeOverflow("n·m exceeds 10^8".into())),
    };
    let denom = (r * d) as u32;
    let mut rng = rng_from_seed(seed);
    let edges = (0..m)
        .map(|_| (0..n).filter(|_| rng.gen_ratio(1, denom)).collect())
        .collect();
    Hypergraph::new(n, edges)
}

/// Complete t-ary tree of height `k-1` with `t = 2k^(k-1)`, whose hyperedges
/// are all leaf-to-leaf paths through the root. No k-colouring of the tree
/// edges is polychromatic on these `(2k-2)`-edge paths.
pub fn gen_tary_counterexample(k: usize) -> Result<TreePathInstance> {
    if k < 2 {
        return Err(Error::InvalidParameter("k must be at least 2".into()));
    }
    let overflow = || Error::SizeOverflow(format!("t-ary counterexample for k = {k}"));
    let t = (k as u64)
        .checked_pow(k as u32 - 1)
        .and_then(|p| p.checked_mul(2))
        .ok_or_else(overflow)?;
    let height = k as u32 - 1;
    let leaves = t.checked_pow(height).ok_or_else(overflow)?;
    let nodes = (0..=height)
        .try_fold(0u64, |acc, i| acc.checked_add(t.checked_pow(i)?))
        .ok_or_else(overflow)?;
    let (l, tt) = (leaves as u128, t as u128);
    let per_child = l / tt;
    let pairs = l * (l - 1) / 2 - tt * (per_child * per_child.saturating_sub(1) / 2);
    if nodes as u128 + pairs > TARY_SIZE_CAP as u128 {
        return Err(overflow());
    }
    let t = t as usize;
    // Breadth-first numbering: children of u are t·u+1 ..= t·u+t.
    let tree_edges: Vec<(usize, usize)> = (1..nodes as usize).map(|c| ((c - 1) / t, c)).collect();
    let first_leaf = nodes as usize - leaves as usize;
    let leaf_branch = |leaf: usize| {
        let mut cur = leaf;
        while (cur - 1) / t != 0 {
            cur = (cur - 1) / t;
        }
        cur
    };
    let mut endpoints = Vec::with_capacity(pairs as usize);
    for a in first_leaf..nodes as usize {
        for b in a + 1..nodes as usize {
            if leaf_branch(a) != leaf_branch(b) {
                endpoints.push((a, b));
            }
        }
    }
    TreePathInstance::new(nodes as usize, tree_edges, &endpoints)
}

/// `n` vertices with edge `i = V \ {i}`.
pub fn gen_complement_singletons(n: usize) -> Result<Hypergraph> {
    if n < 2 {
        return Err(Error::InvalidParameter("n must be at least 2".into()));
    }
    let edges = (0..n)
        .map(|i| (0..n).filter(|&v| v != i).collect())
        .collect();
    Hypergraph::new(n, edges)
}

/// Random attachment tree (vertex `i` joins a uniform `j < i`) with
/// `n_paths` random paths of at least `min_len` edges.
pub fn gen_random_tree_paths(
    n: usize,
    n_paths: usize,
    min_len: usize,
    seed: u64,
) -> Result<TreePathInstance> {
    if n < 2 {
        return Err(Error::InvalidParameter("n must be at least 2".into()));
    }
    if min_len > n - 1 {
        return Err(Error::InvalidParameter(format!(
            "min_len {min_len} exceeds n - 1 = {}",
            n - 1
        )));
    }
    let mut rng = rng_from_seed(seed);
    let tree_edges: Vec<(usize, usize)> = (1..n).map(|i| (rng.gen_range(0..i), i)).collect();
    let skeleton = TreePathInstance::new(n, tree_edges.clone(), &[])?;
    let mut endpoints = Vec::with_capacity(n_paths);
    for _ in 0..n_paths {
        let mut attempts = 0;
        loop {
            attempts += 1;
            if attempts > PATH_RETRY_CAP {
                return Err(Error::RejectionSampling(PATH_RETRY_CAP));
            }
            let a = rng.gen_range(0..n);
            let b = rng.gen_range(0..n);
            if a != b && skeleton.distance(a, b) >= min_len.max(1) {
                endpoints.push((a, b));
                break;
            }
        }
    }
    TreePathInstance::new(n, tree_edges, &endpoints)
}
