//! Hypergraphs whose ground set is the edge set of a tree and whose hyperedges
//! are tree paths.
//!
//! Cover decomposition peels one cover per LP round: an iterated relaxation
//! makes `x` a 3-fold cover and `1 - x` a `(δ-3)`-fold cover, up to an additive
//! loss of 2 on each side. Polychromatic colouring uses levels of the tree
//! rooted at vertex 0.

use crate::error::{Error, Result};
use crate::hypergraph::{data_lines, parse_numbers, CoverDecomposition, Hypergraph};
use crate::lp::{iterated_relax, Constraint, FractionalSupportRule, LinearProgram, Sense};
use crate::scalar::int;
use crate::Rational;
use std::collections::VecDeque;
use std::fmt::Write as _;

/// Tight covering/packing constraints in these LPs always have a member with
/// at most this many fractional variables.
pub const PATH_LP_FRACTIONAL_BOUND: usize = 3;
/// Target multiplicity of the `x = 1` side in each round.
pub const COVER_SIDE: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreePath {
    pub endpoints: (usize, usize),
    /// Tree-edge ids on the unique path, ascending.
    pub edges: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreePathInstance {
    n_vertices: usize,
    tree_edges: Vec<(usize, usize)>,
    paths: Vec<TreePath>,
    parent: Vec<Option<(usize, usize)>>,
    depth: Vec<usize>,
}

impl TreePathInstance {
    /// Validates that `tree_edges` span a tree on `0..n_vertices` and resolves
    /// each endpoint pair into its tree path.
    pub fn new(
        n_vertices: usize,
        tree_edges: Vec<(usize, usize)>,
        endpoints: &[(usize, usize)],
    ) -> Result<Self> {
        if n_vertices == 0 {
            return Err(Error::InvalidParameter(
                "a tree needs at least one vertex".into(),
            ));
        }
        if tree_edges.len() != n_vertices - 1 {
            return Err(Error::CountMismatch {
                expected: n_vertices - 1,
                found: tree_edges.len(),
            });
        }
        let mut adj = vec![Vec::new(); n_vertices];
        for (id, &(u, v)) in tree_edges.iter().enumerate() {
            if u >= n_vertices || v >= n_vertices {
                return Err(Error::VertexOutOfRange {
                    edge: id,
                    vertex: u.max(v),
                    n: n_vertices,
                });
            }
            if u == v {
                return Err(Error::InvalidParameter(format!("tree edge {id} is a loop")));
            }
            adj[u].push((v, id));
            adj[v].push((u, id));
        }
        let mut parent = vec![None; n_vertices];
        let mut depth = vec![usize::MAX; n_vertices];
        depth[0] = 0;
        let mut queue = VecDeque::from([0]);
        while let Some(u) = queue.pop_front() {
            for &(w, id) in &adj[u] {
                if depth[w] == usize::MAX {
                    depth[w] = depth[u] + 1;
                    parent[w] = Some((u, id));
                    queue.push_back(w);
                }
            }
        }
        if let Some(v) = depth.iter().position(|&d| d == usize::MAX) {
            return Err(Error::InvalidParameter(format!(
                "tree edges do not reach vertex {v}"
            )));
        }
        let mut inst = TreePathInstance {
            n_vertices,
            tree_edges,
            paths: Vec::with_capacity(endpoints.len()),
            parent,
            depth,
        };
        for &(a, b) in endpoints {
            if a >= n_vertices || b >= n_vertices {
                return Err(Error::VertexOutOfRange {
                    edge: inst.paths.len(),
                    vertex: a.max(b),
                    n: n_vertices,
                });
            }
            let mut edges = inst.path_edges(a, b);
            edges.sort_unstable();
            inst.paths.push(TreePath {
                endpoints: (a, b),
                edges,
            });
        }
        Ok(inst)
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn n_tree_edges(&self) -> usize {
        self.tree_edges.len()
    }

    pub fn tree_edges(&self) -> &[(usize, usize)] {
        &self.tree_edges
    }

    pub fn paths(&self) -> &[TreePath] {
        &self.paths
    }

    /// Depth of each vertex with the tree rooted at vertex 0.
    pub fn depths(&self) -> &[usize] {
        &self.depth
    }

    fn path_edges(&self, mut a: usize, mut b: usize) -> Vec<usize> {
        let mut out = Vec::new();
        while a != b {
            if self.depth[a] >= self.depth[b] {
                let (p, id) = self.parent[a].expect("non-root vertex has a parent");
                out.push(id);
                a = p;
            } else {
                let (p, id) = self.parent[b].expect("non-root vertex has a parent");
                out.push(id);
                b = p;
            }
        }
        out
    }

    /// Number of tree edges between `a` and `b`.
    pub fn distance(&self, a: usize, b: usize) -> usize {
        self.path_edges(a, b).len()
    }

    /// Keeps the listed paths, in order.
    pub fn with_paths(&self, ids: &[usize]) -> TreePathInstance {
        TreePathInstance {
            paths: ids.iter().map(|&i| self.paths[i].clone()).collect(),
            ..self.clone()
        }
    }

    /// The hypergraph on tree edges whose hyperedges are the paths.
    pub fn as_hypergraph(&self) -> Hypergraph {
        Hypergraph::new(
            self.tree_edges.len(),
            self.paths.iter().map(|p| p.edges.clone()).collect(),
        )
        .expect("paths use valid tree-edge ids")
    }

    /// The `.tp` text form: `n p`, the `n-1` tree edges, then path endpoints.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n_vertices, self.paths.len());
        for (u, v) in &self.tree_edges {
            let _ = writeln!(out, "{u} {v}");
        }
        for p in &self.paths {
            let _ = writeln!(out, "{} {}", p.endpoints.0, p.endpoints.1);
        }
        out
    }
}

/// Parses the `.tp` format: header `n p`, `n-1` lines `u v` (tree edge ids in
/// input order), then `p` lines `a b` of path endpoints.
pub fn parse_tree_paths(text: &str) -> Result<TreePathInstance> {
    let mut pairs = Vec::new();
    let mut header = None;
    for (line, content) in data_lines(text) {
        let nums = parse_numbers(line, content)?;
        let &[a, b] = nums.as_slice() else {
            return Err(Error::Parse {
                line,
                msg: "expected two integers".into(),
            });
        };
        if header.is_none() {
            header = Some((a, b));
        } else {
            pairs.push((a, b));
        }
    }
    let (n, p) = header.ok_or(Error::Parse {
        line: 0,
        msg: "missing `n p` header".into(),
    })?;
    if n == 0 || pairs.len() != n - 1 + p {
        return Err(Error::CountMismatch {
            expected: n.saturating_sub(1) + p,
            found: pairs.len(),
        });
    }
    let paths = pairs.split_off(n - 1);
    TreePathInstance::new(n, pairs, &paths)
}

/// For each tree edge, the number of paths through it.
pub fn path_degree_profile(inst: &TreePathInstance) -> Vec<usize> {
    let mut profile = vec![0; inst.n_tree_edges()];
    for p in &inst.paths {
        for &e in &p.edges {
            profile[e] += 1;
        }
    }
    profile
}

/// Minimum of the degree profile; zero for a tree without edges.
pub fn path_min_degree(inst: &TreePathInstance) -> usize {
    path_degree_profile(inst).into_iter().min().unwrap_or(0)
}

/// One LP round's outcome on a set of paths.
#[derive(Debug, Clone)]
pub struct PathSplit {
    /// Paths with `x = 1`; every tree edge lies on at least one.
    pub cover: Vec<usize>,
    /// Paths with `x = 0`.
    pub rest: Vec<usize>,
    pub iterations: usize,
}

/// Splits `ids` (indices into `inst.paths()`) so that the `x = 1` side is a
/// cover and the other side covers every edge at least `δ - 5` times, where
/// δ is the measured minimum degree of the given paths.
pub fn split_paths(inst: &TreePathInstance, ids: &[usize]) -> Result<PathSplit> {
    let sub = inst.with_paths(ids);
    let profile = path_degree_profile(&sub);
    let delta = profile.iter().copied().min().unwrap_or(0);
    if delta < 2 * COVER_SIDE {
        return Err(Error::Precondition(format!(
            "a split round needs min degree at least {}, found {delta}",
            2 * COVER_SIDE
        )));
    }
    let a = COVER_SIDE;
    let b = delta - COVER_SIDE;
    let mut constraints = Vec::with_capacity(2 * profile.len());
    for (e, &deg) in profile.iter().enumerate() {
        let support: Vec<(usize, Rational)> = sub
            .paths
            .iter()
            .enumerate()
            .filter(|(_, p)| p.edges.binary_search(&e).is_ok())
            .map(|(i, _)| (i, int(1)))
            .collect();
        constraints.push(Constraint::new(
            support.clone(),
            Sense::Ge,
            int(a as i64),
            format!("cover[e{e}]"),
        ));
        constraints.push(Constraint::new(
            support,
            Sense::Le,
            int((deg - b) as i64),
            format!("pack[e{e}]"),
        ));
    }
    let lp = LinearProgram::binary(ids.len(), constraints);
    let relaxed = iterated_relax(
        &lp,
        &FractionalSupportRule {
            max_fractional: PATH_LP_FRACTIONAL_BOUND,
        },
    )?;
    let mut cover = Vec::new();
    let mut rest = Vec::new();
    for (i, &x) in relaxed.assignment.iter().enumerate() {
        if x {
            cover.push(ids[i]);
        } else {
            rest.push(ids[i]);
        }
    }
    // Each side keeps all but at most 2 of its target multiplicity.
    let cover_deg = path_degree_profile(&inst.with_paths(&cover));
    let rest_deg = path_degree_profile(&inst.with_paths(&rest));
    if let Some(e) = (0..profile.len()).find(|&e| cover_deg[e] + 2 < a || rest_deg[e] + 2 < b) {
        return Err(Error::GuaranteeViolated(format!(
            "tree edge {e}: x-side {} (need {}), rest {} (need {})",
            cover_deg[e],
            a - 2,
            rest_deg[e],
            b - 2
        )));
    }
    Ok(PathSplit {
        cover,
        rest,
        iterations: relaxed.log.len(),
    })
}

/// Partitions the paths into exactly `1 + ⌊(δ-1)/5⌋` covers of the tree edges.
pub fn tree_cover_decompose(inst: &TreePathInstance) -> Result<CoverDecomposition> {
    let delta = path_min_degree(inst);
    if delta == 0 {
        return Err(Error::Precondition(
            "some tree edge lies on no path (δ = 0)".into(),
        ));
    }
    let rounds = (delta - 1) / 5;
    let mut parts = Vec::with_capacity(rounds + 1);
    let mut residual: Vec<usize> = (0..inst.paths.len()).collect();
    for _ in 0..rounds {
        let split = split_paths(inst, &residual)?;
        parts.push(split.cover);
        residual = split.rest;
    }
    parts.push(residual);
    let d = CoverDecomposition::from_parts(inst.paths.len(), &parts)?;
    if !crate::hypergraph::verify_cover_decomposition(&inst.as_hypergraph(), &d) {
        return Err(Error::GuaranteeViolated(
            "path decomposition failed verification".into(),
        ));
    }
    Ok(d)
}

/// Colours each tree edge by the depth of its upper endpoint modulo `k`, with
/// the tree rooted at vertex 0. Every path of at least `2k-1` edges then sees
/// `k` consecutive levels.
pub fn level_colouring(inst: &TreePathInstance, k: usize) -> Result<Vec<usize>> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let required = 2 * k - 1;
    if let Some((i, p)) = inst
        .paths
        .iter()
        .enumerate()
        .find(|(_, p)| p.edges.len() < required)
    {
        return Err(Error::ShortPath {
            path: i,
            len: p.edges.len(),
            required,
        });
    }
    Ok(inst
        .tree_edges
        .iter()
        .map(|&(u, v)| inst.depth[u].min(inst.depth[v]) % k)
        .collect())
}

/// True iff every path contains all colours `0..k`.
pub fn verify_tree_polychromatic(inst: &TreePathInstance, colouring: &[usize], k: usize) -> bool {
    if colouring.len() != inst.n_tree_edges() || colouring.iter().any(|&c| c >= k) {
        return false;
    }
    let mut seen = vec![false; k];
    inst.paths.iter().all(|p| {
        seen.iter_mut().for_each(|s| *s = false);
        for &e in &p.edges {
            seen[colouring[e]] = true;
        }
        seen.iter().all(|&s| s)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::gen_tary_counterexample;

    fn line(n: usize) -> Vec<(usize, usize)> {
        (1..n).map(|i| (i - 1, i)).collect()
    }

    #[test]
    fn rejects_non_trees() {
        assert!(TreePathInstance::new(3, vec![(0, 1)], &[]).is_err());
        assert!(TreePathInstance::new(4, vec![(0, 1), (1, 0), (2, 3)], &[]).is_err());
        assert!(TreePathInstance::new(2, vec![(0, 0)], &[]).is_err());
    }

    #[test]
    fn resolves_paths() {
        let inst =
            TreePathInstance::new(5, vec![(0, 1), (1, 2), (1, 3), (3, 4)], &[(2, 4)]).unwrap();
        assert_eq!(inst.paths()[0].edges, vec![1, 2, 3]);
        assert_eq!(inst.distance(0, 4), 3);
    }

    #[test]
    fn degree_profiles() {
        let star = gen_tary_counterexample(2).unwrap();
        assert_eq!(path_degree_profile(&star), vec![3; 4]);
        let single = TreePathInstance::new(2, vec![(0, 1)], &[(0, 1)]).unwrap();
        assert_eq!(path_degree_profile(&single), vec![1]);
        let empty = TreePathInstance::new(3, line(3), &[]).unwrap();
        assert_eq!(path_degree_profile(&empty), vec![0, 0]);
    }

    #[test]
    fn parse_round_trip() {
        let text = "# path on four vertices\n4 1\n0 1\n1 2\n2 3\n0 3\n";
        let inst = parse_tree_paths(text).unwrap();
        assert_eq!(inst.paths()[0].edges, vec![0, 1, 2]);
        assert_eq!(parse_tree_paths(&inst.to_text()).unwrap(), inst);
        assert!(parse_tree_paths("3 1\n0 1\n1 2\n").is_err());
    }

    #[test]
    fn level_colouring_examples() {
        let inst = TreePathInstance::new(4, line(4), &[(0, 3)]).unwrap();
        let c = level_colouring(&inst, 2).unwrap();
        assert_eq!(c, vec![0, 1, 0]);
        assert!(verify_tree_polychromatic(&inst, &c, 2));
        assert_eq!(level_colouring(&inst, 1).unwrap(), vec![0; 3]);
        assert!(matches!(
            level_colouring(&inst, 3),
            Err(Error::ShortPath {
                path: 0,
                len: 3,
                required: 5
            })
        ));
    }

    #[test]
    fn small_delta_gives_one_part() {
        let inst = TreePathInstance::new(3, line(3), &[(0, 2), (0, 2), (0, 1), (1, 2)]).unwrap();
        let d = tree_cover_decompose(&inst).unwrap();
        assert_eq!(d.k, 1);
        let uncovered = TreePathInstance::new(3, line(3), &[(0, 1)]).unwrap();
        assert!(tree_cover_decompose(&uncovered).is_err());
    }

    #[test]
    fn six_fold_line_splits_in_two() {
        let inst = TreePathInstance::new(4, line(4), &[(0, 3); 6]).unwrap();
        let d = tree_cover_decompose(&inst).unwrap();
        assert_eq!(d.k, 2);
    }
}
