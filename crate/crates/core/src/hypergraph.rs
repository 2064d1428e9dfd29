//! Hypergraph data model: edge multisets over `0..n`, duality, shrinking,
//! and the two verification predicates every algorithm's output goes through.

use crate::error::{Error, Result};
use std::fmt::Write as _;

/// A finite hypergraph whose edges form an ordered multiset.
///
/// Each edge is stored sorted and duplicate-free. Repeated edges are distinct
/// edges, identified by their index. Empty and singleton edges are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    n_vertices: usize,
    edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    /// Builds a hypergraph, sorting each edge and rejecting out-of-range or
    /// repeated vertex ids.
    pub fn new(n_vertices: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        let mut checked = Vec::with_capacity(edges.len());
        for (id, mut edge) in edges.into_iter().enumerate() {
            edge.sort_unstable();
            for (pos, &v) in edge.iter().enumerate() {
                if v >= n_vertices {
                    return Err(Error::VertexOutOfRange {
                        edge: id,
                        vertex: v,
                        n: n_vertices,
                    });
                }
                if pos > 0 && edge[pos - 1] == v {
                    return Err(Error::DuplicateVertex {
                        edge: id,
                        vertex: v,
                    });
                }
            }
            checked.push(edge);
        }
        Ok(Hypergraph {
            n_vertices,
            edges: checked,
        })
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> &[usize] {
        &self.edges[id]
    }

    pub fn contains(&self, edge: usize, vertex: usize) -> bool {
        self.edges[edge].binary_search(&vertex).is_ok()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n_vertices];
        for edge in &self.edges {
            for &v in edge {
                deg[v] += 1;
            }
        }
        deg
    }

    /// Edge ids incident to each vertex, ascending.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.n_vertices];
        for (id, edge) in self.edges.iter().enumerate() {
            for &v in edge {
                inc[v].push(id);
            }
        }
        inc
    }

    /// Minimum degree δ. Zero for a hypergraph without vertices.
    pub fn min_degree(&self) -> usize {
        self.degrees().into_iter().min().unwrap_or(0)
    }

    /// Maximum degree Δ.
    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    /// Minimum edge size r. Zero for a hypergraph without edges.
    pub fn min_edge_size(&self) -> usize {
        self.edges.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// Maximum edge size R.
    pub fn max_edge_size(&self) -> usize {
        self.edges.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_regular(&self) -> bool {
        self.min_degree() == self.max_degree()
    }

    pub fn isolated_vertex(&self) -> Option<usize> {
        self.degrees().iter().position(|&d| d == 0)
    }

    /// The sub-hypergraph on the same vertex set keeping the listed edges, in
    /// the listed order.
    pub fn restrict(&self, edge_ids: &[usize]) -> Hypergraph {
        Hypergraph {
            n_vertices: self.n_vertices,
            edges: edge_ids.iter().map(|&e| self.edges[e].clone()).collect(),
        }
    }

    pub fn summary(&self) -> Summary {
        Summary {
            n: self.n_vertices,
            m: self.edges.len(),
            r: self.min_edge_size(),
            big_r: self.max_edge_size(),
            delta: self.min_degree(),
            big_delta: self.max_degree(),
        }
    }
}

/// Size and degree profile (n, m, r, R, δ, Δ).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Summary {
    pub n: usize,
    pub m: usize,
    pub r: usize,
    pub big_r: usize,
    pub delta: usize,
    pub big_delta: usize,
}

/// A partition of edge ids into `k` labelled parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverDecomposition {
    pub part_of: Vec<usize>,
    pub k: usize,
}

impl CoverDecomposition {
    pub fn new(part_of: Vec<usize>, k: usize) -> Self {
        CoverDecomposition { part_of, k }
    }

    pub fn single(m: usize) -> Self {
        CoverDecomposition {
            part_of: vec![0; m],
            k: 1,
        }
    }

    /// Builds a decomposition from explicit parts over `0..m`.
    pub fn from_parts(m: usize, parts: &[Vec<usize>]) -> Result<Self> {
        let mut part_of = vec![usize::MAX; m];
        for (label, part) in parts.iter().enumerate() {
            for &e in part {
                if e >= m || part_of[e] != usize::MAX {
                    return Err(Error::Internal(format!(
                        "edge {e} missing from range or listed twice"
                    )));
                }
                part_of[e] = label;
            }
        }
        if let Some(e) = part_of.iter().position(|&p| p == usize::MAX) {
            return Err(Error::Internal(format!("edge {e} assigned to no part")));
        }
        Ok(CoverDecomposition {
            part_of,
            k: parts.len(),
        })
    }

    pub fn parts(&self) -> Vec<Vec<usize>> {
        let mut parts = vec![Vec::new(); self.k];
        for (e, &p) in self.part_of.iter().enumerate() {
            if p < self.k {
                parts[p].push(e);
            }
        }
        parts
    }

    /// `edgeId partLabel` per line, ascending edge id.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (e, p) in self.part_of.iter().enumerate() {
            let _ = writeln!(out, "{e} {p}");
        }
        out
    }

    /// Parses the `edgeId partLabel` format. `k` is one more than the largest
    /// label seen.
    pub fn parse(text: &str, m: usize) -> Result<Self> {
        let mut part_of = vec![usize::MAX; m];
        let mut k = 0;
        for (line, text) in data_lines(text) {
            let nums = parse_numbers(line, text)?;
            let &[e, p] = nums.as_slice() else {
                return Err(Error::Parse {
                    line,
                    msg: "expected `edgeId partLabel`".into(),
                });
            };
            if e >= m {
                return Err(Error::Parse {
                    line,
                    msg: format!("edge id {e} out of range (m = {m})"),
                });
            }
            if part_of[e] != usize::MAX {
                return Err(Error::Parse {
                    line,
                    msg: format!("edge {e} listed twice"),
                });
            }
            part_of[e] = p;
            k = k.max(p + 1);
        }
        if let Some(e) = part_of.iter().position(|&p| p == usize::MAX) {
            return Err(Error::CountMismatch {
                expected: m,
                found: e,
            });
        }
        Ok(CoverDecomposition { part_of, k })
    }
}

/// A total map from vertices to colours `0..k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexColouring {
    pub colour_of: Vec<usize>,
    pub k: usize,
}

impl VertexColouring {
    pub fn new(colour_of: Vec<usize>, k: usize) -> Self {
        VertexColouring { colour_of, k }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (v, c) in self.colour_of.iter().enumerate() {
            let _ = writeln!(out, "{v} {c}");
        }
        out
    }
}

pub(crate) fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub(crate) fn parse_numbers(line: usize, text: &str) -> Result<Vec<usize>> {
    text.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>().map_err(|_| Error::Parse {
                line,
                msg: format!("`{tok}` is not a nonnegative integer"),
            })
        })
        .collect()
}

/// Parses the `.hg` text format: a header `n m`, then one line `k v1 .. vk`
/// per edge. Lines starting with `#` are comments.
pub fn parse_hypergraph(text: &str) -> Result<Hypergraph> {
    let mut lines = data_lines(text);
    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 0,
        msg: "missing `n m` header".into(),
    })?;
    let header = parse_numbers(hline, header)?;
    if header.len() != 2 {
        return Err(Error::Parse {
            line: hline,
            msg: "header must be `n m`".into(),
        });
    }
    let (n, m) = (header[0], header[1]);
    let mut edges = Vec::with_capacity(m);
    for (no, line) in lines {
        let nums = parse_numbers(no, line)?;
        let (&size, rest) = nums.split_first().ok_or(Error::Parse {
            line: no,
            msg: "empty edge line".into(),
        })?;
        if rest.len() != size {
            return Err(Error::Parse {
                line: no,
                msg: format!("edge declares {size} vertices but lists {}", rest.len()),
            });
        }
        edges.push(rest.to_vec());
    }
    if edges.len() != m {
        return Err(Error::CountMismatch {
            expected: m,
            found: edges.len(),
        });
    }
    Hypergraph::new(n, edges)
}

pub fn write_hypergraph(h: &Hypergraph) -> String {
    let mut out = format!("{} {}\n", h.n_vertices, h.edges.len());
    for edge in &h.edges {
        let _ = write!(out, "{}", edge.len());
        for v in edge {
            let _ = write!(out, " {v}");
        }
        out.push('\n');
    }
    out
}

/// The dual (transpose): vertex `j` of the result is edge `j` of `h`, and
/// edge `i` of the result lists the edges of `h` containing vertex `i`.
pub fn dual(h: &Hypergraph) -> Hypergraph {
    Hypergraph {
        n_vertices: h.n_edges(),
        edges: h.incidence(),
    }
}

/// Removes incidences until every vertex has degree exactly `delta`.
///
/// A vertex of excess degree is dropped from its incident edges of highest id
/// first. Edge ids are preserved, so a cover of the result lifts unchanged to
/// a cover of `h`.
pub fn shrink_to_degree(h: &Hypergraph, delta: usize) -> Result<Hypergraph> {
    let inc = h.incidence();
    if let Some((v, list)) = inc.iter().enumerate().find(|(_, l)| l.len() < delta) {
        return Err(Error::DegreeTooLow {
            vertex: v,
            degree: list.len(),
            required: delta,
        });
    }
    let mut edges = h.edges.clone();
    for (v, list) in inc.iter().enumerate() {
        for &e in list.iter().skip(delta) {
            let pos = edges[e]
                .binary_search(&v)
                .expect("incidence list is consistent");
            edges[e].remove(pos);
        }
    }
    Ok(Hypergraph {
        n_vertices: h.n_vertices,
        edges,
    })
}

/// True iff `d` labels every edge of `h` with a part in `0..k` and each part
/// covers every vertex.
pub fn verify_cover_decomposition(h: &Hypergraph, d: &CoverDecomposition) -> bool {
    if d.part_of.len() != h.n_edges() || d.part_of.iter().any(|&p| p >= d.k) {
        return false;
    }
    let mut covered = vec![false; d.k * h.n_vertices];
    for (e, &p) in d.part_of.iter().enumerate() {
        for &v in h.edge(e) {
            covered[p * h.n_vertices + v] = true;
        }
    }
    covered.into_iter().all(|c| c)
}

/// True iff every edge of `h` sees all `k` colours of `c`.
pub fn verify_polychromatic(h: &Hypergraph, c: &VertexColouring) -> bool {
    if c.colour_of.len() != h.n_vertices || c.colour_of.iter().any(|&x| x >= c.k) {
        return false;
    }
    let mut seen = vec![false; c.k];
    h.edges.iter().all(|edge| {
        seen.iter_mut().for_each(|s| *s = false);
        for &v in edge {
            seen[c.colour_of[v]] = true;
        }
        seen.iter().all(|&s| s)
    })
}
