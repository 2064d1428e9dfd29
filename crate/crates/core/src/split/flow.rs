//! Integral max flow and flow-based shrinking.
//!
//! The shrink network has arcs source → vertex (capacity δ-α), vertex → edge
//! (capacity 1 per incidence) and edge → sink (capacity β). A flow saturating
//! every source arc selects, for each vertex, δ-α incidences such that no
//! edge keeps more than β of them.

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use std::collections::VecDeque;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arc {
    pub from: usize,
    pub to: usize,
    pub cap: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowNetwork {
    pub n_nodes: usize,
    pub source: usize,
    pub sink: usize,
    pub arcs: Vec<Arc>,
}

impl FlowNetwork {
    pub fn new(n_nodes: usize, source: usize, sink: usize) -> Self {
        FlowNetwork {
            n_nodes,
            source,
            sink,
            arcs: Vec::new(),
        }
    }

    /// Adds an arc and returns its index.
    pub fn add_arc(&mut self, from: usize, to: usize, cap: u64) -> usize {
        self.arcs.push(Arc { from, to, cap });
        self.arcs.len() - 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxFlow {
    pub value: u64,
    /// Flow on each arc, indexed like `FlowNetwork::arcs`.
    pub arc_flows: Vec<u64>,
    /// Nodes reachable from the source in the final residual graph; the arcs
    /// leaving this set form a minimum cut.
    pub source_side: Vec<bool>,
}

impl MaxFlow {
    pub fn cut_capacity(&self, net: &FlowNetwork) -> u64 {
        net.arcs
            .iter()
            .filter(|a| self.source_side[a.from] && !self.source_side[a.to])
            .map(|a| a.cap)
            .sum()
    }
}

/// Edmonds-Karp: shortest augmenting paths found by breadth-first search.
pub fn max_flow(net: &FlowNetwork) -> MaxFlow {
    // Residual arcs come in pairs: 2i forward, 2i+1 backward.
    let mut head = vec![Vec::new(); net.n_nodes];
    let mut residual = Vec::with_capacity(2 * net.arcs.len());
    let mut to = Vec::with_capacity(2 * net.arcs.len());
    for a in &net.arcs {
        head[a.from].push(residual.len());
        residual.push(a.cap);
        to.push(a.to);
        head[a.to].push(residual.len());
        residual.push(0);
        to.push(a.from);
    }
    let mut value = 0u64;
    loop {
        let mut via = vec![usize::MAX; net.n_nodes];
        let mut seen = vec![false; net.n_nodes];
        seen[net.source] = true;
        let mut queue = VecDeque::from([net.source]);
        while let Some(u) = queue.pop_front() {
            if u == net.sink {
                break;
            }
            for &r in &head[u] {
                if residual[r] > 0 && !seen[to[r]] {
                    seen[to[r]] = true;
                    via[to[r]] = r;
                    queue.push_back(to[r]);
                }
            }
        }
        if !seen[net.sink] || net.source == net.sink {
            let arc_flows = (0..net.arcs.len()).map(|i| residual[2 * i + 1]).collect();
            return MaxFlow {
                value,
                arc_flows,
                source_side: seen,
            };
        }
        let mut bottleneck = u64::MAX;
        let mut v = net.sink;
        while v != net.source {
            let r = via[v];
            bottleneck = bottleneck.min(residual[r]);
            v = to[r ^ 1];
        }
        let mut v = net.sink;
        while v != net.source {
            let r = via[v];
            residual[r] -= bottleneck;
            residual[r ^ 1] += bottleneck;
            v = to[r ^ 1];
        }
        value += bottleneck;
    }
}

/// The shrink network of `h` and, for each incidence `(edge, position)`, the
/// index of its unit arc.
pub fn shrink_network(h: &Hypergraph, alpha: usize, beta: usize) -> (FlowNetwork, Vec<Vec<usize>>) {
    let n = h.n_vertices();
    let m = h.n_edges();
    let demand = h.min_degree().saturating_sub(alpha) as u64;
    let mut net = FlowNetwork::new(n + m + 2, 0, 1);
    for v in 0..n {
        net.add_arc(0, 2 + v, demand);
    }
    let mut unit = Vec::with_capacity(m);
    for (e, vs) in h.edges().iter().enumerate() {
        unit.push(
            vs.iter()
                .map(|&v| net.add_arc(2 + v, 2 + n + e, 1))
                .collect(),
        );
    }
    for e in 0..m {
        net.add_arc(2 + n + e, 1, beta as u64);
    }
    (net, unit)
}

/// Shrinks edges so every vertex keeps at least `δ - α` incidences and no edge
/// keeps more than `β` vertices. Edge ids are preserved.
pub fn flow_shrink(h: &Hypergraph, alpha: usize, beta: usize) -> Result<Hypergraph> {
    if beta == 0 {
        return Err(Error::InvalidParameter("beta must be positive".into()));
    }
    let n = h.n_vertices();
    let demand = h.min_degree().saturating_sub(alpha) as u64;
    let (net, unit) = shrink_network(h, alpha, beta);
    let flow = max_flow(&net);
    let required = demand * n as u64;
    if flow.value < required {
        let cut_vertices = (0..n).filter(|&v| flow.source_side[2 + v]).collect();
        let cut_edges = (0..h.n_edges())
            .filter(|&e| flow.source_side[2 + n + e])
            .collect();
        return Err(Error::FlowInfeasible {
            value: flow.value,
            required,
            cut_vertices,
            cut_edges,
        });
    }
    let edges = h
        .edges()
        .iter()
        .zip(&unit)
        .map(|(vs, arcs)| {
            vs.iter()
                .zip(arcs)
                .filter(|(_, &a)| flow.arc_flows[a] == 1)
                .map(|(&v, _)| v)
                .collect()
        })
        .collect();
    Hypergraph::new(n, edges)
}
