//! Sensor-cover scheduling in multigraphs: every edge runs for its duration
//! from a chosen offset, and each vertex must be covered continuously from
//! time 0 for as long as possible.
//!
//! The scheduler scales durations by the weighted minimum degree δ̄, rounds
//! them down to powers of two, and dedicates edges to single endpoints so
//! that every vertex either sits on a long edge started at 0 or owns at least
//! 1/8 of scaled duration. Coverage is at least δ̄/8.

use crate::error::{Error, Result};
use crate::hypergraph::{data_lines, parse_numbers};
use crate::scalar::{int, ratio, Scalar};
use crate::Rational;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SensorEdge {
    pub u: usize,
    pub v: usize,
    pub duration: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SensorInstance {
    n_vertices: usize,
    edges: Vec<SensorEdge>,
}

impl SensorInstance {
    pub fn new(n_vertices: usize, edges: Vec<(usize, usize, u64)>) -> Result<Self> {
        let mut out = Vec::with_capacity(edges.len());
        for (id, (u, v, d)) in edges.into_iter().enumerate() {
            if u >= n_vertices || v >= n_vertices {
                return Err(Error::VertexOutOfRange {
                    edge: id,
                    vertex: u.max(v),
                    n: n_vertices,
                });
            }
            if u == v {
                return Err(Error::DuplicateVertex {
                    edge: id,
                    vertex: u,
                });
            }
            if d == 0 {
                return Err(Error::InvalidParameter(format!("edge {id} has duration 0")));
            }
            out.push(SensorEdge { u, v, duration: d });
        }
        Ok(SensorInstance {
            n_vertices,
            edges: out,
        })
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn edges(&self) -> &[SensorEdge] {
        &self.edges
    }

    /// Total incident duration per vertex.
    pub fn weighted_degrees(&self) -> Vec<u64> {
        let mut deg = vec![0; self.n_vertices];
        for e in &self.edges {
            deg[e.u] += e.duration;
            deg[e.v] += e.duration;
        }
        deg
    }

    /// The `.sg` text form: `n m`, then `u v d` per edge.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n_vertices, self.edges.len());
        for e in &self.edges {
            let _ = writeln!(out, "{} {} {}", e.u, e.v, e.duration);
        }
        out
    }
}

/// Parses the `.sg` format: header `n m`, then `m` lines `u v d`.
pub fn parse_sensor(text: &str) -> Result<SensorInstance> {
    let mut lines = data_lines(text);
    let (line, header) = lines.next().ok_or(Error::Parse {
        line: 0,
        msg: "missing `n m` header".into(),
    })?;
    let &[n, m] = parse_numbers(line, header)?.as_slice() else {
        return Err(Error::Parse {
            line,
            msg: "header must be `n m`".into(),
        });
    };
    let mut edges = Vec::with_capacity(m);
    for (line, content) in lines {
        let &[u, v, d] = parse_numbers(line, content)?.as_slice() else {
            return Err(Error::Parse {
                line,
                msg: "edge line must be `u v d`".into(),
            });
        };
        edges.push((u, v, d as u64));
    }
    if edges.len() != m {
        return Err(Error::CountMismatch {
            expected: m,
            found: edges.len(),
        });
    }
    SensorInstance::new(n, edges)
}

/// δ̄: the minimum total incident duration; 0 without vertices.
pub fn weighted_min_degree(g: &SensorInstance) -> u64 {
    g.weighted_degrees().into_iter().min().unwrap_or(0)
}

/// Start offset per edge and the coverage they achieve.
#[derive(Debug, Clone, PartialEq)]
pub struct Schedule<S> {
    pub start: Vec<S>,
    pub coverage: S,
}

/// Largest `T` such that every vertex is covered at each time in `[0, T]`
/// by a closed interval `[start, start + d]` of an incident edge. A vertex
/// not covered at time 0 contributes 0.
pub fn verify_coverage<S: Scalar>(g: &SensorInstance, s: &Schedule<S>) -> S {
    verify_starts(g, &s.start)
}

pub fn verify_starts<S: Scalar>(g: &SensorInstance, start: &[S]) -> S {
    if g.n_vertices == 0 || start.len() != g.edges.len() {
        return S::zero();
    }
    let mut intervals: Vec<Vec<(S, S)>> = vec![Vec::new(); g.n_vertices];
    for (e, st) in g.edges.iter().zip(start) {
        let end = st.clone() + S::from_u64(e.duration).expect("duration fits the scalar");
        intervals[e.u].push((st.clone(), end.clone()));
        intervals[e.v].push((st.clone(), end));
    }
    let mut best: Option<S> = None;
    for mut list in intervals {
        list.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("comparable offsets"));
        let mut reach = S::zero();
        let mut covered = false;
        for (a, b) in list {
            if a > reach {
                break;
            }
            if b >= reach {
                reach = b;
                covered = true;
            }
        }
        let t = if covered { reach } else { S::zero() };
        best = Some(match best {
            Some(x) if x <= t => x,
            _ => t,
        });
    }
    best.unwrap_or_else(S::zero)
}

/// How each edge was handled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeFate {
    /// Rounded duration at least 1/8; started at 0.
    Long,
    /// Both endpoints already satisfied by long edges.
    Spare,
    /// Owned by this endpoint.
    Dedicated(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SensorRun {
    pub schedule: Schedule<Rational>,
    pub delta_bar: u64,
    /// Scaled durations rounded down to a power of two.
    pub rounded: Vec<Rational>,
    pub fate: Vec<EdgeFate>,
    /// Vertices on a long edge.
    pub preprocessed: Vec<usize>,
    /// Vertices removed for low residual degree, in removal order.
    pub degree_deleted: Vec<usize>,
    pub cycles_removed: usize,
}

/// Largest power of two (possibly fractional) at most `d / delta_bar`, as an
/// exponent.
fn round_exponent(d: u64, delta_bar: u64) -> i32 {
    let (d, db) = (d as u128, delta_bar as u128);
    if d >= db {
        let mut k = 0;
        while db << (k + 1) <= d {
            k += 1;
        }
        k
    } else {
        let mut j = 1;
        while d << j < db {
            j += 1;
        }
        -j
    }
}

fn pow2(k: i32) -> Rational {
    let p = Rational::from_integer(BigInt::one() << k.unsigned_abs());
    if k >= 0 {
        p
    } else {
        p.recip()
    }
}

pub fn sensor_schedule(g: &SensorInstance) -> Result<Schedule<Rational>> {
    sensor_schedule_run(g).map(|r| r.schedule)
}

/// Runs the scheduler and returns its intermediate decisions as well.
pub fn sensor_schedule_run(g: &SensorInstance) -> Result<SensorRun> {
    let n = g.n_vertices;
    let degs = g.weighted_degrees();
    if let Some(v) = degs.iter().position(|&d| d == 0) {
        return Err(Error::IsolatedVertex(v));
    }
    let delta_bar = weighted_min_degree(g);
    if delta_bar == 0 {
        return Err(Error::Precondition("instance has no vertices".into()));
    }
    let m = g.edges.len();
    let exps: Vec<i32> = g
        .edges
        .iter()
        .map(|e| round_exponent(e.duration, delta_bar))
        .collect();
    let rounded: Vec<Rational> = exps.iter().map(|&k| pow2(k)).collect();
    let eighth = ratio(1, 8);
    let quarter = ratio(1, 4);

    let mut fate: Vec<Option<EdgeFate>> = vec![None; m];
    let mut vertex_alive = vec![true; n];
    let mut owned = vec![Rational::zero(); n];

    let mut preprocessed = Vec::new();
    for (e, edge) in g.edges.iter().enumerate() {
        if exps[e] >= -3 {
            fate[e] = Some(EdgeFate::Long);
            for w in [edge.u, edge.v] {
                if vertex_alive[w] {
                    vertex_alive[w] = false;
                    preprocessed.push(w);
                }
            }
        }
    }
    preprocessed.sort_unstable();
    for (e, edge) in g.edges.iter().enumerate() {
        if fate[e].is_some() {
            continue;
        }
        match (vertex_alive[edge.u], vertex_alive[edge.v]) {
            (false, false) => fate[e] = Some(EdgeFate::Spare),
            (false, true) => fate[e] = Some(EdgeFate::Dedicated(edge.v)),
            (true, false) => fate[e] = Some(EdgeFate::Dedicated(edge.u)),
            (true, true) => {}
        }
        if let Some(EdgeFate::Dedicated(w)) = fate[e] {
            owned[w] += &rounded[e];
        }
    }

    // Cycle removal inside each duration class.
    let mut classes: Vec<i32> = exps.iter().copied().filter(|&k| k < -3).collect();
    classes.sort_unstable_by(|a, b| b.cmp(a));
    classes.dedup();
    let mut cycles_removed = 0;
    for class in classes {
        while let Some(cycle) = find_cycle(g, &fate, &exps, class) {
            cycles_removed += 1;
            for (e, owner) in cycle {
                fate[e] = Some(EdgeFate::Dedicated(owner));
                owned[owner] += &rounded[e];
            }
        }
    }

    // Low-degree removal.
    let mut residual = vec![Rational::zero(); n];
    for (e, edge) in g.edges.iter().enumerate() {
        if fate[e].is_none() {
            residual[edge.u] += &rounded[e];
            residual[edge.v] += &rounded[e];
        }
    }
    let mut degree_deleted = Vec::new();
    while let Some(v) = (0..n).find(|&v| vertex_alive[v] && residual[v] <= quarter) {
        vertex_alive[v] = false;
        degree_deleted.push(v);
        for (e, edge) in g.edges.iter().enumerate() {
            if fate[e].is_none() && (edge.u == v || edge.v == v) {
                let w = if edge.u == v { edge.v } else { edge.u };
                fate[e] = Some(EdgeFate::Dedicated(w));
                owned[w] += &rounded[e];
                residual[w] -= &rounded[e];
                residual[v] -= &rounded[e];
            }
        }
        if owned[v] < eighth {
            return Err(Error::GuaranteeViolated(format!(
                "vertex {v} removed for low degree owns only {} scaled duration, below 1/8",
                owned[v]
            )));
        }
    }
    if let Some(v) = (0..n).find(|&v| vertex_alive[v]) {
        let left = (0..n).filter(|&u| vertex_alive[u]).count();
        return Err(Error::GuaranteeViolated(format!(
            "{left} vertices (first {v}) survive low-degree removal, contradicting the forest count"
        )));
    }
    let fate: Vec<EdgeFate> = fate
        .into_iter()
        .map(|f| f.expect("every edge is settled once all vertices are removed"))
        .collect();

    // Each vertex runs its own edges back to back, longest first.
    let mut start = vec![Rational::zero(); m];
    let mut own: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (e, f) in fate.iter().enumerate() {
        if let EdgeFate::Dedicated(w) = f {
            own[*w].push(e);
        }
    }
    for list in own.iter_mut() {
        list.sort_by(|&a, &b| {
            g.edges[b]
                .duration
                .cmp(&g.edges[a].duration)
                .then(a.cmp(&b))
        });
        let mut t = Rational::zero();
        for &e in list.iter() {
            start[e] = t.clone();
            t += int(g.edges[e].duration as i64);
        }
    }
    let coverage = verify_starts(g, &start);
    let floor = ratio(delta_bar as i64, 8);
    if coverage < floor {
        return Err(Error::GuaranteeViolated(format!(
            "coverage {coverage} is below δ̄/8 = {floor}"
        )));
    }
    Ok(SensorRun {
        schedule: Schedule { start, coverage },
        delta_bar,
        rounded,
        fate,
        preprocessed,
        degree_deleted,
        cycles_removed,
    })
}

/// First cycle among unsettled edges of one class, scanning edges by id and
/// growing a forest. Returns `(edge, owner)` pairs: the cycle's vertices are
/// rotated to start at the lowest id and each edge goes to its first vertex.
fn find_cycle(
    g: &SensorInstance,
    fate: &[Option<EdgeFate>],
    exps: &[i32],
    class: i32,
) -> Option<Vec<(usize, usize)>> {
    let n = g.n_vertices;
    let mut forest: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    let mut root: Vec<usize> = (0..n).collect();
    fn find(root: &mut [usize], mut x: usize) -> usize {
        while root[x] != x {
            root[x] = root[root[x]];
            x = root[x];
        }
        x
    }
    for (e, edge) in g.edges.iter().enumerate() {
        if fate[e].is_some() || exps[e] != class {
            continue;
        }
        let (a, b) = (find(&mut root, edge.u), find(&mut root, edge.v));
        if a != b {
            root[a] = b;
            forest[edge.u].push((edge.v, e));
            forest[edge.v].push((edge.u, e));
            continue;
        }
        // Forest path from u to v, then e closes it.
        let path = forest_path(&forest, edge.u, edge.v);
        let mut verts: Vec<usize> = path.iter().map(|&(x, _)| x).collect();
        let mut edges: Vec<usize> = path.iter().skip(1).map(|&(_, pe)| pe).collect();
        edges.push(e);
        // verts[j] -- edges[j] -- verts[j+1], cyclically.
        let shift = (0..verts.len())
            .min_by_key(|&j| verts[j])
            .expect("nonempty cycle");
        verts.rotate_left(shift);
        edges.rotate_left(shift);
        return Some(edges.into_iter().zip(verts).collect());
    }
    None
}

/// Vertices from `from` to `to` along forest edges, each paired with the edge
/// used to reach it (`usize::MAX` for the start).
fn forest_path(forest: &[Vec<(usize, usize)>], from: usize, to: usize) -> Vec<(usize, usize)> {
    let mut prev = vec![None; forest.len()];
    let mut stack = vec![from];
    prev[from] = Some((from, usize::MAX));
    while let Some(x) = stack.pop() {
        if x == to {
            break;
        }
        for &(y, e) in &forest[x] {
            if prev[y].is_none() {
                prev[y] = Some((x, e));
                stack.push(y);
            }
        }
    }
    let mut path = Vec::new();
    let mut x = to;
    loop {
        let (p, e) = prev[x].expect("endpoints share a tree");
        path.push((x, e));
        if x == from {
            break;
        }
        x = p;
    }
    path.reverse();
    path
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(n: usize, edges: &[(usize, usize, u64)]) -> SensorInstance {
        SensorInstance::new(n, edges.to_vec()).unwrap()
    }

    #[test]
    fn weighted_degree_examples() {
        assert_eq!(
            weighted_min_degree(&inst(3, &[(0, 1, 1), (1, 2, 1), (0, 2, 1)])),
            2
        );
        assert_eq!(
            weighted_min_degree(&inst(4, &[(0, 1, 2), (0, 2, 2), (0, 3, 2)])),
            2
        );
        assert_eq!(weighted_min_degree(&inst(2, &[(0, 1, 3), (0, 1, 3)])), 6);
    }

    #[test]
    fn rounding_is_a_power_of_two_in_range() {
        for (d, db) in [(1u64, 1u64), (3, 7), (16, 3), (5, 80), (1, 1000)] {
            let r = pow2(round_exponent(d, db));
            let s = ratio(d as i64, db as i64);
            assert!(r <= s && r > s / int(2), "{d}/{db}");
        }
    }

    #[test]
    fn coverage_examples() {
        let g = inst(2, &[(0, 1, 5)]);
        let at_one = Schedule {
            start: vec![int(1)],
            coverage: int(0),
        };
        assert_eq!(verify_coverage(&g, &at_one), int(0));
        let g = inst(3, &[(0, 1, 1), (0, 2, 1)]);
        assert_eq!(verify_starts(&g, &[int(0), int(1)]), int(0));
        let g = inst(2, &[(0, 1, 1), (0, 1, 1)]);
        assert_eq!(verify_starts(&g, &[int(0), int(1)]), int(2));
        assert_eq!(verify_starts(&g, &[0.0f64, 1.0]), 2.0);
    }

    #[test]
    fn triangle_and_single_edge() {
        let tri = inst(3, &[(0, 1, 1), (1, 2, 1), (0, 2, 1)]);
        let s = sensor_schedule(&tri).unwrap();
        assert!(s.coverage >= ratio(1, 4));
        let single = inst(2, &[(0, 1, 8)]);
        let run = sensor_schedule_run(&single).unwrap();
        assert_eq!(run.schedule.start, vec![int(0)]);
        assert_eq!(run.schedule.coverage, int(8));
        assert_eq!(run.fate, vec![EdgeFate::Long]);
    }

    #[test]
    fn short_edges_use_cycles_and_degree_removal() {
        // A 4-cycle of unit edges plus a heavy chord keeps the cycle edges short.
        let g = inst(
            4,
            &[
                (0, 1, 1),
                (1, 2, 1),
                (2, 3, 1),
                (3, 0, 1),
                (0, 2, 40),
                (1, 3, 40),
            ],
        );
        let run = sensor_schedule_run(&g).unwrap();
        assert!(run.schedule.coverage >= ratio(41, 8));
        let g = inst(
            3,
            &[(0, 1, 1); 20]
                .iter()
                .chain(&[(1, 2, 1); 20])
                .copied()
                .collect::<Vec<_>>(),
        );
        let run = sensor_schedule_run(&g).unwrap();
        assert!(run.cycles_removed > 0);
        assert!(run.schedule.coverage >= ratio(20, 8));
    }

    #[test]
    fn parse_round_trip() {
        let g = parse_sensor("# tri\n3 3\n0 1 1\n1 2 1\n0 2 2\n").unwrap();
        assert_eq!(parse_sensor(&g.to_text()).unwrap(), g);
        assert!(parse_sensor("2 1\n0 0 1\n").is_err());
        assert!(parse_sensor("2 2\n0 1 1\n").is_err());
    }
}
