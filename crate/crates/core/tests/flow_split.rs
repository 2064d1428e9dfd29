mod common;

use hypercover::generators::{gen_fano, replicate};
use hypercover::lll::LllConfig;
use hypercover::split::{
    flow_shrink, max_flow, recursive_decompose, recursive_decompose_report, sparse_decompose,
    FlowNetwork, SplitPlan, SplitStrategy, StopRule,
};
use hypercover::{verify_cover_decomposition, Error, Hypergraph};
use proptest::prelude::*;

fn network() -> impl Strategy<Value = FlowNetwork> {
    (3usize..=6).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n, 0u64..=4), 0..=12).prop_map(move |arcs| {
            let mut net = FlowNetwork::new(n, 0, n - 1);
            for (a, b, c) in arcs {
                if a != b {
                    net.add_arc(a, b, c);
                }
            }
            net
        })
    })
}

/// Minimum over all source-side sets of the capacity leaving them.
fn brute_min_cut(net: &FlowNetwork) -> u64 {
    let n = net.n_nodes;
    (0u32..1 << n)
        .filter(|s| s >> net.source & 1 == 1 && s >> net.sink & 1 == 0)
        .map(|s| {
            net.arcs
                .iter()
                .filter(|a| s >> a.from & 1 == 1 && s >> a.to & 1 == 0)
                .map(|a| a.cap)
                .sum()
        })
        .min()
        .unwrap()
}

fn hypergraph(max_n: usize, max_m: usize) -> impl Strategy<Value = Hypergraph> {
    (1..=max_n, 1..=max_m).prop_flat_map(|(n, m)| {
        prop::collection::vec(0u32..1 << n, m).prop_map(move |masks| {
            let edges = masks
                .iter()
                .map(|&mask| (0..n).filter(|&v| mask >> v & 1 == 1).collect())
                .collect();
            Hypergraph::new(n, edges).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn max_flow_equals_min_cut(net in network()) {
        let f = max_flow(&net);
        prop_assert_eq!(f.value, brute_min_cut(&net));
        prop_assert_eq!(f.cut_capacity(&net), f.value);
        for (a, &x) in net.arcs.iter().zip(&f.arc_flows) {
            prop_assert!(x <= a.cap);
        }
        for v in 0..net.n_nodes {
            if v == net.source || v == net.sink {
                continue;
            }
            let inflow: u64 = net.arcs.iter().zip(&f.arc_flows).filter(|(a, _)| a.to == v).map(|(_, &x)| x).sum();
            let outflow: u64 = net.arcs.iter().zip(&f.arc_flows).filter(|(a, _)| a.from == v).map(|(_, &x)| x).sum();
            prop_assert_eq!(inflow, outflow);
        }
    }

    #[test]
    fn shrink_succeeds_or_reports_a_tight_cut(h in hypergraph(7, 8), alpha in 0usize..3, beta in 1usize..4) {
        let demand = h.min_degree().saturating_sub(alpha);
        match flow_shrink(&h, alpha, beta) {
            Ok(s) => {
                prop_assert!(s.min_degree() >= demand);
                prop_assert!(s.max_edge_size() <= beta);
                for (a, b) in h.edges().iter().zip(s.edges()) {
                    prop_assert!(b.iter().all(|v| a.contains(v)));
                }
            }
            Err(Error::FlowInfeasible { value, required, cut_vertices, cut_edges }) => {
                prop_assert!(value < required);
                // (δ-α)|V∖V'| + I(V', E∖E') + β|E'|
                let in_v = |v: &usize| cut_vertices.contains(v);
                let outside = (h.n_vertices() - cut_vertices.len()) * demand;
                let crossing: usize = h
                    .edges()
                    .iter()
                    .enumerate()
                    .filter(|(e, _)| !cut_edges.contains(e))
                    .map(|(_, vs)| vs.iter().filter(|v| in_v(v)).count())
                    .sum();
                prop_assert_eq!(value as usize, outside + crossing + beta * cut_edges.len());
            }
            Err(e) => prop_assert!(false, "unexpected {e}"),
        }
    }
}

#[test]
fn sparse_instances_always_shrink() {
    let mut rng = common::rng(5);
    for _ in 0..30 {
        let h = common::sparse_instance(12, 2, 3, 4, &mut rng);
        let s = flow_shrink(&h, 2, 3).unwrap();
        assert!(s.min_degree() + 2 >= h.min_degree() && s.max_edge_size() <= 3);
    }
}

#[test]
fn recursive_results_verify_on_the_original() {
    let mut rng = common::rng(9);
    for seed in 0..6 {
        let h = common::regular_blocks(8, 2, 20 + seed as usize, &mut rng);
        for strategy in [SplitStrategy::BeckFiala, SplitStrategy::Chernoff] {
            for stop in [StopRule::RangeR4R, StopRule::PolylogT] {
                let plan = SplitPlan::new(strategy, stop);
                let d = recursive_decompose(&h, &plan, &LllConfig::new(0, seed)).unwrap();
                assert!(verify_cover_decomposition(&h, &d));
            }
        }
    }
}

#[test]
fn replicated_fano_reaches_many_leaves() {
    // δ = 600, R = 3: splitting while δ ≥ 4R leaves at least δ/(6R) = 33 leaves.
    let h = replicate(&gen_fano(), 200).unwrap();
    let plan = SplitPlan::new(SplitStrategy::BeckFiala, StopRule::RangeR4R);
    let out = recursive_decompose_report(&h, &plan, &LllConfig::new(0, 1)).unwrap();
    assert!(out.leaves.len() >= 33, "{} leaves", out.leaves.len());
    assert!(verify_cover_decomposition(&h, &out.decomposition));
    let per_leaf: usize = out.leaves.iter().map(|l| l.colours).sum();
    assert_eq!(out.decomposition.k, per_leaf);
}

#[test]
fn sparse_decompose_lifts_covers() {
    let mut rng = common::rng(21);
    for seed in 0..5 {
        let h = common::sparse_instance(12, 1, 3, 8, &mut rng);
        let plan = SplitPlan::new(SplitStrategy::BeckFiala, StopRule::RangeR4R);
        let d = sparse_decompose(&h, 1, 3, &plan, &LllConfig::new(0, seed)).unwrap();
        assert!(d.k >= 1 && verify_cover_decomposition(&h, &d));
    }
}
