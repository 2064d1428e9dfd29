mod common;

use common::{all_hypergraphs, rng};
use hypercover::generators::{gen_fano, gen_ptt, gen_random_tree_paths, replicate};
use hypercover::lll::{lll_condition_holds, lll_target_colours, moser_tardos_run, LllConfig};
use hypercover::oracle::oracle_pprime;
use hypercover::sensor::{sensor_schedule_run, verify_coverage, verify_starts, EdgeFate, Schedule};
use hypercover::treepaths::{
    level_colouring, parse_tree_paths, path_degree_profile, path_min_degree, split_paths,
    tree_cover_decompose,
};
use hypercover::vc::{
    crossfree_decompose, is_cross_free, is_laminar, laminar_decompose, primal_vc,
};
use hypercover::{dual, verify_cover_decomposition, Hypergraph, Rational};
use num_traits::{One, ToPrimitive};
use proptest::prelude::*;
use rand::Rng;

#[test]
fn path_split_sides_keep_their_targets() {
    let mut rng = rng(1);
    for i in 0..20 {
        let delta = 6 + i % 8;
        let inst = common::tree_paths_with_degree(8, delta, &mut rng);
        let ids: Vec<usize> = (0..inst.paths().len()).collect();
        let split = split_paths(&inst, &ids).unwrap();
        let cover = path_degree_profile(&inst.with_paths(&split.cover));
        let rest = path_degree_profile(&inst.with_paths(&split.rest));
        assert!(cover.iter().all(|&d| d >= 1));
        assert!(rest.iter().all(|&d| d + 5 >= delta));
        assert_eq!(split.cover.len() + split.rest.len(), ids.len());
    }
}

#[test]
fn tree_decomposition_meets_its_count_for_every_delta() {
    let mut rng = rng(2);
    for delta in 1..=17 {
        let inst = common::tree_paths_with_degree(7, delta, &mut rng);
        assert_eq!(path_min_degree(&inst), delta);
        let d = tree_cover_decompose(&inst).unwrap();
        assert_eq!(d.k, 1 + (delta - 1) / 5, "δ={delta}");
        assert!(verify_cover_decomposition(&inst.as_hypergraph(), &d));
    }
}

#[test]
fn tree_text_round_trips() {
    let inst = gen_random_tree_paths(15, 12, 2, 4).unwrap();
    let again = parse_tree_paths(&inst.to_text()).unwrap();
    assert_eq!(again.paths(), inst.paths());
    assert_eq!(again.tree_edges(), inst.tree_edges());
}

#[test]
fn level_colouring_rejects_short_paths() {
    let inst = gen_random_tree_paths(20, 10, 1, 0).unwrap();
    let shortest = inst.paths().iter().map(|p| p.edges.len()).min().unwrap();
    assert!(level_colouring(&inst, shortest / 2 + 2).is_err());
}

#[test]
fn vc_at_most_one_iff_dual_cross_free() {
    for n in 1..=4 {
        for m in 1..=4 {
            for h in all_hypergraphs(n, m) {
                let (vc, _) = primal_vc(&h, 4).unwrap();
                assert_eq!(vc <= 1, is_cross_free(&dual(&h)), "{:?}", h.edges());
            }
        }
    }
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
    #![proptest_config(ProptestConfig::with_cases(600))]

    #[test]
    fn vc_equivalence_up_to_six(h in hypergraph(6, 6)) {
        let (vc, _) = primal_vc(&h, 6).unwrap();
        prop_assert_eq!(vc <= 1, is_cross_free(&dual(&h)));
    }

    #[test]
    fn shattered_witness_is_shattered(h in hypergraph(6, 8)) {
        let (vc, w) = primal_vc(&h, 6).unwrap();
        prop_assert_eq!(w.len(), vc);
        let traces: std::collections::BTreeSet<Vec<usize>> = h
            .edges()
            .iter()
            .map(|e| w.iter().copied().filter(|v| e.contains(v)).collect())
            .collect();
        prop_assert_eq!(traces.len(), 1usize << vc);
    }
}

#[test]
fn laminar_and_crossfree_counts() {
    let mut rng = rng(3);
    for _ in 0..40 {
        let n = rng.gen_range(2..=7);
        let h = common::random_laminar(n, &mut rng);
        assert!(is_laminar(&h) && is_cross_free(&h));
        let d = laminar_decompose(&h).unwrap();
        assert_eq!(d.k, h.min_degree());
        let c = crossfree_decompose(&h).unwrap();
        assert!(c.k >= h.min_degree().div_ceil(2) && verify_cover_decomposition(&h, &c));
        if h.n_edges() <= 12 {
            assert_eq!(oracle_pprime(&h).unwrap(), h.min_degree());
        }
    }
}

#[test]
fn crossfree_on_random_cross_free_families() {
    let mut rng = rng(4);
    let mut seen = 0;
    while seen < 60 {
        let h = common::random_small(rng.gen_range(2..=6), rng.gen_range(2..=7), &mut rng);
        if h.isolated_vertex().is_some() || !is_cross_free(&h) {
            continue;
        }
        seen += 1;
        let d = crossfree_decompose(&h).unwrap();
        assert!(d.k >= h.min_degree().div_ceil(2) && verify_cover_decomposition(&h, &d));
        assert!(d.k <= oracle_pprime(&h).unwrap());
    }
}

#[test]
fn ptt_two_is_not_two_colourable() {
    let h = gen_ptt(2).unwrap();
    assert_eq!(hypercover::oracle::oracle_p(&h).unwrap(), 1);
}

#[test]
fn lll_condition_is_monotone_in_colours() {
    for big_r in [2usize, 3, 5, 10, 40, 100] {
        for delta in (2..=100).step_by(7) {
            let top = lll_target_colours(big_r, delta);
            for t in 3..=(top + 3).min(delta) {
                if lll_condition_holds(big_r, delta, t) {
                    assert!(
                        lll_condition_holds(big_r, delta, t - 1),
                        "R={big_r} δ={delta} t={t}"
                    );
                }
            }
            if top >= 2 {
                assert!(lll_condition_holds(big_r, delta, top));
            }
        }
    }
}

#[test]
fn lll_resampling_never_runs_without_bad_vertices() {
    // With one colour no vertex is ever bad.
    let h = replicate(&gen_fano(), 20).unwrap();
    let run = moser_tardos_run(&h, &LllConfig::new(1, 0)).unwrap();
    assert_eq!(run.resamples, 0);
    for seed in 0..10 {
        let run = moser_tardos_run(&h, &LllConfig::new(5, seed)).unwrap();
        assert!(verify_cover_decomposition(&h, &run.decomposition));
    }
}

#[test]
fn sensor_structure() {
    let mut rng = rng(6);
    for _ in 0..60 {
        let g = common::random_sensor(30, 16, &mut rng);
        let run = sensor_schedule_run(&g).unwrap();
        let db = Rational::from_integer(run.delta_bar.into());
        for (e, r) in g.edges().iter().zip(&run.rounded) {
            let scaled = Rational::from_integer(e.duration.into()) / &db;
            assert!(r <= &scaled && r * Rational::from_integer(2.into()) > scaled);
            // A power of two: numerator or denominator is one, the other a power of two.
            let (p, q) = (r.numer(), r.denom());
            assert!(
                (p.is_one() && (q & (q - 1u32)) == 0u32.into())
                    || (q.is_one() && (p & (p - 1u32)) == 0u32.into())
            );
        }
        for (e, fate) in run.fate.iter().enumerate() {
            if let EdgeFate::Dedicated(v) = fate {
                assert!(g.edges()[e].u == *v || g.edges()[e].v == *v);
            }
        }
        let cov = verify_coverage(&g, &run.schedule);
        assert!(cov * Rational::from_integer(8.into()) >= db);
        // The same starts evaluated in floating point agree.
        let starts: Vec<f64> = run
            .schedule
            .start
            .iter()
            .map(|s| s.to_f64().unwrap())
            .collect();
        let f = verify_coverage(
            &g,
            &Schedule {
                start: starts,
                coverage: 0.0,
            },
        );
        assert!((f - verify_starts(&g, &run.schedule.start).to_f64().unwrap()).abs() < 1e-9);
    }
}
