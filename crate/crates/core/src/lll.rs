//! Randomised cover decomposition by colour resampling.
//!
//! Every edge gets a uniform colour in `0..t`; a vertex is bad while some
//! colour is missing among its incident edges. The lowest bad vertex has all
//! its incident edges recoloured until no bad vertex remains.

use crate::error::{Error, Result};
use crate::generators::rng_from_seed;
use crate::hypergraph::{verify_cover_decomposition, CoverDecomposition, Hypergraph};
use num_bigint::BigInt;
use num_traits::{One, Pow};
use rand::Rng;
use std::collections::BTreeSet;
use std::str::FromStr;

/// Digits of e truncated after 50 decimals; adding one unit in the last place
/// gives an upper bound.
const E_TRUNCATED_50: &str = "271828182845904523536028747135266249775724709369995";

/// Default resample budget per edge.
pub const RESAMPLES_PER_EDGE: usize = 1000;

/// Number of covers the local lemma guarantees: `max(1, ⌊δ / ln(e·R·δ²)⌋)`.
pub fn lll_target_colours(big_r: usize, delta: usize) -> usize {
    if big_r == 0 || delta == 0 {
        return 1;
    }
    let d = delta as f64;
    let q = d / (1.0 + (big_r as f64).ln() + 2.0 * d.ln());
    let f = q.floor();
    // A quotient sitting half an ulp below an integer is treated as that integer.
    let guarded = if (f + 1.0 - q) <= q * f64::EPSILON * 0.5 {
        f + 1.0
    } else {
        f
    };
    (guarded as usize).max(1)
}

/// Exact test of `R·δ·t·(1 - 1/t)^δ ≤ 1/e`, with `e` replaced by a rational
/// upper bound so a `true` answer is always sound.
pub fn lll_condition_holds(big_r: usize, delta: usize, t: usize) -> bool {
    if t <= 1 {
        return true;
    }
    let e_hi = BigInt::from_str(E_TRUNCATED_50).expect("digits parse") + BigInt::one();
    let scale = BigInt::from(10u32).pow(50u32);
    let d = delta as u32;
    let lhs = BigInt::from(big_r)
        * BigInt::from(delta)
        * BigInt::from(t)
        * BigInt::from(t - 1).pow(d)
        * e_hi;
    let rhs = BigInt::from(t).pow(d) * scale;
    lhs <= rhs
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LllConfig {
    /// Target number of covers `t`.
    pub colours: usize,
    pub seed: u64,
    /// Resample budget; `None` means `1000·m`.
    pub max_resamples: Option<usize>,
}

impl LllConfig {
    pub fn new(colours: usize, seed: u64) -> Self {
        LllConfig {
            colours,
            seed,
            max_resamples: None,
        }
    }
}

/// Outcome of a resampling run.
#[derive(Debug, Clone)]
pub struct LllRun {
    pub decomposition: CoverDecomposition,
    pub resamples: usize,
}

/// Splits the edges of `h` into `cfg.colours` disjoint covers.
pub fn moser_tardos_decompose(h: &Hypergraph, cfg: &LllConfig) -> Result<CoverDecomposition> {
    moser_tardos_run(h, cfg).map(|r| r.decomposition)
}

/// As [`moser_tardos_decompose`], also reporting the number of resampling steps.
pub fn moser_tardos_run(h: &Hypergraph, cfg: &LllConfig) -> Result<LllRun> {
    let t = cfg.colours;
    if t == 0 {
        return Err(Error::InvalidParameter(
            "colour count must be at least 1".into(),
        ));
    }
    if let Some(v) = h.isolated_vertex() {
        return Err(Error::IsolatedVertex(v));
    }
    let m = h.n_edges();
    if t == 1 {
        return Ok(LllRun {
            decomposition: CoverDecomposition::single(m),
            resamples: 0,
        });
    }
    let delta = h.min_degree();
    if t > delta && h.n_vertices() > 0 {
        return Err(Error::TooManyColours {
            colours: t,
            min_degree: delta,
        });
    }
    let cap = cfg
        .max_resamples
        .unwrap_or(RESAMPLES_PER_EDGE.saturating_mul(m));
    if cap == 0 {
        return Err(Error::InvalidParameter(
            "resample cap must be at least 1".into(),
        ));
    }
    let mut rng = rng_from_seed(cfg.seed);
    let inc = h.incidence();
    let mut colour: Vec<usize> = (0..m).map(|_| rng.gen_range(0..t)).collect();
    let mut count = vec![vec![0usize; t]; h.n_vertices()];
    for (e, vs) in h.edges().iter().enumerate() {
        for &v in vs {
            count[v][colour[e]] += 1;
        }
    }
    let is_bad = |c: &[usize]| c.contains(&0);
    let mut bad: BTreeSet<usize> = (0..h.n_vertices()).filter(|&v| is_bad(&count[v])).collect();
    let mut resamples = 0;
    while let Some(&v) = bad.first() {
        if resamples == cap {
            return Err(Error::ResampleCapExceeded { cap });
        }
        resamples += 1;
        for &e in &inc[v] {
            let new = rng.gen_range(0..t);
            let old = std::mem::replace(&mut colour[e], new);
            for &u in h.edge(e) {
                count[u][old] -= 1;
                count[u][new] += 1;
                if is_bad(&count[u]) {
                    bad.insert(u);
                } else {
                    bad.remove(&u);
                }
            }
        }
    }
    let decomposition = CoverDecomposition::new(colour, t);
    if !verify_cover_decomposition(h, &decomposition) {
        return Err(Error::Internal(
            "resampling ended with an invalid decomposition".into(),
        ));
    }
    Ok(LllRun {
        decomposition,
        resamples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_fano, replicate};
    use crate::hypergraph::shrink_to_degree;

    #[test]
    fn target_colour_values() {
        assert_eq!(lll_target_colours(3, 3), 1);
        assert_eq!(lll_target_colours(2, 100), 9);
        assert_eq!(lll_target_colours(7, 1), 1);
        assert_eq!(lll_target_colours(3, 60), 5);
    }

    #[test]
    fn condition_values() {
        assert!(lll_condition_holds(2, 100, 9));
        assert!(!lll_condition_holds(3, 3, 3));
        assert!(lll_condition_holds(3, 60, 5));
        assert!(!lll_condition_holds(3, 60, 8));
        assert!(lll_condition_holds(5, 5, 1));
    }

    #[test]
    fn single_colour_is_trivial() {
        let h = gen_fano();
        let d = moser_tardos_decompose(&h, &LllConfig::new(1, 0)).unwrap();
        assert_eq!(d.k, 1);
    }

    #[test]
    fn rejects_impossible_requests() {
        let h = gen_fano();
        assert!(matches!(
            moser_tardos_decompose(&h, &LllConfig::new(4, 0)),
            Err(Error::TooManyColours { .. })
        ));
        let iso = Hypergraph::new(2, vec![vec![0]]).unwrap();
        assert_eq!(
            moser_tardos_decompose(&iso, &LllConfig::new(1, 0)),
            Err(Error::IsolatedVertex(1)).map(|d: CoverDecomposition| d)
        );
    }

    #[test]
    fn replicated_fano_is_deterministic() {
        let h = shrink_to_degree(&replicate(&gen_fano(), 20).unwrap(), 60).unwrap();
        let cfg = LllConfig::new(lll_target_colours(3, 60), 7);
        let a = moser_tardos_decompose(&h, &cfg).unwrap();
        let b = moser_tardos_decompose(&h, &cfg).unwrap();
        assert_eq!(a, b);
        assert!(verify_cover_decomposition(&h, &a));
    }

    #[test]
    fn cap_is_reported() {
        let h = replicate(&gen_fano(), 3).unwrap();
        let cfg = LllConfig {
            colours: 3,
            seed: 1,
            max_resamples: Some(1),
        };
        // Three colours over degree-9 vertices almost surely leave a gap initially.
        let r = moser_tardos_decompose(&h, &cfg);
        assert!(r.is_ok() || r == Err(Error::ResampleCapExceeded { cap: 1 }));
    }
}
