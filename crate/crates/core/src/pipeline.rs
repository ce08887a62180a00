//! End-to-end uses of the augmentations: reachability by BFS on `G ∪ H`, and
//! (1+ε)-approximate single-source distances by rounded searches on `G ∪ H`.

use num_rational::Ratio;
use serde::Serialize;

use crate::augment::AugmentSet;
use crate::eps::Eps;
use crate::error::{Error, Result};
use crate::graph::{DiGraph, Vertex, WDiGraph};
use crate::hopset::{cfr_build, CfrOptions, HopsetParams};
use crate::parexec::{scoped_parallel, CostMeter};
use crate::search::{par_bfs, rounded_bounded_search, UNREACHED};
use crate::shortcut::{build_shortcut, BuildParams};
use crate::verify::{verify_hopset_strict, VerifyConfig};

fn check_source(n: usize, s: Vertex) -> Result<()> {
    if s as usize >= n {
        return Err(Error::VertexOutOfRange { vertex: s as u64, n });
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct ReachOutput {
    /// Ascending.
    pub reachable: Vec<Vertex>,
    pub size_h: usize,
    pub levels: usize,
    pub build: CostMeter,
    pub search: CostMeter,
}

/// Build a shortcut set, then run a parallel BFS from `s` on `G ∪ H`.
pub fn reach(g: &DiGraph, s: Vertex, params: &BuildParams, tc_prune: bool) -> Result<ReachOutput> {
    check_source(g.n(), s)?;
    let built = build_shortcut(g, params, tc_prune)?;
    let mut out = reach_with(g, s, &built.h)?;
    out.build = built.meter;
    Ok(out)
}

/// Parallel BFS from `s` on `G ∪ h`.
pub fn reach_with(g: &DiGraph, s: Vertex, h: &AugmentSet) -> Result<ReachOutput> {
    check_source(g.n(), s)?;
    let gu = g.union(h);
    let mut search = CostMeter::new(g.n());
    let d = par_bfs(&gu, s, &mut search);
    Ok(ReachOutput {
        reachable: d.reached().map(|v| v as Vertex).collect(),
        size_h: h.len(),
        levels: d.levels,
        build: CostMeter::new(g.n()),
        search,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum HopboundSource {
    Given,
    /// Measured by the all-pairs oracle at the hopset's ε.
    Measured,
    /// Graph too large to measure; every simple path qualifies.
    Fallback,
}

#[derive(Clone, Copy, Debug)]
pub struct SsspOptions {
    pub eps: Eps,
    pub hopbound: Option<u64>,
    pub trunc_prune: bool,
    pub oracle_cap: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SsspOutput {
    /// `UNREACHED` for unreachable vertices.
    pub dist: Vec<u64>,
    pub h0: u64,
    pub h0_source: HopboundSource,
    #[serde(serialize_with = "ser_display")]
    pub eps_hopset: Eps,
    pub size_h: usize,
    pub guesses: usize,
    pub build: CostMeter,
    pub search: CostMeter,
}

fn ser_display<S: serde::Serializer>(e: &Eps, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&e.to_string())
}

/// Distance guesses `2^j`, `j ∈ [−1, ⌊log₂(n·W)⌋]`.
pub(crate) fn guesses(n: usize, w: u64) -> Vec<Ratio<u64>> {
    let nw = (n.max(1) as u128) * (w.max(1) as u128);
    let j_max = 127 - nw.leading_zeros() as i32;
    (-1..=j_max)
        .map(|j| if j < 0 { Ratio::new(1, 2) } else { Ratio::from_integer(1u64 << j) })
        .collect()
}

/// Approximate distances from `s` on `gu = G ∪ H`: one rounded bounded
/// search per distance guess, minimum over guesses, rounded down. Never below
/// the true distance; at most `(1 + ε)·d` when `gu` holds a path within
/// `(1 + 8ε/9)·d` using at most `h0` hops.
pub fn approx_distances(gu: &WDiGraph, s: Vertex, eps: Eps, h0: u64, w_base: u64, meter: &mut CostMeter) -> Result<Vec<u64>> {
    check_source(gu.n(), s)?;
    let tasks: Vec<_> = guesses(gu.n(), w_base)
        .into_iter()
        .map(|delta| move |m: &mut CostMeter| rounded_bounded_search(gu, s, delta, eps, h0, m))
        .collect();
    let mut best = vec![UNREACHED; gu.n()];
    for res in scoped_parallel(meter, tasks) {
        let r = res?;
        for (v, b) in best.iter_mut().enumerate() {
            if let Some(d) = r.floor_length(v) {
                *b = (*b).min(d);
            }
        }
    }
    meter.charge_round(gu.n() as u64);
    Ok(best)
}

/// Hopset at `8ε/9`, hopbound `h0`, then [`approx_distances`] at `ε`.
pub fn sssp(g: &WDiGraph, s: Vertex, params: &HopsetParams, opts: &SsspOptions) -> Result<SsspOutput> {
    check_source(g.n(), s)?;
    if !opts.eps.is_below_one() {
        return Err(Error::InvalidParam(format!("eps must lie in (0, 1), got {}", opts.eps)));
    }
    let eps_h = opts.eps.scale(Ratio::new(8, 9))?;
    let hp = HopsetParams { eps: eps_h, ..params.clone() };
    let built = cfr_build(g, &hp, &CfrOptions { trunc_prune: opts.trunc_prune, ..Default::default() })?;
    let (h0, h0_source) = match opts.hopbound {
        Some(h) if h >= 1 => (h, HopboundSource::Given),
        Some(_) => return Err(Error::InvalidParam("hopbound must be at least 1".into())),
        None if g.n() <= opts.oracle_cap => {
            let cfg = VerifyConfig { oracle_cap: opts.oracle_cap, ..Default::default() };
            let rep = verify_hopset_strict(g, &built.h, eps_h, &cfg)?;
            (rep.beta_meas.max(1) as u64, HopboundSource::Measured)
        }
        None => (g.n().saturating_sub(1).max(1) as u64, HopboundSource::Fallback),
    };
    let gu = g.union(&built.h);
    let mut search = CostMeter::new(g.n());
    let dist = approx_distances(&gu, s, opts.eps, h0, g.max_weight(), &mut search)?;
    Ok(SsspOutput {
        dist,
        h0,
        h0_source,
        eps_hopset: eps_h,
        size_h: built.h.len(),
        guesses: guesses(g.n(), g.max_weight()).len(),
        build: built.meter,
        search,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::gen::{gen_path, gen_random_dag, randomize_weights};
    use crate::graph::Direction;
    use crate::params::Preset;
    use crate::search::{bfs, dijkstra};

    #[test]
    fn reach_on_chain() {
        let g = gen_path(4);
        let out = reach(&g, 0, &BuildParams::new(Preset::Desk, 4, 3, 0), true).unwrap();
        assert_eq!(out.reachable, vec![0, 1, 2, 3]);
        assert!(reach(&g, 9, &BuildParams::new(Preset::Desk, 4, 3, 0), true).is_err());
    }

    #[test]
    fn reach_equals_bare_bfs() {
        for seed in 0..5 {
            let g = gen_random_dag(60, 150, seed).unwrap();
            let out = reach(&g, 0, &BuildParams::new(Preset::Desk, 60, 150, seed), true).unwrap();
            let want: Vec<Vertex> = bfs(&g, 0, Direction::Forward, None).reached().map(|v| v as Vertex).collect();
            assert_eq!(out.reachable, want);
        }
    }

    #[test]
    fn guess_range() {
        assert_eq!(guesses(1, 1).len(), 2);
        assert_eq!(guesses(4, 4).len(), 6);
    }

    #[test]
    fn sssp_within_allowance() {
        let eps = Eps::new(1, 4).unwrap();
        for seed in 0..4 {
            let g = randomize_weights(&gen_random_dag(40, 120, seed).unwrap(), 16, seed).unwrap();
            let p = HopsetParams::new(Preset::Desk, 40, 120, eps, seed);
            let opts = SsspOptions { eps, hopbound: None, trunc_prune: true, oracle_cap: 512 };
            let out = sssp(&g, 0, &p, &opts).unwrap();
            let exact = dijkstra(&g, 0, Direction::Forward, None).dist;
            for (a, d) in out.dist.iter().zip(&exact) {
                if *d == UNREACHED {
                    assert_eq!(*a, UNREACHED);
                } else {
                    assert!(*d <= *a && *a <= eps.allowance(*d), "{a} vs {d}");
                }
            }
            assert_eq!(out.h0_source, HopboundSource::Measured);
        }
    }
}
