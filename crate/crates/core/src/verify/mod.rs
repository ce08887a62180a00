//! Brute-force oracles for shortcut sets and hopsets, and the density sweep.

mod hopset;
mod sweep;

use std::collections::BTreeMap;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

pub use hopset::{min_hops_within, verify_hopset, verify_hopset_strict, verify_hopset_with};
pub use sweep::{density_sweep, median, standard_densities, SweepBuilder, SweepRow};

use crate::augment::AugmentSet;
use crate::boolmat::BoolMat;
use crate::error::{Error, Result};
use crate::graph::{DiGraph, Direction, Vertex};
use crate::parexec::CostMeter;
use crate::rng::{stream, tag};
use crate::search::bfs;

pub const DEFAULT_ORACLE_CAP: usize = 512;
pub const DEFAULT_PAIRS_SAMPLE: usize = 512;

/// Limits for the all-pairs oracles and the pair sampler used beyond them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyConfig {
    pub oracle_cap: usize,
    pub pairs_sample: usize,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { oracle_cap: DEFAULT_ORACLE_CAP, pairs_sample: DEFAULT_PAIRS_SAMPLE, seed: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub kind: String,
    /// `exact`, or `sampled(N)` when β was estimated over N pairs.
    pub mode: String,
    pub n: usize,
    pub m: usize,
    pub size_h: usize,
    pub reach_preserved: bool,
    pub edges_valid: bool,
    /// Hopsets only: all-pairs distances in `G ∪ H` equal those in `G`.
    pub dist_preserved: Option<bool>,
    /// Hopsets only: every related pair met its allowance within `n − 1` hops.
    pub approx_holds: Option<bool>,
    pub beta_meas: u32,
    /// Lexicographically first pair attaining `beta_meas`.
    pub worst_pair: Option<(Vertex, Vertex)>,
    pub eps_used: Option<String>,
    /// Up to eight offending edges.
    pub invalid_edges: Vec<(Vertex, Vertex)>,
    /// Snapshot of the construction's meter, when one was attached.
    pub work: Option<u64>,
    pub span: Option<u64>,
}

impl VerifyReport {
    pub fn with_meter(mut self, meter: &CostMeter) -> Self {
        self.work = Some(meter.work());
        self.span = Some(meter.span());
        self
    }

    /// Names of the violated properties; empty when everything held.
    pub fn failures(&self) -> Vec<&'static str> {
        let mut f = Vec::new();
        if !self.edges_valid {
            f.push("edges_valid");
        }
        if !self.reach_preserved {
            f.push("reach_preserved");
        }
        if self.dist_preserved == Some(false) {
            f.push("dist_preserved");
        }
        if self.approx_holds == Some(false) {
            f.push("approx_holds");
        }
        f
    }

    pub fn ok(&self) -> bool {
        self.failures().is_empty()
    }
}

pub(crate) fn guard(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::OracleCap { n, cap });
    }
    Ok(())
}

/// Reflexive reachability matrix by one BFS per vertex.
pub fn tc_oracle(g: &DiGraph, cap: usize) -> Result<BoolMat> {
    guard(g.n(), cap)?;
    let rows: Vec<Vec<usize>> = (0..g.n() as Vertex)
        .into_par_iter()
        .map(|s| bfs(g, s, Direction::Forward, None).reached().collect())
        .collect();
    let mut tc = BoolMat::zeros(g.n());
    for (s, row) in rows.into_iter().enumerate() {
        for t in row {
            tc.set(s, t, true);
        }
    }
    Ok(tc)
}

fn first_invalid(h: &AugmentSet, related: impl Fn(Vertex, Vertex) -> bool) -> Vec<(Vertex, Vertex)> {
    h.pairs().filter(|&(u, v)| !related(u, v)).take(8).collect()
}

/// Exact check of a shortcut set against the all-pairs oracle.
pub fn verify_shortcut(g: &DiGraph, h: &AugmentSet) -> Result<VerifyReport> {
    verify_shortcut_with(g, h, &VerifyConfig::default())
}

pub fn verify_shortcut_with(g: &DiGraph, h: &AugmentSet, cfg: &VerifyConfig) -> Result<VerifyReport> {
    guard(g.n(), cfg.oracle_cap)?;
    check_n(g.n(), h)?;
    let n = g.n();
    let gu = g.union(h);
    let tc = tc_oracle(g, cfg.oracle_cap)?;
    let invalid = first_invalid(h, |u, v| tc.get(u as usize, v as usize));

    // Per source: does G ∪ H reach exactly the same set, and the farthest
    // related target by hops (first in id order on ties).
    let per_source: Vec<(bool, u32, Vertex)> = (0..n as Vertex)
        .into_par_iter()
        .map(|s| {
            let d = bfs(&gu, s, Direction::Forward, None);
            let same = (0..n).all(|t| d.get(t).is_some() == tc.get(s as usize, t));
            let mut best = (0u32, s);
            for t in tc.row_ones(s as usize) {
                if t != s as usize {
                    let hops = d.dist[t];
                    if hops > best.0 {
                        best = (hops, t as Vertex);
                    }
                }
            }
            (same, best.0, best.1)
        })
        .collect();
    let mut beta = 0u32;
    let mut worst = None;
    for (s, &(_, b, t)) in per_source.iter().enumerate() {
        if b > beta {
            beta = b;
            worst = Some((s as Vertex, t));
        }
    }
    Ok(VerifyReport {
        kind: "shortcut".into(),
        mode: "exact".into(),
        n,
        m: g.m(),
        size_h: h.len(),
        reach_preserved: per_source.iter().all(|p| p.0),
        edges_valid: invalid.is_empty(),
        dist_preserved: None,
        approx_holds: None,
        beta_meas: beta,
        worst_pair: worst,
        eps_used: None,
        invalid_edges: invalid,
        work: None,
        span: None,
    })
}

pub(crate) fn check_n(n: usize, h: &AugmentSet) -> Result<()> {
    if h.n() != n {
        return Err(Error::DimensionMismatch { left: n, right: h.n() });
    }
    Ok(())
}

/// Shortcut check for graphs beyond the oracle cap: β is the maximum hop
/// distance in `G ∪ H` over `pairs` seeded random related pairs, reach
/// preservation is checked from the sampled sources, and edge validity is
/// checked exactly by one BFS per distinct edge tail.
pub fn verify_shortcut_sampled(g: &DiGraph, h: &AugmentSet, pairs: usize, seed: u64) -> Result<VerifyReport> {
    check_n(g.n(), h)?;
    let n = g.n();
    let gu = g.union(h);

    let mut tails: Vec<Vertex> = h.pairs().map(|(u, _)| u).collect();
    tails.dedup();
    let reach: BTreeMap<Vertex, Vec<bool>> = tails
        .par_iter()
        .map(|&u| {
            let d = bfs(g, u, Direction::Forward, None);
            (u, (0..n).map(|t| d.get(t).is_some()).collect())
        })
        .collect();
    let invalid = first_invalid(h, |u, v| reach[&u][v as usize]);

    let mut rng = stream(seed, &[tag("verify_sampled"), n as u64, pairs as u64]);
    let mut cache: BTreeMap<Vertex, (Vec<Vertex>, Vec<u32>, bool)> = BTreeMap::new();
    let mut beta = 0u32;
    let mut worst = None;
    let mut found = 0usize;
    let mut attempts = 0usize;
    while n > 0 && found < pairs && attempts < pairs.saturating_mul(8) {
        attempts += 1;
        let s = rng.gen_range(0..n) as Vertex;
        let (targets, hops, _) = cache.entry(s).or_insert_with(|| {
            let base = bfs(g, s, Direction::Forward, None);
            let aug = bfs(&gu, s, Direction::Forward, None);
            let same = (0..n).all(|t| base.get(t).is_some() == aug.get(t).is_some());
            let targets = base.reached().filter(|&t| t != s as usize).map(|t| t as Vertex).collect();
            (targets, aug.dist, same)
        });
        if targets.is_empty() {
            continue;
        }
        let t = targets[rng.gen_range(0..targets.len())];
        found += 1;
        let b = hops[t as usize];
        if b > beta || (b == beta && worst.is_some_and(|w| (s, t) < w)) {
            beta = b;
            worst = Some((s, t));
        }
    }
    Ok(VerifyReport {
        kind: "shortcut".into(),
        mode: format!("sampled({found})"),
        n,
        m: g.m(),
        size_h: h.len(),
        reach_preserved: cache.values().all(|c| c.2),
        edges_valid: invalid.is_empty(),
        dist_preserved: None,
        approx_holds: None,
        beta_meas: beta,
        worst_pair: worst,
        eps_used: None,
        invalid_edges: invalid,
        work: None,
        span: None,
    })
}

/// Exact below the oracle cap, sampled above it.
pub fn verify_shortcut_auto(g: &DiGraph, h: &AugmentSet, cfg: &VerifyConfig) -> Result<VerifyReport> {
    if g.n() <= cfg.oracle_cap {
        verify_shortcut_with(g, h, cfg)
    } else {
        verify_shortcut_sampled(g, h, cfg.pairs_sample, cfg.seed)
    }
}
