//! Shortcut sets: the folklore sampler and the recursive pivot construction
//! with transitive-closure pruning of small balls.

mod folklore;
mod jls;

use serde::Serialize;

pub use folklore::folklore_shortcut;
pub use jls::jls_build;

use crate::augment::AugmentSet;
use crate::error::{Error, Result};
use crate::graph::{scc_condense, DiGraph, Vertex};
use crate::params::{floor_root, log2n, Preset};
use crate::parexec::CostMeter;

pub const DEFAULT_OMEGA: f64 = 2.371339;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BuildParams {
    pub k: u32,
    pub rho: u64,
    /// Multiplies `k^{r+1}·log n / n` in the level-`r` pivot probability.
    pub sample_c: f64,
    /// Multiplies `ρ²` in the ball-size threshold for closure pruning.
    pub tc_threshold_c: f64,
    pub omega: f64,
    pub preset: Preset,
    pub seed: u64,
}

impl BuildParams {
    /// Parameters for a graph with `n` vertices and `m` edges; `ρ` comes from
    /// [`shortcut_rho_preset`].
    pub fn new(preset: Preset, n: usize, m: usize, seed: u64) -> Self {
        let omega = DEFAULT_OMEGA;
        let rho = shortcut_rho_preset(n, m, omega);
        match preset {
            Preset::Paper => {
                let k = (log2n(n).ceil() as u32).max(2);
                let l = log2n(n);
                BuildParams {
                    k,
                    rho,
                    sample_c: 100.0,
                    tc_threshold_c: (k as f64).powi(2) * l * l,
                    omega,
                    preset,
                    seed,
                }
            }
            Preset::Desk => BuildParams { k: 4, rho, sample_c: 1.0, tc_threshold_c: 1.0, omega, preset, seed },
        }
    }

    pub fn with_rho(mut self, rho: u64) -> Self {
        self.rho = rho;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.k < 2 {
            return Err(Error::InvalidParam(format!("k must be at least 2, got {}", self.k)));
        }
        if self.rho < 1 {
            return Err(Error::InvalidParam("rho must be at least 1".into()));
        }
        if !(self.sample_c > 0.0 && self.tc_threshold_c > 0.0) {
            return Err(Error::InvalidParam("sampling and threshold constants must be positive".into()));
        }
        if !(2.0..=3.0).contains(&self.omega) {
            return Err(Error::InvalidParam(format!("omega must lie in [2, 3], got {}", self.omega)));
        }
        Ok(())
    }

    /// Pivot probability at level `r` for a base graph on `n` vertices.
    pub fn pivot_probability(&self, n: usize, r: u32) -> f64 {
        let p = self.sample_c * (self.k as f64).powi(r as i32 + 1) * log2n(n) / n.max(1) as f64;
        p.min(1.0)
    }

    /// Balls of at most this many vertices are closed by repeated squaring.
    pub fn tc_threshold(&self) -> usize {
        let t = self.tc_threshold_c * (self.rho as f64).powi(2);
        t.floor().min(usize::MAX as f64) as usize
    }
}

/// `max(1, ⌊(m/n)^{1/(2ω−2)}⌋)`.
pub fn shortcut_rho_preset(n: usize, m: usize, omega: f64) -> u64 {
    if n == 0 {
        return 1;
    }
    floor_root(m as f64 / n as f64, 2.0 * omega - 2.0)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LevelStats {
    pub subproblems: u64,
    pub pivots: u64,
    pub max_ball: u64,
    pub prune_calls: u64,
    /// Metered work of the closure calls alone.
    pub prune_work: u64,
    /// Distinct edges first produced at this level.
    pub edges_added: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RecursionTrace {
    pub levels: Vec<LevelStats>,
    /// Edges from the SCC stars (zero when the input was already a DAG).
    pub star_edges: u64,
}

impl RecursionTrace {
    pub(crate) fn level_mut(&mut self, r: u32) -> &mut LevelStats {
        let r = r as usize;
        if self.levels.len() <= r {
            self.levels.resize(r + 1, LevelStats::default());
        }
        &mut self.levels[r]
    }

    pub(crate) fn merge(&mut self, other: &RecursionTrace) {
        for (r, s) in other.levels.iter().enumerate() {
            let t = self.level_mut(r as u32);
            t.subproblems += s.subproblems;
            t.pivots += s.pivots;
            t.max_ball = t.max_ball.max(s.max_ball);
            t.prune_calls += s.prune_calls;
            t.prune_work += s.prune_work;
            t.edges_added += s.edges_added;
        }
        self.star_edges += other.star_edges;
    }

    pub fn total_edges(&self) -> u64 {
        self.levels.iter().map(|l| l.edges_added).sum::<u64>() + self.star_edges
    }

    pub fn prune_work(&self) -> u64 {
        self.levels.iter().map(|l| l.prune_work).sum()
    }
}

#[derive(Clone, Debug)]
pub struct ShortcutOutput {
    pub h: AugmentSet,
    pub trace: RecursionTrace,
    pub meter: CostMeter,
    pub components: usize,
}

/// Shortcut set for an arbitrary digraph: SCCs are contracted, the recursion
/// runs on the condensation, and each SCC gets a bidirected star through its
/// minimum vertex.
pub fn build_shortcut(g: &DiGraph, params: &BuildParams, tc_prune: bool) -> Result<ShortcutOutput> {
    params.validate()?;
    let mut meter = CostMeter::new(g.n());
    let scc = scc_condense(g);
    meter.charge(g.n() as u64 + g.m() as u64);
    let (hc, mut trace) = jls::run(&scc.condensed, params, tc_prune, &mut meter)?;
    let mut pairs: Vec<(Vertex, Vertex)> = hc
        .pairs()
        .map(|(a, b)| (scc.centers[a as usize], scc.centers[b as usize]))
        .collect();
    pairs.extend(scc.star_edges.pairs());
    trace.star_edges = scc.star_edges.len() as u64;
    let h = AugmentSet::from_vertex_pairs(g.n(), pairs);
    debug_assert_eq!(trace.total_edges(), h.len() as u64);
    Ok(ShortcutOutput { h, trace, meter, components: scc.count() })
}
