use serde::Serialize;

use super::{verify_shortcut_auto, VerifyConfig};
use crate::augment::AugmentSet;
use crate::error::Result;
use crate::graph::gen::gen_spine_dag;
use crate::graph::{DiGraph, Vertex};
use crate::params::Preset;
use crate::parexec::CostMeter;
use crate::search::par_bfs;
use crate::shortcut::{build_shortcut, folklore_shortcut, BuildParams};

/// What gets added to each sweep graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SweepBuilder {
    Bare,
    Folklore { sample: usize },
    Jls { preset: Preset, tc_prune: bool, rho: Option<u64> },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub m: usize,
    pub seeds: usize,
    pub median_beta: f64,
    pub median_size_h: f64,
    pub median_build_work: f64,
    pub median_build_span: f64,
    /// `par_bfs` span on `G ∪ H` from the graph's sources.
    pub median_bfs_span: f64,
    pub median_bfs_span_bare: f64,
    /// How β was measured (exact or sampled).
    pub mode: String,
}

/// `m ∈ {n, ⌊n^1.5⌋, n²}`, each clamped to the densest DAG on `n` vertices.
pub fn standard_densities(n: usize) -> Vec<usize> {
    let max = n * n.saturating_sub(1) / 2;
    let n32 = ((n as f64).powf(1.5)).floor() as usize;
    [n, n32, n * n].iter().map(|&m| m.min(max).max(n.saturating_sub(1))).collect()
}

pub fn median(xs: &[u64]) -> f64 {
    if xs.is_empty() {
        return 0.0;
    }
    let mut v = xs.to_vec();
    v.sort_unstable();
    let k = v.len();
    if k % 2 == 1 {
        v[k / 2] as f64
    } else {
        (v[k / 2 - 1] as f64 + v[k / 2] as f64) / 2.0
    }
}

/// Largest `par_bfs` span over the in-degree-zero vertices (at most 16,
/// smallest ids first); vertex 0 if there are none.
fn source_span(g: &DiGraph) -> u64 {
    let mut sources: Vec<Vertex> = (0..g.n() as Vertex).filter(|&v| g.predecessors(v).is_empty()).take(16).collect();
    if sources.is_empty() && g.n() > 0 {
        sources.push(0);
    }
    sources
        .into_iter()
        .map(|s| {
            let mut m = CostMeter::new(g.n());
            par_bfs(g, s, &mut m);
            m.span()
        })
        .max()
        .unwrap_or(0)
}

/// One row per density: medians over `seeds` of β, |H|, construction meter
/// and BFS span, on spine DAGs (a random Hamiltonian path plus random forward
/// edges) so every density starts from hop diameter `n − 1`.
pub fn density_sweep(
    n: usize,
    densities: &[usize],
    builder: SweepBuilder,
    seeds: &[u64],
    cfg: &VerifyConfig,
) -> Result<Vec<SweepRow>> {
    let mut rows = Vec::new();
    for &m in densities {
        let mut cols: [Vec<u64>; 6] = Default::default();
        let mut mode = String::new();
        for &seed in seeds {
            let g = gen_spine_dag(n, m, seed)?;
            let (h, meter) = match builder {
                SweepBuilder::Bare => (AugmentSet::empty(n), CostMeter::new(n)),
                SweepBuilder::Folklore { sample } => (folklore_shortcut(&g, sample.min(n), seed)?, CostMeter::new(n)),
                SweepBuilder::Jls { preset, tc_prune, rho } => {
                    let mut p = BuildParams::new(preset, n, g.m(), seed);
                    if let Some(r) = rho {
                        p = p.with_rho(r);
                    }
                    let out = build_shortcut(&g, &p, tc_prune)?;
                    (out.h, out.meter)
                }
            };
            let rep = verify_shortcut_auto(&g, &h, &VerifyConfig { seed, ..*cfg })?;
            mode = rep.mode.clone();
            let gu = g.union(&h);
            for (col, x) in cols.iter_mut().zip([
                rep.beta_meas as u64,
                h.len() as u64,
                meter.work(),
                meter.span(),
                source_span(&gu),
                source_span(&g),
            ]) {
                col.push(x);
            }
        }
        rows.push(SweepRow {
            m,
            seeds: seeds.len(),
            median_beta: median(&cols[0]),
            median_size_h: median(&cols[1]),
            median_build_work: median(&cols[2]),
            median_build_span: median(&cols[3]),
            median_bfs_span: median(&cols[4]),
            median_bfs_span_bare: median(&cols[5]),
            mode,
        });
    }
    Ok(rows)
}
