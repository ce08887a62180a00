use rand::seq::index;

use crate::augment::AugmentSet;
use crate::error::{Error, Result};
use crate::graph::{DiGraph, Direction, Vertex};
use crate::parexec::{parallel_map, CostMeter};
use crate::rng::{stream, tag};
use crate::search::reach_set;

/// Sample `sample_size` vertices without replacement and connect every
/// ordered sampled pair `(u, v)` where `u` reaches `v`.
pub fn folklore_shortcut(g: &DiGraph, sample_size: usize, seed: u64) -> Result<AugmentSet> {
    if sample_size > g.n() {
        return Err(Error::InvalidParam(format!("sample size {sample_size} exceeds n = {}", g.n())));
    }
    let mut rng = stream(seed, &[tag("folklore_shortcut"), g.n() as u64, sample_size as u64]);
    let mut sample: Vec<Vertex> = index::sample(&mut rng, g.n(), sample_size).into_iter().map(|v| v as Vertex).collect();
    sample.sort_unstable();
    let mut in_sample = vec![false; g.n()];
    for &v in &sample {
        in_sample[v as usize] = true;
    }
    let mut meter = CostMeter::new(g.n());
    let rows = parallel_map(&mut meter, &sample, |&u, m| {
        reach_set(g, u, Direction::Forward, m)
            .into_iter()
            .filter(|&v| v != u && in_sample[v as usize])
            .map(|v| (u, v))
            .collect::<Vec<_>>()
    });
    Ok(AugmentSet::from_vertex_pairs(g.n(), rows.concat()))
}
