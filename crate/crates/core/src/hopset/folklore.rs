use rand::seq::index;

use crate::augment::AugmentSet;
use crate::error::{Error, Result};
use crate::graph::{Direction, Vertex, WDiGraph};
use crate::parexec::{parallel_map, CostMeter};
use crate::rng::{stream, tag};
use crate::search::dijkstra_metered;

/// Sample `sample_size` vertices and link every ordered reachable sampled
/// pair with its exact distance.
pub fn folklore_hopset(g: &WDiGraph, sample_size: usize, seed: u64) -> Result<AugmentSet> {
    if sample_size > g.n() {
        return Err(Error::InvalidParam(format!("sample size {sample_size} exceeds n = {}", g.n())));
    }
    let mut rng = stream(seed, &[tag("folklore_hopset"), g.n() as u64, sample_size as u64]);
    let mut sample: Vec<Vertex> = index::sample(&mut rng, g.n(), sample_size).into_iter().map(|v| v as Vertex).collect();
    sample.sort_unstable();
    let mut meter = CostMeter::new(g.n());
    let rows = parallel_map(&mut meter, &sample, |&u, m| {
        let d = dijkstra_metered(g, u, Direction::Forward, None, m);
        sample
            .iter()
            .filter_map(|&v| (v != u).then(|| d.get(v as usize).map(|dv| (u, v, dv))).flatten())
            .collect::<Vec<_>>()
    });
    Ok(AugmentSet::from_vertex_triples(g.n(), rows.concat()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_sample_on_a_weighted_path() {
        let g = WDiGraph::from_edges(3, [(0, 1, 2), (1, 2, 5)]).unwrap();
        let h = folklore_hopset(&g, 3, 0).unwrap();
        assert_eq!(h.weighted().collect::<Vec<_>>(), vec![(0, 1, 2), (0, 2, 7), (1, 2, 5)]);
    }

    #[test]
    fn oversized_sample_rejected() {
        let g = WDiGraph::from_edges(2, [(0, 1, 1)]).unwrap();
        assert!(folklore_hopset(&g, 3, 0).is_err());
    }
}
