//! Single-source searches used by the builders and the oracles.

mod bf;
mod bfs;
mod dijkstra;
mod rounded;

pub use bf::hop_limited_bf;
pub use bfs::{bfs, par_bfs, par_bfs_dir, reach_set};
pub use dijkstra::{dijkstra, dijkstra_ball, dijkstra_metered, trunc_nearest, trunc_sssp};
pub(crate) use rounded::units_of;
pub use rounded::{rounded_bounded_search, rounding_unit, unit_bounded_search, RoundedDistances};

/// Sentinel for a vertex the search never reached; larger than any distance.
pub const UNREACHED: u64 = u64::MAX;
pub const UNREACHED_HOPS: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopDistances {
    pub dist: Vec<u32>,
    /// Number of non-empty frontiers expanded.
    pub levels: usize,
}

impl HopDistances {
    pub fn get(&self, v: usize) -> Option<u32> {
        let d = self.dist[v];
        (d != UNREACHED_HOPS).then_some(d)
    }

    pub fn reached(&self) -> impl Iterator<Item = usize> + '_ {
        self.dist.iter().enumerate().filter(|(_, &d)| d != UNREACHED_HOPS).map(|(v, _)| v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedDistances {
    pub dist: Vec<u64>,
}

impl WeightedDistances {
    pub fn get(&self, v: usize) -> Option<u64> {
        let d = self.dist[v];
        (d != UNREACHED).then_some(d)
    }
}
