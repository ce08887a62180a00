use std::sync::atomic::{AtomicU32, Ordering};

use rayon::prelude::*;

use super::{HopDistances, UNREACHED_HOPS};
use crate::graph::{DiGraph, Direction, Vertex};
use crate::parexec::CostMeter;

/// Frontiers smaller than this are expanded on the calling thread; the meter
/// charges the same either way.
const PAR_FRONTIER: usize = 2048;

pub fn bfs(g: &DiGraph, s: Vertex, dir: Direction, hop_cap: Option<u32>) -> HopDistances {
    let mut dist = vec![UNREACHED_HOPS; g.n()];
    dist[s as usize] = 0;
    let mut frontier = vec![s];
    let mut levels = 0;
    let mut depth = 0u32;
    while !frontier.is_empty() {
        levels += 1;
        if hop_cap.is_some_and(|c| depth >= c) {
            break;
        }
        let mut next = Vec::new();
        for &u in &frontier {
            for &v in g.neighbors(u, dir) {
                if dist[v as usize] == UNREACHED_HOPS {
                    dist[v as usize] = depth + 1;
                    next.push(v);
                }
            }
        }
        frontier = next;
        depth += 1;
    }
    HopDistances { dist, levels }
}

pub fn par_bfs(g: &DiGraph, s: Vertex, meter: &mut CostMeter) -> HopDistances {
    par_bfs_dir(g, s, Direction::Forward, meter)
}

/// Level-synchronous BFS. Each level is one parallel round: one unit per
/// frontier vertex plus one per adjacency scan step, and a join barrier.
pub fn par_bfs_dir(g: &DiGraph, s: Vertex, dir: Direction, meter: &mut CostMeter) -> HopDistances {
    let dist: Vec<AtomicU32> = (0..g.n()).map(|_| AtomicU32::new(UNREACHED_HOPS)).collect();
    dist[s as usize].store(0, Ordering::Relaxed);
    let mut frontier = vec![s];
    let mut levels = 0;
    let mut depth = 0u32;
    while !frontier.is_empty() {
        levels += 1;
        let scans: u64 = frontier.iter().map(|&u| g.neighbors(u, dir).len() as u64).sum();
        meter.charge_round(frontier.len() as u64 + scans);
        let claim = |v: Vertex| {
            dist[v as usize]
                .compare_exchange(UNREACHED_HOPS, depth + 1, Ordering::Relaxed, Ordering::Relaxed)
                .is_ok()
        };
        let mut next: Vec<Vertex> = if frontier.len() >= PAR_FRONTIER {
            frontier
                .par_iter()
                .flat_map_iter(|&u| g.neighbors(u, dir).iter().copied().filter(|&v| claim(v)))
                .collect()
        } else {
            frontier
                .iter()
                .flat_map(|&u| g.neighbors(u, dir).iter().copied().filter(|&v| claim(v)))
                .collect()
        };
        // Which thread claimed a vertex is racy; the frontier as a set is not.
        next.sort_unstable();
        frontier = next;
        depth += 1;
    }
    HopDistances { dist: dist.into_iter().map(AtomicU32::into_inner).collect(), levels }
}

/// Vertices reachable from `s` (including `s`) in ascending id order. Charges
/// one unit per visited vertex and per adjacency scan step, sequentially.
pub fn reach_set(g: &DiGraph, s: Vertex, dir: Direction, meter: &mut CostMeter) -> Vec<Vertex> {
    let mut seen = vec![false; g.n()];
    seen[s as usize] = true;
    let mut stack = vec![s];
    let mut out = Vec::new();
    let mut units = 0u64;
    while let Some(u) = stack.pop() {
        out.push(u);
        let nb = g.neighbors(u, dir);
        units += 1 + nb.len() as u64;
        for &v in nb {
            if !seen[v as usize] {
                seen[v as usize] = true;
                stack.push(v);
            }
        }
    }
    meter.charge(units);
    out.sort_unstable();
    out
}
