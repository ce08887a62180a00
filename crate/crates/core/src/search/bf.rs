use super::{WeightedDistances, UNREACHED};
use crate::graph::{Direction, Vertex, WDiGraph};

/// Shortest lengths using at most `h` hops: `h` Jacobi rounds of relaxation,
/// each reading only the previous round's values. Stops early at a fixed point.
pub fn hop_limited_bf(g: &WDiGraph, s: Vertex, h: usize) -> WeightedDistances {
    let mut cur = vec![UNREACHED; g.n()];
    cur[s as usize] = 0;
    let mut active = vec![s];
    for _ in 0..h {
        if active.is_empty() {
            break;
        }
        let mut next = cur.clone();
        let mut touched = Vec::new();
        for &u in &active {
            let du = cur[u as usize];
            let (adj, ws) = g.neighbors(u, Direction::Forward);
            for (&v, &w) in adj.iter().zip(ws) {
                let nd = du.saturating_add(w);
                if nd < next[v as usize] {
                    if next[v as usize] == cur[v as usize] {
                        touched.push(v);
                    }
                    next[v as usize] = nd;
                }
            }
        }
        cur = next;
        active = touched;
    }
    WeightedDistances { dist: cur }
}
