use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use super::{WeightedDistances, UNREACHED};
use crate::augment::AugmentSet;
use crate::graph::{Direction, Vertex, WDiGraph};
use crate::parexec::CostMeter;

/// Exact distances up to `cap` (inclusive); everything farther is UNREACHED.
/// The search never pushes a tentative distance above the cap.
pub fn dijkstra(g: &WDiGraph, s: Vertex, dir: Direction, cap: Option<u64>) -> WeightedDistances {
    dijkstra_metered(g, s, dir, cap, &mut CostMeter::default())
}

/// One unit per heap pop and per edge relaxation.
pub fn dijkstra_metered(
    g: &WDiGraph,
    s: Vertex,
    dir: Direction,
    cap: Option<u64>,
    meter: &mut CostMeter,
) -> WeightedDistances {
    let cap = cap.unwrap_or(UNREACHED - 1);
    let mut dist = vec![UNREACHED; g.n()];
    dist[s as usize] = 0;
    let mut heap = BinaryHeap::from([Reverse((0u64, s))]);
    let mut units = 0u64;
    while let Some(Reverse((d, u))) = heap.pop() {
        units += 1;
        if d > dist[u as usize] {
            continue;
        }
        let (adj, ws) = g.neighbors(u, dir);
        units += adj.len() as u64;
        for (&v, &w) in adj.iter().zip(ws) {
            let nd = d.saturating_add(w);
            if nd <= cap && nd < dist[v as usize] {
                dist[v as usize] = nd;
                heap.push(Reverse((nd, v)));
            }
        }
    }
    meter.charge(units);
    WeightedDistances { dist }
}

/// Sparse variant for small balls: `(vertex, distance)` for everything within
/// `cap`, in settle order. Touches only the ball.
pub fn dijkstra_ball(g: &WDiGraph, s: Vertex, dir: Direction, cap: u64, meter: &mut CostMeter) -> Vec<(Vertex, u64)> {
    let mut best: HashMap<Vertex, u64> = HashMap::from([(s, 0)]);
    let mut heap = BinaryHeap::from([Reverse((0u64, s))]);
    let mut out = Vec::new();
    let mut units = 0u64;
    while let Some(Reverse((d, u))) = heap.pop() {
        units += 1;
        if d > best[&u] {
            continue;
        }
        out.push((u, d));
        let (adj, ws) = g.neighbors(u, dir);
        units += adj.len() as u64;
        for (&v, &w) in adj.iter().zip(ws) {
            let nd = d.saturating_add(w);
            if nd > cap {
                continue;
            }
            let e = best.entry(v).or_insert(UNREACHED);
            if nd < *e {
                *e = nd;
                heap.push(Reverse((nd, v)));
            }
        }
    }
    meter.charge(units);
    out
}

/// The `y` vertices `t ≠ v` nearest to `v` in direction `dir`, ordered by
/// `(distance, id)`, with their exact distances.
///
/// Edges out of `u` are only relaxed while at most `y` of `u`'s edges are
/// strictly lighter: otherwise `y` distinct vertices other than `v` are
/// already strictly closer than anything that edge could lead to.
pub fn trunc_nearest(g: &WDiGraph, v: Vertex, dir: Direction, y: usize, meter: &mut CostMeter) -> Vec<(Vertex, u64)> {
    if y == 0 {
        return Vec::new();
    }
    let mut best: HashMap<Vertex, u64> = HashMap::from([(v, 0)]);
    let mut heap = BinaryHeap::from([Reverse((0u64, v))]);
    let mut settled: Vec<(u64, Vertex)> = Vec::new();
    let mut units = 0u64;
    while let Some(&Reverse((d, u))) = heap.peek() {
        if settled.len() >= y && d > settled[y - 1].0 {
            break;
        }
        heap.pop();
        units += 1;
        if d > best[&u] {
            continue;
        }
        if u != v {
            settled.push((d, u));
        }
        let light = g.neighbors_by_weight(u, dir);
        let mut lighter = 0usize;
        for (i, &(w, t)) in light.iter().enumerate() {
            if i > 0 && w > light[i - 1].0 {
                lighter = i;
            }
            if lighter > y {
                break;
            }
            units += 1;
            let nd = d.saturating_add(w);
            let e = best.entry(t).or_insert(UNREACHED);
            if nd < *e {
                *e = nd;
                heap.push(Reverse((nd, t)));
            }
        }
    }
    meter.charge(units);
    settled.sort_unstable();
    settled.truncate(y);
    settled.into_iter().map(|(d, t)| (t, d)).collect()
}

/// Exact-distance edges `v→t` for the `y` nearest descendants and `t→v` for
/// the `y` nearest ancestors, ties broken towards smaller ids.
pub fn trunc_sssp(g: &WDiGraph, v: Vertex, y: usize) -> AugmentSet {
    let mut m = CostMeter::default();
    let mut list: Vec<(Vertex, Vertex, u64)> = trunc_nearest(g, v, Direction::Forward, y, &mut m)
        .into_iter()
        .map(|(t, d)| (v, t, d))
        .collect();
    list.extend(trunc_nearest(g, v, Direction::Backward, y, &mut m).into_iter().map(|(t, d)| (t, v, d)));
    AugmentSet::from_vertex_triples(g.n(), list)
}
