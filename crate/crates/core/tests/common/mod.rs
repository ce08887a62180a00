//! Brute-force oracles written independently of the library's searches.
#![allow(dead_code)]

use hopcut::{DiGraph, Vertex, WDiGraph};

pub const INF: u64 = u64::MAX;

/// Reflexive reachability by iterative DFS over the raw edge list.
pub fn closure(g: &DiGraph) -> Vec<Vec<bool>> {
    let n = g.n();
    let mut adj = vec![Vec::new(); n];
    for (u, v) in g.edges() {
        adj[u as usize].push(v as usize);
    }
    (0..n)
        .map(|s| {
            let mut seen = vec![false; n];
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(u) = stack.pop() {
                for &v in &adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
            seen
        })
        .collect()
}

/// Floyd–Warshall over `(u, v, w)` triples on `n` vertices.
pub fn floyd(n: usize, edges: impl IntoIterator<Item = (usize, usize, u64)>) -> Vec<Vec<u64>> {
    let mut d = vec![vec![INF; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0;
    }
    for (u, v, w) in edges {
        if w < d[u][v] {
            d[u][v] = w;
        }
    }
    for k in 0..n {
        for i in 0..n {
            let dik = d[i][k];
            if dik == INF {
                continue;
            }
            for j in 0..n {
                let dkj = d[k][j];
                if dkj != INF && dik + dkj < d[i][j] {
                    d[i][j] = dik + dkj;
                }
            }
        }
    }
    d
}

pub fn apsp(g: &WDiGraph) -> Vec<Vec<u64>> {
    floyd(g.n(), g.edges().map(|(u, v, w)| (u as usize, v as usize, w)))
}

/// All-pairs distances inside the subgraph induced by `members` (ascending
/// global ids), indexed by position in `members`.
pub fn apsp_induced(g: &WDiGraph, members: &[Vertex]) -> Vec<Vec<u64>> {
    let pos = |v: Vertex| members.binary_search(&v).ok();
    let edges: Vec<(usize, usize, u64)> = g
        .edges()
        .filter_map(|(u, v, w)| Some((pos(u)?, pos(v)?, w)))
        .collect();
    floyd(members.len(), edges)
}

/// `bdist^h(s, ·)` by `h` rounds of Bellman-Ford over the edge list.
pub fn hop_limited(g: &WDiGraph, s: usize, h: usize) -> Vec<u64> {
    let edges: Vec<(usize, usize, u64)> = g.edges().map(|(u, v, w)| (u as usize, v as usize, w)).collect();
    let mut d = vec![INF; g.n()];
    d[s] = 0;
    for _ in 0..h {
        let prev = d.clone();
        for &(u, v, w) in &edges {
            if prev[u] != INF && prev[u] + w < d[v] {
                d[v] = prev[u] + w;
            }
        }
    }
    d
}

/// O(n²) Dijkstra in either direction, independent of the heap-based one.
pub fn dijkstra_dense(g: &WDiGraph, s: usize, forward: bool) -> Vec<u64> {
    let n = g.n();
    let mut adj = vec![Vec::new(); n];
    for (u, v, w) in g.edges() {
        let (a, b) = if forward { (u, v) } else { (v, u) };
        adj[a as usize].push((b as usize, w));
    }
    let mut d = vec![INF; n];
    let mut done = vec![false; n];
    d[s] = 0;
    loop {
        let next = (0..n).filter(|&v| !done[v] && d[v] != INF).min_by_key(|&v| (d[v], v));
        let Some(u) = next else { break };
        done[u] = true;
        for &(v, w) in &adj[u] {
            if d[u] + w < d[v] {
                d[v] = d[u] + w;
            }
        }
    }
    d
}

/// Hop diameter (max over related pairs of the hop distance) by boolean
/// matrix powers: the least `h` with `(A ∨ I)^h` equal to the closure.
pub fn hop_diameter_by_powers(g: &DiGraph) -> u32 {
    let n = g.n();
    let tc = closure(g);
    let mut a = vec![vec![false; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = true;
    }
    for (u, v) in g.edges() {
        a[u as usize][v as usize] = true;
    }
    let mut p: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect();
    let mut h = 0u32;
    while p != tc {
        p = (0..n)
            .map(|i| (0..n).map(|j| (0..n).any(|k| p[i][k] && a[k][j])).collect())
            .collect();
        h += 1;
    }
    h
}

pub fn median(xs: &mut [u64]) -> f64 {
    xs.sort_unstable();
    let k = xs.len();
    if k == 0 {
        0.0
    } else if k % 2 == 1 {
        xs[k / 2] as f64
    } else {
        (xs[k / 2 - 1] + xs[k / 2]) as f64 / 2.0
    }
}
