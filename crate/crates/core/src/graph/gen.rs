//! Seeded synthetic graphs. Every generator draws from its own named stream,
//! so a `(generator, arguments, seed)` triple always yields the same graph.

use rand::seq::{index, SliceRandom};
use rand::Rng;

use super::{DiGraph, Vertex, WDiGraph};
use crate::error::{Error, Result};
use crate::rng::{stream, tag};

/// `0 → 1 → … → n−1`.
pub fn gen_path(n: usize) -> DiGraph {
    let edges = (1..n).map(|i| ((i - 1) as Vertex, i as Vertex)).collect();
    DiGraph::from_sorted_unique(n, edges)
}

fn max_dag_edges(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Decode sorted indices into the `i < j` pairs of an `n × n` upper triangle.
fn upper_pairs(n: usize, mut idx: Vec<usize>) -> Vec<(usize, usize)> {
    idx.sort_unstable();
    let mut out = Vec::with_capacity(idx.len());
    let (mut row, mut row_start) = (0usize, 0usize);
    for x in idx {
        while x >= row_start + (n - 1 - row) {
            row_start += n - 1 - row;
            row += 1;
        }
        out.push((row, row + 1 + (x - row_start)));
    }
    out
}

/// `m` distinct pairs sampled uniformly, oriented along a random permutation
/// so the result is always acyclic.
pub fn gen_random_dag(n: usize, m: usize, seed: u64) -> Result<DiGraph> {
    let total = max_dag_edges(n);
    if m > total {
        return Err(Error::Infeasible(format!("{m} edges requested but a DAG on {n} vertices has at most {total}")));
    }
    let mut rng = stream(seed, &[tag("gen_random_dag"), n as u64, m as u64]);
    let idx = index::sample(&mut rng, total, m).into_vec();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    let pairs = upper_pairs(n, idx);
    DiGraph::from_edges(n, pairs.into_iter().map(|(i, j)| (perm[i], perm[j])))
}

/// `m` distinct ordered pairs sampled uniformly; cycles are likely.
pub fn gen_random_digraph(n: usize, m: usize, seed: u64) -> Result<DiGraph> {
    let total = n * n.saturating_sub(1);
    if m > total {
        return Err(Error::Infeasible(format!("{m} edges requested but only {total} ordered pairs exist")));
    }
    let mut rng = stream(seed, &[tag("gen_random_digraph"), n as u64, m as u64]);
    let idx = index::sample(&mut rng, total, m);
    DiGraph::from_edges(
        n,
        idx.into_iter().map(|x| {
            let (u, r) = (x / (n - 1), x % (n - 1));
            (u, if r < u { r } else { r + 1 })
        }),
    )
}

/// `layers × width` grid; vertex `(l, i)` has id `l·width + i`. Each column
/// is a spine path through all layers, and every other pair between
/// consecutive layers is joined with probability `extra_density`.
pub fn gen_layered(layers: usize, width: usize, extra_density: f64, seed: u64) -> Result<DiGraph> {
    if !(0.0..=1.0).contains(&extra_density) {
        return Err(Error::InvalidParam(format!("extra_density {extra_density} outside [0, 1]")));
    }
    let n = layers * width;
    let mut rng = stream(seed, &[tag("gen_layered"), layers as u64, width as u64, extra_density.to_bits()]);
    let mut edges = Vec::new();
    for l in 0..layers.saturating_sub(1) {
        for i in 0..width {
            for j in 0..width {
                if i == j || rng.gen_bool(extra_density) {
                    edges.push((l * width + i, (l + 1) * width + j));
                }
            }
        }
    }
    DiGraph::from_edges(n, edges)
}

/// A random Hamiltonian path plus `m − (n−1)` further uniformly sampled
/// forward pairs, so the hop diameter starts at `n−1` for every density.
pub fn gen_spine_dag(n: usize, m: usize, seed: u64) -> Result<DiGraph> {
    let total = max_dag_edges(n);
    let spine = n.saturating_sub(1);
    if m > total || m < spine {
        return Err(Error::Infeasible(format!("spine DAG on {n} vertices needs {spine} ≤ m ≤ {total}, got {m}")));
    }
    let mut rng = stream(seed, &[tag("gen_spine_dag"), n as u64, m as u64]);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    // Non-spine pairs (i, j) with j ≥ i + 2 are indexed row by row.
    let rows: Vec<usize> = (0..n).map(|i| n.saturating_sub(i + 2)).collect();
    let extra_total: usize = rows.iter().sum();
    let idx = index::sample(&mut rng, extra_total, m - spine).into_vec();
    let mut sorted = idx;
    sorted.sort_unstable();
    let mut edges: Vec<(usize, usize)> = (1..n).map(|i| (perm[i - 1], perm[i])).collect();
    let (mut row, mut start) = (0usize, 0usize);
    for x in sorted {
        while x >= start + rows[row] {
            start += rows[row];
            row += 1;
        }
        edges.push((perm[row], perm[row + 2 + (x - start)]));
    }
    DiGraph::from_edges(n, edges)
}

/// Independent uniform weights in `[1, wmax]`.
pub fn randomize_weights(g: &DiGraph, wmax: u64, seed: u64) -> Result<WDiGraph> {
    if wmax == 0 {
        return Err(Error::InvalidParam("wmax must be at least 1".into()));
    }
    let mut rng = stream(seed, &[tag("randomize_weights"), g.n() as u64, g.m() as u64, wmax]);
    let list = g.edges().map(|(u, v)| (u, v, rng.gen_range(1..=wmax))).collect();
    Ok(WDiGraph::from_unsorted(g.n(), list))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn longest_path(g: &DiGraph) -> usize {
        let order = g.topological_order().expect("acyclic");
        let mut best = vec![0usize; g.n()];
        for &u in &order {
            for &v in g.successors(u) {
                best[v as usize] = best[v as usize].max(best[u as usize] + 1);
            }
        }
        best.into_iter().max().unwrap_or(0)
    }

    #[test]
    fn path_shape() {
        let g = gen_path(4);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2), (2, 3)]);
    }

    #[test]
    fn empty_dag() {
        assert_eq!(gen_random_dag(8, 0, 1).unwrap().m(), 0);
    }

    #[test]
    fn dag_edge_count_and_acyclicity() {
        for seed in 0..20 {
            let g = gen_random_dag(20, 60, seed).unwrap();
            assert_eq!(g.m(), 60);
            assert!(g.is_acyclic());
        }
        let full = gen_random_dag(10, 45, 0).unwrap();
        assert_eq!(full.m(), 45);
        assert!(full.is_acyclic());
        assert!(gen_random_dag(10, 46, 0).is_err());
    }

    #[test]
    fn generators_are_deterministic() {
        assert_eq!(gen_random_dag(30, 70, 9).unwrap(), gen_random_dag(30, 70, 9).unwrap());
        assert_ne!(gen_random_dag(30, 70, 9).unwrap(), gen_random_dag(30, 70, 10).unwrap());
        assert_eq!(gen_layered(8, 4, 0.3, 2).unwrap(), gen_layered(8, 4, 0.3, 2).unwrap());
    }

    #[test]
    fn layered_longest_path() {
        let g = gen_layered(64, 4, 0.5, 1).unwrap();
        assert_eq!(g.n(), 256);
        assert!(longest_path(&g) >= 63);
    }

    #[test]
    fn spine_dag_has_hamiltonian_path() {
        let g = gen_spine_dag(50, 200, 4).unwrap();
        assert_eq!(g.m(), 200);
        assert_eq!(longest_path(&g), 49);
        assert_eq!(gen_spine_dag(6, 15, 0).unwrap().m(), 15);
        assert!(gen_spine_dag(6, 4, 0).is_err());
    }

    #[test]
    fn random_digraph_counts() {
        let g = gen_random_digraph(12, 132, 3).unwrap();
        assert_eq!(g.m(), 132);
        assert!(gen_random_digraph(12, 133, 3).is_err());
    }

    #[test]
    fn weights_in_range() {
        let g = randomize_weights(&gen_random_dag(16, 40, 1).unwrap(), 7, 5).unwrap();
        assert_eq!(g.m(), 40);
        assert!(g.edges().all(|(_, _, w)| (1..=7).contains(&w)));
    }
}
