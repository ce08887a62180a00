use std::collections::VecDeque;

use super::{Direction, Vertex, VertexSubset};
use crate::augment::AugmentSet;
use crate::error::{Error, Result};

fn check_vertex(v: usize, n: usize) -> Result<()> {
    if v >= n {
        return Err(Error::VertexOutOfRange { vertex: v as u64, n });
    }
    Ok(())
}

/// Offsets + targets for one adjacency direction. `edges` must already be
/// sorted by (source, target).
fn build_offsets(n: usize, keys: impl Iterator<Item = Vertex>) -> Vec<usize> {
    let mut off = vec![0usize; n + 1];
    for k in keys {
        off[k as usize + 1] += 1;
    }
    for i in 0..n {
        off[i + 1] += off[i];
    }
    off
}

/// Unweighted simple digraph in CSR form, storing both directions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiGraph {
    n: usize,
    out_off: Vec<usize>,
    out_adj: Vec<Vertex>,
    in_off: Vec<usize>,
    in_adj: Vec<Vertex>,
}

impl DiGraph {
    /// Build from an edge list. Duplicate edges and self-loops are dropped.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut list = Vec::new();
        for (u, v) in edges {
            check_vertex(u, n)?;
            check_vertex(v, n)?;
            if u != v {
                list.push((u as Vertex, v as Vertex));
            }
        }
        list.sort_unstable();
        list.dedup();
        Ok(Self::from_sorted_unique(n, list))
    }

    /// `edges` sorted by (u, v), unique, loop-free and in range.
    pub(crate) fn from_sorted_unique(n: usize, edges: Vec<(Vertex, Vertex)>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        let out_off = build_offsets(n, edges.iter().map(|e| e.0));
        let out_adj: Vec<Vertex> = edges.iter().map(|e| e.1).collect();
        let mut rev: Vec<(Vertex, Vertex)> = edges.iter().map(|&(u, v)| (v, u)).collect();
        rev.sort_unstable();
        let in_off = build_offsets(n, rev.iter().map(|e| e.0));
        let in_adj = rev.into_iter().map(|e| e.1).collect();
        DiGraph { n, out_off, out_adj, in_off, in_adj }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted_unique(n, Vec::new())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.out_adj.len()
    }

    pub fn successors(&self, v: Vertex) -> &[Vertex] {
        let v = v as usize;
        &self.out_adj[self.out_off[v]..self.out_off[v + 1]]
    }

    pub fn predecessors(&self, v: Vertex) -> &[Vertex] {
        let v = v as usize;
        &self.in_adj[self.in_off[v]..self.in_off[v + 1]]
    }

    pub fn neighbors(&self, v: Vertex, dir: Direction) -> &[Vertex] {
        match dir {
            Direction::Forward => self.successors(v),
            Direction::Backward => self.predecessors(v),
        }
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.successors(u).binary_search(&v).is_ok()
    }

    /// Edges in (source, target) order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        (0..self.n as Vertex).flat_map(move |u| self.successors(u).iter().map(move |&v| (u, v)))
    }

    /// `G ∪ H` for an augmentation over the same vertex set (weights ignored).
    pub fn union(&self, h: &AugmentSet) -> DiGraph {
        assert_eq!(h.n(), self.n, "augment set built for a different vertex count");
        let mut list: Vec<(Vertex, Vertex)> = self.edges().chain(h.pairs()).collect();
        list.sort_unstable();
        list.dedup();
        Self::from_sorted_unique(self.n, list)
    }

    /// Kahn's algorithm; `None` when the graph has a cycle.
    pub fn topological_order(&self) -> Option<Vec<Vertex>> {
        let mut indeg: Vec<usize> = (0..self.n as Vertex).map(|v| self.predecessors(v).len()).collect();
        let mut queue: VecDeque<Vertex> = (0..self.n as Vertex).filter(|&v| indeg[v as usize] == 0).collect();
        let mut order = Vec::with_capacity(self.n);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &v in self.successors(u) {
                indeg[v as usize] -= 1;
                if indeg[v as usize] == 0 {
                    queue.push_back(v);
                }
            }
        }
        (order.len() == self.n).then_some(order)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// `G[S]`, relabelled to local ids `0..|S|` in the order of `s.members()`.
    pub fn induced(&self, s: &VertexSubset) -> DiGraph {
        let mut list = Vec::new();
        for (lu, &u) in s.members().iter().enumerate() {
            for &v in self.successors(u) {
                if let Some(lv) = s.to_local(v) {
                    list.push((lu as Vertex, lv as Vertex));
                }
            }
        }
        // Members are sorted, so local ids preserve the global edge order.
        Self::from_sorted_unique(s.len(), list)
    }
}

/// Weighted simple digraph with non-negative integer weights.
///
/// Besides the id-ordered CSR, each vertex also keeps its incident edges
/// ordered by (weight, neighbour) so truncated searches can stop scanning once
/// the lightest few edges are exhausted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WDiGraph {
    n: usize,
    out_off: Vec<usize>,
    out_adj: Vec<Vertex>,
    out_w: Vec<u64>,
    out_light: Vec<(u64, Vertex)>,
    in_off: Vec<usize>,
    in_adj: Vec<Vertex>,
    in_w: Vec<u64>,
    in_light: Vec<(u64, Vertex)>,
    max_w: u64,
}

impl WDiGraph {
    /// Build from signed input; negative weights are rejected. Parallel edges
    /// collapse to the lightest copy, self-loops are dropped.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, i64)>,
    {
        let mut list = Vec::new();
        for (u, v, w) in edges {
            check_vertex(u, n)?;
            check_vertex(v, n)?;
            if w < 0 {
                return Err(Error::NegativeWeight { u, v, weight: w });
            }
            list.push((u, v, w as u64));
        }
        Self::from_unsigned_edges(n, list)
    }

    pub fn from_unsigned_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, u64)>,
    {
        let mut list = Vec::new();
        for (u, v, w) in edges {
            check_vertex(u, n)?;
            check_vertex(v, n)?;
            if u != v {
                list.push((u as Vertex, v as Vertex, w));
            }
        }
        Ok(Self::from_unsorted(n, list))
    }

    pub(crate) fn from_unsorted(n: usize, mut list: Vec<(Vertex, Vertex, u64)>) -> Self {
        list.sort_unstable();
        list.dedup_by(|b, a| a.0 == b.0 && a.1 == b.1);
        Self::from_sorted_unique(n, list)
    }

    fn from_sorted_unique(n: usize, edges: Vec<(Vertex, Vertex, u64)>) -> Self {
        let out_off = build_offsets(n, edges.iter().map(|e| e.0));
        let out_adj: Vec<Vertex> = edges.iter().map(|e| e.1).collect();
        let out_w: Vec<u64> = edges.iter().map(|e| e.2).collect();
        let max_w = out_w.iter().copied().max().unwrap_or(0);
        let mut rev: Vec<(Vertex, Vertex, u64)> = edges.iter().map(|&(u, v, w)| (v, u, w)).collect();
        rev.sort_unstable();
        let in_off = build_offsets(n, rev.iter().map(|e| e.0));
        let in_adj: Vec<Vertex> = rev.iter().map(|e| e.1).collect();
        let in_w: Vec<u64> = rev.iter().map(|e| e.2).collect();
        let light = |off: &[usize], adj: &[Vertex], w: &[u64]| {
            let mut out: Vec<(u64, Vertex)> = w.iter().copied().zip(adj.iter().copied()).collect();
            for v in 0..n {
                out[off[v]..off[v + 1]].sort_unstable();
            }
            out
        };
        let out_light = light(&out_off, &out_adj, &out_w);
        let in_light = light(&in_off, &in_adj, &in_w);
        WDiGraph { n, out_off, out_adj, out_w, out_light, in_off, in_adj, in_w, in_light, max_w }
    }

    /// Every edge of `g` with weight 1.
    pub fn unit(g: &DiGraph) -> Self {
        Self::from_sorted_unique(g.n(), g.edges().map(|(u, v)| (u, v, 1)).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.out_adj.len()
    }

    /// The maximum stored weight `W` (0 for an edgeless graph).
    pub fn max_weight(&self) -> u64 {
        self.max_w
    }

    /// Reject `W > max(n, 2)^exponent`.
    pub fn check_weight_bound(&self, exponent: u32) -> Result<()> {
        let bound = (self.n.max(2) as u64).saturating_pow(exponent);
        if self.max_w > bound {
            return Err(Error::WeightBound { max: self.max_w, bound });
        }
        Ok(())
    }

    /// Neighbours and weights in neighbour-id order.
    pub fn neighbors(&self, v: Vertex, dir: Direction) -> (&[Vertex], &[u64]) {
        let v = v as usize;
        match dir {
            Direction::Forward => {
                let r = self.out_off[v]..self.out_off[v + 1];
                (&self.out_adj[r.clone()], &self.out_w[r])
            }
            Direction::Backward => {
                let r = self.in_off[v]..self.in_off[v + 1];
                (&self.in_adj[r.clone()], &self.in_w[r])
            }
        }
    }

    /// `(weight, neighbour)` pairs sorted ascending.
    pub fn neighbors_by_weight(&self, v: Vertex, dir: Direction) -> &[(u64, Vertex)] {
        let v = v as usize;
        match dir {
            Direction::Forward => &self.out_light[self.out_off[v]..self.out_off[v + 1]],
            Direction::Backward => &self.in_light[self.in_off[v]..self.in_off[v + 1]],
        }
    }

    pub fn degree(&self, v: Vertex, dir: Direction) -> usize {
        self.neighbors(v, dir).0.len()
    }

    pub fn weight(&self, u: Vertex, v: Vertex) -> Option<u64> {
        let (adj, w) = self.neighbors(u, Direction::Forward);
        adj.binary_search(&v).ok().map(|i| w[i])
    }

    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex, u64)> + '_ {
        (0..self.n as Vertex).flat_map(move |u| {
            let (adj, w) = self.neighbors(u, Direction::Forward);
            adj.iter().zip(w).map(move |(&v, &w)| (u, v, w))
        })
    }

    /// The unweighted skeleton.
    pub fn skeleton(&self) -> DiGraph {
        DiGraph::from_sorted_unique(self.n, self.edges().map(|(u, v, _)| (u, v)).collect())
    }

    /// Same topology with every weight mapped through `f`.
    pub fn map_weights(&self, f: impl Fn(u64) -> u64) -> WDiGraph {
        Self::from_sorted_unique(self.n, self.edges().map(|(u, v, w)| (u, v, f(w))).collect())
    }

    /// `G ∪ H`; where an edge exists in both, the lighter weight wins.
    pub fn union(&self, h: &AugmentSet) -> WDiGraph {
        assert_eq!(h.n(), self.n, "augment set built for a different vertex count");
        assert!(h.is_weighted(), "hopset union needs a weighted augment set");
        let list: Vec<(Vertex, Vertex, u64)> = self.edges().chain(h.weighted()).collect();
        Self::from_unsorted(self.n, list)
    }

    pub fn induced(&self, s: &VertexSubset) -> WDiGraph {
        let mut list = Vec::new();
        for (lu, &u) in s.members().iter().enumerate() {
            let (adj, w) = self.neighbors(u, Direction::Forward);
            for (&v, &w) in adj.iter().zip(w) {
                if let Some(lv) = s.to_local(v) {
                    list.push((lu as Vertex, lv as Vertex, w));
                }
            }
        }
        Self::from_sorted_unique(s.len(), list)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_construction() {
        let g = DiGraph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(g.m(), 2);
        assert_eq!(g.successors(0), &[1]);
        assert_eq!(g.predecessors(2), &[1]);
    }

    #[test]
    fn dedup_and_self_loops() {
        assert_eq!(DiGraph::from_edges(2, [(0, 1), (0, 1)]).unwrap().m(), 1);
        assert_eq!(DiGraph::from_edges(1, [(0, 0)]).unwrap().m(), 0);
    }

    #[test]
    fn out_of_range_and_negative_weight_rejected() {
        assert!(matches!(
            DiGraph::from_edges(2, [(0, 2)]),
            Err(Error::VertexOutOfRange { vertex: 2, n: 2 })
        ));
        assert!(matches!(
            WDiGraph::from_edges(2, [(0, 1, -3)]),
            Err(Error::NegativeWeight { weight: -3, .. })
        ));
    }

    #[test]
    fn parallel_weighted_edges_keep_lightest() {
        let g = WDiGraph::from_edges(2, [(0, 1, 5), (0, 1, 2), (0, 1, 9)]).unwrap();
        assert_eq!(g.m(), 1);
        assert_eq!(g.weight(0, 1), Some(2));
        assert_eq!(g.max_weight(), 2);
    }

    #[test]
    fn weight_ordered_adjacency() {
        let g = WDiGraph::from_edges(4, [(0, 1, 5), (0, 2, 1), (0, 3, 1)]).unwrap();
        assert_eq!(g.neighbors_by_weight(0, Direction::Forward), &[(1, 2), (1, 3), (5, 1)]);
        assert_eq!(g.neighbors_by_weight(2, Direction::Backward), &[(1, 0)]);
    }

    #[test]
    fn weight_bound() {
        let g = WDiGraph::from_edges(3, [(0, 1, 81), (1, 2, 1)]).unwrap();
        assert!(g.check_weight_bound(4).is_ok());
        assert!(matches!(g.check_weight_bound(3), Err(Error::WeightBound { max: 81, bound: 27 })));
    }

    #[test]
    fn topological_order_detects_cycles() {
        assert!(DiGraph::from_edges(3, [(0, 1), (1, 2)]).unwrap().is_acyclic());
        assert!(!DiGraph::from_edges(3, [(0, 1), (1, 2), (2, 0)]).unwrap().is_acyclic());
    }

    #[test]
    fn induced_chain() {
        let g = DiGraph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let s = VertexSubset::new(vec![0, 2], 3).unwrap();
        assert_eq!(g.induced(&s).m(), 0);
        let s = VertexSubset::new(vec![0, 1], 3).unwrap();
        let h = g.induced(&s);
        assert_eq!(h.edges().collect::<Vec<_>>(), vec![(0, 1)]);
    }
}
