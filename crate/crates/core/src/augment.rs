//! Augmentation edge sets: shortcut sets (plain pairs) and hopsets (pairs
//! carrying a weight).

use crate::error::{Error, Result};
use crate::graph::Vertex;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AugmentSet {
    n: usize,
    /// Sorted, unique, loop-free.
    edges: Vec<(Vertex, Vertex)>,
    /// Parallel to `edges` in weighted mode.
    weights: Option<Vec<u64>>,
}

fn check(n: usize, u: usize, v: usize) -> Result<()> {
    for x in [u, v] {
        if x >= n {
            return Err(Error::VertexOutOfRange { vertex: x as u64, n });
        }
    }
    Ok(())
}

impl AugmentSet {
    pub fn empty(n: usize) -> Self {
        AugmentSet { n, edges: Vec::new(), weights: None }
    }

    pub fn empty_weighted(n: usize) -> Self {
        AugmentSet { n, edges: Vec::new(), weights: Some(Vec::new()) }
    }

    /// Unweighted set; self-loops and repeats are dropped.
    pub fn from_pairs<I>(n: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut edges = Vec::new();
        for (u, v) in pairs {
            check(n, u, v)?;
            if u != v {
                edges.push((u as Vertex, v as Vertex));
            }
        }
        Ok(Self::from_vertex_pairs(n, edges))
    }

    pub(crate) fn from_vertex_pairs(n: usize, mut edges: Vec<(Vertex, Vertex)>) -> Self {
        edges.retain(|&(u, v)| u != v);
        edges.sort_unstable();
        edges.dedup();
        AugmentSet { n, edges, weights: None }
    }

    /// Weighted set; repeated pairs keep their smallest weight.
    pub fn from_weighted<I>(n: usize, triples: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, u64)>,
    {
        let mut list = Vec::new();
        for (u, v, w) in triples {
            check(n, u, v)?;
            list.push((u as Vertex, v as Vertex, w));
        }
        Ok(Self::from_vertex_triples(n, list))
    }

    pub(crate) fn from_vertex_triples(n: usize, mut list: Vec<(Vertex, Vertex, u64)>) -> Self {
        list.retain(|&(u, v, _)| u != v);
        list.sort_unstable();
        list.dedup_by(|b, a| a.0 == b.0 && a.1 == b.1);
        let edges = list.iter().map(|&(u, v, _)| (u, v)).collect();
        let weights = Some(list.into_iter().map(|e| e.2).collect());
        AugmentSet { n, edges, weights }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_weighted(&self) -> bool {
        self.weights.is_some()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn pairs(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.edges.iter().copied()
    }

    /// Triples in pair order. Unweighted sets report weight 1.
    pub fn weighted(&self) -> impl Iterator<Item = (Vertex, Vertex, u64)> + '_ {
        self.edges.iter().enumerate().map(move |(i, &(u, v))| {
            let w = self.weights.as_ref().map_or(1, |w| w[i]);
            (u, v, w)
        })
    }

    pub fn contains(&self, u: Vertex, v: Vertex) -> bool {
        self.edges.binary_search(&(u, v)).is_ok()
    }

    pub fn weight_of(&self, u: Vertex, v: Vertex) -> Option<u64> {
        let i = self.edges.binary_search(&(u, v)).ok()?;
        Some(self.weights.as_ref().map_or(1, |w| w[i]))
    }

    /// Set union; in weighted mode the lighter copy of a shared pair wins.
    pub fn union(&self, other: &AugmentSet) -> AugmentSet {
        assert_eq!(self.n, other.n, "augment sets over different vertex counts");
        if self.is_weighted() || other.is_weighted() {
            let list = self.weighted().chain(other.weighted()).collect();
            Self::from_vertex_triples(self.n, list)
        } else {
            Self::from_vertex_pairs(self.n, self.pairs().chain(other.pairs()).collect())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairs_are_normalised() {
        let h = AugmentSet::from_pairs(3, [(2, 0), (0, 1), (2, 0), (1, 1)]).unwrap();
        assert_eq!(h.edges(), &[(0, 1), (2, 0)]);
        assert!(!h.is_weighted());
        assert!(AugmentSet::from_pairs(3, [(0, 3)]).is_err());
    }

    #[test]
    fn weighted_keeps_minimum() {
        let h = AugmentSet::from_weighted(3, [(0, 2, 9), (0, 2, 4), (1, 2, 1)]).unwrap();
        assert_eq!(h.weighted().collect::<Vec<_>>(), vec![(0, 2, 4), (1, 2, 1)]);
        assert_eq!(h.weight_of(0, 2), Some(4));
        assert_eq!(h.weight_of(2, 0), None);
    }

    #[test]
    fn union_mixes_weights() {
        let a = AugmentSet::from_weighted(3, [(0, 1, 5)]).unwrap();
        let b = AugmentSet::from_weighted(3, [(0, 1, 3), (1, 2, 2)]).unwrap();
        let c = a.union(&b);
        assert_eq!(c.weighted().collect::<Vec<_>>(), vec![(0, 1, 3), (1, 2, 2)]);
    }
}
