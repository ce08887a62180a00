use super::Vertex;
use crate::error::{Error, Result};

/// A sorted vertex subset together with its local/global relabelling.
///
/// Local id `i` is the `i`-th smallest member, so `to_local` is a binary
/// search and the two maps are mutually inverse by construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSubset {
    members: Vec<Vertex>,
}

impl VertexSubset {
    /// Members may arrive unsorted or repeated; they must lie in `[0, n)`.
    pub fn new(mut members: Vec<Vertex>, n: usize) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        if let Some(&last) = members.last() {
            if last as usize >= n {
                return Err(Error::VertexOutOfRange { vertex: last as u64, n });
            }
        }
        Ok(VertexSubset { members })
    }

    pub(crate) fn from_sorted(members: Vec<Vertex>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        VertexSubset { members }
    }

    pub fn full(n: usize) -> Self {
        VertexSubset { members: (0..n as Vertex).collect() }
    }

    pub fn members(&self) -> &[Vertex] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn to_local(&self, v: Vertex) -> Option<usize> {
        self.members.binary_search(&v).ok()
    }

    pub fn to_global(&self, local: usize) -> Vertex {
        self.members[local]
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.to_local(v).is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn maps_are_inverse() {
        let s = VertexSubset::new(vec![9, 2, 5, 2], 10).unwrap();
        assert_eq!(s.members(), &[2, 5, 9]);
        for (i, &v) in s.members().iter().enumerate() {
            assert_eq!(s.to_local(v), Some(i));
            assert_eq!(s.to_global(i), v);
        }
        assert_eq!(s.to_local(3), None);
    }

    #[test]
    fn out_of_range_member() {
        assert!(VertexSubset::new(vec![0, 4], 4).is_err());
    }
}
