//! Immutable CSR digraphs, induced subgraphs, SCC condensation and seeded
//! generators.

mod csr;
pub mod gen;
pub mod io;
mod scc;
mod subset;

pub use csr::{DiGraph, WDiGraph};
pub use scc::{scc_condense, SccResult};
pub use subset::VertexSubset;

pub type Vertex = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    pub fn reverse(self) -> Self {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }
}
