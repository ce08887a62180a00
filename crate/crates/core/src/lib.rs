//! Shortcut sets and hopsets for directed graphs, built by pruned recursive
//! pivot sampling, together with the searches that consume them and
//! brute-force oracles that check every output.

pub mod augment;
pub mod boolmat;
pub mod cli;
pub mod eps;
pub mod error;
pub mod graph;
pub mod hopset;
pub mod params;
pub mod pipeline;
pub mod parexec;
pub mod rng;
pub mod search;
pub mod shortcut;
pub mod verify;

pub use augment::AugmentSet;
pub use eps::Eps;
pub use error::{Error, Result};
pub use graph::{DiGraph, Direction, Vertex, VertexSubset, WDiGraph};
pub use parexec::CostMeter;
