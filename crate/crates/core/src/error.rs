use thiserror::Error;

/// Errors surfaced by graph construction, the builders and the oracles.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph with {n} vertices")]
    VertexOutOfRange { vertex: u64, n: usize },

    #[error("negative weight {weight} on edge ({u}, {v})")]
    NegativeWeight { u: usize, v: usize, weight: i64 },

    #[error("maximum edge weight {max} exceeds the polynomial bound {bound}")]
    WeightBound { max: u64, bound: u64 },

    #[error("infeasible generator request: {0}")]
    Infeasible(String),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("input graph contains a directed cycle")]
    Cyclic,

    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    #[error("oracle refused: n = {n} exceeds the oracle cap {cap}")]
    OracleCap { n: usize, cap: usize },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
