//! Dense boolean matrices packed into 64-bit words, and transitive closure of
//! small induced subgraphs by repeated squaring.

use rayon::prelude::*;

use crate::augment::AugmentSet;
use crate::error::{Error, Result};
use crate::graph::{DiGraph, VertexSubset};
use crate::parexec::CostMeter;

/// Row counts below this are multiplied on the calling thread.
const PAR_ROWS: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoolMat {
    dim: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BoolMat {
    pub fn zeros(dim: usize) -> Self {
        let words = dim.div_ceil(64);
        BoolMat { dim, words, bits: vec![0; dim * words] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, true);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        let w = &mut self.bits[i * self.words + j / 64];
        if value {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Column indices set in row `i`, ascending.
    pub fn row_ones(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(i).iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }
}

/// `C = A·B` over the boolean semiring. Row `i` of `C` is the OR of the rows
/// of `B` selected by row `i` of `A`; rows are independent parallel tasks.
/// Charges one unit per machine-word OR and per word of `A` inspected.
pub fn bool_matmul_metered(a: &BoolMat, b: &BoolMat, meter: &mut CostMeter) -> Result<BoolMat> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch { left: a.dim, right: b.dim });
    }
    let dim = a.dim;
    let words = a.words;
    let mut c = BoolMat::zeros(dim);
    let row_task = |(i, out): (usize, &mut [u64])| -> u64 {
        let mut units = words as u64;
        for k in a.row_ones(i) {
            for (o, &x) in out.iter_mut().zip(b.row(k)) {
                *o |= x;
            }
            units += words as u64;
        }
        units
    };
    let costs: Vec<u64> = if dim >= PAR_ROWS && words > 0 {
        c.bits.par_chunks_mut(words).enumerate().map(row_task).collect()
    } else if words > 0 {
        c.bits.chunks_mut(words).enumerate().map(row_task).collect()
    } else {
        Vec::new()
    };
    let rows: Vec<CostMeter> = costs
        .into_iter()
        .map(|u| {
            let mut m = meter.fork();
            m.charge(u);
            m
        })
        .collect();
    meter.join(rows.iter());
    Ok(c)
}

pub fn bool_matmul(a: &BoolMat, b: &BoolMat) -> Result<BoolMat> {
    bool_matmul_metered(a, b, &mut CostMeter::default())
}

/// Reflexive closure of `G[s]` in local ids: `(A ∨ I)` squared `⌈log₂|s|⌉` times.
pub fn closure_matrix(g: &DiGraph, s: &VertexSubset, meter: &mut CostMeter) -> BoolMat {
    let dim = s.len();
    let mut m = BoolMat::identity(dim);
    for (lu, &u) in s.members().iter().enumerate() {
        for &v in g.successors(u) {
            if let Some(lv) = s.to_local(v) {
                m.set(lu, lv, true);
            }
        }
    }
    meter.charge_round(s.members().iter().map(|&u| g.successors(u).len() as u64).sum());
    let squarings = if dim <= 1 { 0 } else { usize::BITS - (dim - 1).leading_zeros() };
    for _ in 0..squarings {
        m = bool_matmul_metered(&m, &m, meter).expect("square matrix");
    }
    m
}

/// Every ordered pair `(u, v)`, `u ≠ v`, with `u` reaching `v` inside `G[s]`,
/// in global ids.
pub fn transitive_closure_metered(g: &DiGraph, s: &VertexSubset, meter: &mut CostMeter) -> AugmentSet {
    let m = closure_matrix(g, s, meter);
    let mut pairs = Vec::with_capacity(m.count_ones());
    for i in 0..s.len() {
        let u = s.to_global(i);
        for j in m.row_ones(i) {
            if i != j {
                pairs.push((u, s.to_global(j)));
            }
        }
    }
    meter.charge_round(pairs.len() as u64);
    AugmentSet::from_vertex_pairs(g.n(), pairs)
}

pub fn transitive_closure(g: &DiGraph, s: &VertexSubset) -> AugmentSet {
    transitive_closure_metered(g, s, &mut CostMeter::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::gen::{gen_path, gen_random_dag};
    use crate::rng::stream;
    use rand::Rng;

    fn random(dim: usize, seed: u64) -> BoolMat {
        let mut rng = stream(seed, &[dim as u64]);
        let mut m = BoolMat::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m.set(i, j, rng.gen_bool(0.2));
            }
        }
        m
    }

    fn naive(a: &BoolMat, b: &BoolMat) -> BoolMat {
        let mut c = BoolMat::zeros(a.dim());
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                c.set(i, j, (0..a.dim()).any(|k| a.get(i, k) && b.get(k, j)));
            }
        }
        c
    }

    #[test]
    fn identity_and_zero() {
        let b = random(16, 1);
        assert_eq!(bool_matmul(&BoolMat::identity(16), &b).unwrap(), b);
        assert_eq!(bool_matmul(&BoolMat::zeros(16), &b).unwrap(), BoolMat::zeros(16));
        assert!(bool_matmul(&BoolMat::zeros(3), &BoolMat::zeros(4)).is_err());
    }

    #[test]
    fn matches_triple_loop() {
        for (dim, seed) in [(16, 2), (63, 3), (64, 4), (65, 5), (130, 6)] {
            let (a, b) = (random(dim, seed), random(dim, seed + 100));
            assert_eq!(bool_matmul(&a, &b).unwrap(), naive(&a, &b));
        }
    }

    #[test]
    fn associativity() {
        for seed in 0..5 {
            let (a, b, c) = (random(32, seed), random(32, seed + 10), random(32, seed + 20));
            let left = bool_matmul(&bool_matmul(&a, &b).unwrap(), &c).unwrap();
            let right = bool_matmul(&a, &bool_matmul(&b, &c).unwrap()).unwrap();
            assert_eq!(left, right);
        }
    }

    #[test]
    fn chain_closure() {
        let g = gen_path(4);
        let tc = transitive_closure(&g, &VertexSubset::full(4));
        assert_eq!(tc.edges(), &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let none = transitive_closure(&DiGraph::empty(5), &VertexSubset::full(5));
        assert!(none.is_empty());
    }

    #[test]
    fn closure_is_idempotent_and_antisymmetric_on_dags() {
        let g = gen_random_dag(40, 100, 8).unwrap();
        let s = VertexSubset::full(40);
        let tc = transitive_closure(&g, &s);
        assert!(tc.pairs().all(|(u, v)| !tc.contains(v, u)));
        let again = transitive_closure(&g.union(&tc), &s);
        assert_eq!(again, tc);
    }

    #[test]
    fn subset_uses_global_ids() {
        let g = gen_path(5);
        let s = VertexSubset::new(vec![1, 2, 4], 5).unwrap();
        assert_eq!(transitive_closure(&g, &s).edges(), &[(1, 2)]);
    }
}
