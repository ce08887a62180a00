use rand::Rng;
use serde::Serialize;

use super::HopsetParams;
use crate::params::max_level;
use crate::rng::{stream, Stream};

/// `ℓ(v)`: the first level whose trial succeeded, or `None` if all failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelAssignment {
    pub levels: Vec<Option<u32>>,
}

impl LevelAssignment {
    /// Vertex counts per level, then the `None` count last.
    pub fn histogram(&self, r_max: u32) -> Vec<usize> {
        let mut h = vec![0usize; r_max as usize + 2];
        for l in &self.levels {
            match l {
                Some(r) => h[*r as usize] += 1,
                None => h[r_max as usize + 1] += 1,
            }
        }
        h
    }
}

pub(crate) fn draw_levels(n: usize, p: &HopsetParams, rng: &mut Stream) -> LevelAssignment {
    let r_max = max_level(n, p.k);
    let probs: Vec<f64> = (0..=r_max).map(|r| p.level_probability(n, r)).collect();
    let levels = (0..n)
        .map(|_| {
            for (r, &pr) in probs.iter().enumerate() {
                if pr >= 1.0 || (pr > 0.0 && rng.gen::<f64>() < pr) {
                    return Some(r as u32);
                }
            }
            None
        })
        .collect();
    LevelAssignment { levels }
}

/// Independent level draw for `n` vertices, levels `0..=⌈log_k n⌉`.
pub fn assign_levels(n: usize, p: &HopsetParams, seed: u64) -> LevelAssignment {
    draw_levels(n, p, &mut stream(seed, &[crate::rng::tag("assign_levels"), n as u64]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eps::Eps;
    use crate::params::Preset;

    fn params() -> HopsetParams {
        HopsetParams::new(Preset::Desk, 100, 100, Eps::new(1, 4).unwrap(), 0)
    }

    #[test]
    fn forced_probabilities() {
        let mut p = params();
        p.sample_override = Some(1.0);
        assert!(assign_levels(50, &p, 1).levels.iter().all(|&l| l == Some(0)));
        p.sample_override = Some(0.0);
        assert!(assign_levels(50, &p, 1).levels.iter().all(|&l| l.is_none()));
    }

    #[test]
    fn saturated_last_level_catches_everyone() {
        let p = params();
        let a = assign_levels(100, &p, 3);
        // p at r = ⌈log_4 100⌉ = 4 is 0.05·4^5·log₂100/100 > 1.
        assert!(a.levels.iter().all(|l| l.is_some()));
    }
}
