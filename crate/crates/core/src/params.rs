//! Preset selector and small numeric helpers shared by the builders.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Preset {
    /// The literal constants of the analysis. At desk scale most sampling
    /// probabilities clamp to 1.
    Paper,
    /// Small constants that keep the recursion non-trivial for n up to ~10⁴.
    Desk,
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Preset::Paper => "paper",
            Preset::Desk => "desk",
        })
    }
}

impl FromStr for Preset {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "paper" => Ok(Preset::Paper),
            "desk" => Ok(Preset::Desk),
            _ => Err(Error::InvalidParam(format!("unknown preset {s:?} (expected paper or desk)"))),
        }
    }
}

/// `log₂ max(n, 2)`, the `log n` of every sampling formula.
pub fn log2n(n: usize) -> f64 {
    (n.max(2) as f64).log2()
}

/// `⌈log_k n⌉`, at least 1: the deepest recursion level.
pub fn max_level(n: usize, k: u32) -> u32 {
    let k = k.max(2) as u128;
    let mut r = 0u32;
    let mut pow = 1u128;
    while pow < n as u128 {
        pow *= k;
        r += 1;
    }
    r.max(1)
}

/// Largest integer `r ≥ 1` with `r^e ≤ x`, tolerant of floating-point error
/// at exact powers.
pub(crate) fn floor_root(x: f64, e: f64) -> u64 {
    if x.is_nan() || x <= 1.0 {
        return 1;
    }
    let mut r = x.powf(1.0 / e).floor().max(1.0) as u64;
    let fits = |r: u64| (r as f64).powf(e) <= x * (1.0 + 1e-12);
    while fits(r + 1) {
        r += 1;
    }
    while r > 1 && !fits(r) {
        r -= 1;
    }
    r
}
