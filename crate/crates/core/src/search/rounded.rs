use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use super::UNREACHED;
use crate::eps::Eps;
use crate::error::{Error, Result};
use crate::graph::{Direction, Vertex, WDiGraph};
use crate::parexec::CostMeter;

const PAR_FRONTIER: usize = 2048;

/// Distances in a graph whose weights were rounded up to multiples of `unit`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundedDistances {
    /// Distance in whole units, or UNREACHED past the exploration cap.
    pub units: Vec<u64>,
    pub unit: Ratio<u128>,
}

impl RoundedDistances {
    pub fn length(&self, v: usize) -> Option<Ratio<u128>> {
        let u = self.units[v];
        (u != UNREACHED).then(|| self.unit * Ratio::from_integer(u as u128))
    }

    /// `⌊units · unit⌋`. Still an upper bound on the length of the underlying
    /// integer-weight path, since rounding only ever moved it up.
    pub fn floor_length(&self, v: usize) -> Option<u64> {
        self.length(v).map(|l| l.floor().to_integer().to_u64().unwrap_or(UNREACHED))
    }

    /// `⌈units · unit⌉`.
    pub fn ceil_length(&self, v: usize) -> Option<u64> {
        self.length(v).map(|l| l.ceil().to_integer().to_u64().unwrap_or(UNREACHED))
    }
}

/// `ε·Δ / (9·h0)`.
pub fn rounding_unit(delta: Ratio<u64>, eps: Eps, h0: u64) -> Result<Ratio<u128>> {
    if delta.is_zero() {
        return Err(Error::InvalidParam("distance guess must be positive".into()));
    }
    if !eps.is_below_one() {
        return Err(Error::InvalidParam(format!("eps must lie in (0, 1), got {eps}")));
    }
    if h0 == 0 {
        return Err(Error::InvalidParam("hopbound must be at least 1".into()));
    }
    let delta = Ratio::new(*delta.numer() as u128, *delta.denom() as u128);
    Ok(eps.ratio() * delta / Ratio::from_integer(9 * h0 as u128))
}

/// Number of units an edge of weight `w` occupies after rounding up.
pub(crate) fn units_of(w: u64, unit: Ratio<u128>) -> u64 {
    let x = (w as u128 * unit.denom()).div_ceil(*unit.numer());
    x.min(UNREACHED as u128 - 1) as u64
}

/// Bucketed level-synchronous search on the rounded graph out to
/// `cap_units`. Every unit level is one parallel round (one unit per frontier
/// vertex and per adjacency scan, plus a barrier), including empty levels
/// below the farthest pending bucket.
pub fn unit_bounded_search(
    g: &WDiGraph,
    s: Vertex,
    unit: Ratio<u128>,
    cap_units: u64,
    meter: &mut CostMeter,
) -> RoundedDistances {
    let n = g.n();
    let mut dist = vec![UNREACHED; n];
    let mut buckets: Vec<Vec<Vertex>> = vec![Vec::new(); cap_units as usize + 1];
    dist[s as usize] = 0;
    buckets[0].push(s);
    let mut pending = 1usize;
    for level in 0..=cap_units {
        if pending == 0 {
            break;
        }
        let entries = std::mem::take(&mut buckets[level as usize]);
        pending -= entries.len();
        let mut frontier: Vec<Vertex> = entries.into_iter().filter(|&v| dist[v as usize] == level).collect();
        frontier.sort_unstable();
        frontier.dedup();
        if frontier.is_empty() {
            meter.charge_round(0);
            continue;
        }
        // Zero-unit edges stay on this level and are handled in sub-rounds.
        while !frontier.is_empty() {
            let scans: u64 = frontier.iter().map(|&u| g.degree(u, Direction::Forward) as u64).sum();
            meter.charge_round(frontier.len() as u64 + scans);
            let relax = |&u: &Vertex| {
                let (adj, ws) = g.neighbors(u, Direction::Forward);
                adj.iter()
                    .zip(ws)
                    .map(|(&v, &w)| (v, level.saturating_add(units_of(w, unit))))
                    .collect::<Vec<_>>()
            };
            let cands: Vec<(Vertex, u64)> = if frontier.len() >= PAR_FRONTIER {
                frontier.par_iter().flat_map_iter(relax).collect()
            } else {
                frontier.iter().flat_map(relax).collect()
            };
            let mut same = Vec::new();
            for (v, nd) in cands {
                if nd <= cap_units && nd < dist[v as usize] {
                    dist[v as usize] = nd;
                    if nd == level {
                        same.push(v);
                    } else {
                        buckets[nd as usize].push(v);
                        pending += 1;
                    }
                }
            }
            same.sort_unstable();
            same.dedup();
            frontier = same;
        }
    }
    RoundedDistances { units: dist, unit }
}

/// Search on `G_Δ` (weights rounded up to multiples of `ε·Δ/(9·h0)`) out to
/// distance `2(1+ε)Δ`, the range a single distance guess is responsible for.
pub fn rounded_bounded_search(
    g: &WDiGraph,
    s: Vertex,
    delta: Ratio<u64>,
    eps: Eps,
    h0: u64,
    meter: &mut CostMeter,
) -> Result<RoundedDistances> {
    let unit = rounding_unit(delta, eps, h0)?;
    let delta = Ratio::new(*delta.numer() as u128, *delta.denom() as u128);
    let reach = Ratio::from_integer(2u128) * (Ratio::from_integer(1u128) + eps.ratio()) * delta / unit;
    let cap_units = reach.ceil().to_integer().min(u32::MAX as u128) as u64;
    Ok(unit_bounded_search(g, s, unit, cap_units, meter))
}
