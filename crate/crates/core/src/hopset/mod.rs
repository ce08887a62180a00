//! (β, ε)-hopsets: the folklore sampler and the distance-guessing recursive
//! construction with fringe subproblems and truncated-search pruning.

mod cfr;
mod folklore;
mod levels;

use serde::Serialize;

pub use cfr::{
    cfr_build, choose_eta, CfrMode, CfrOptions, EdgeSource, FringeRecord, FringeSpec, HopsetOutput, ProvEdge, Provenance,
    SubKind, SubRecord,
};
pub use folklore::folklore_hopset;
pub use levels::{assign_levels, LevelAssignment};

use crate::eps::Eps;
use crate::error::{Error, Result};
use crate::params::{log2n, Preset};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HopsetParams {
    pub k: u32,
    pub lambda: f64,
    /// Level offset between a vertex's shortcutter role and its pivot role.
    pub big_l: u32,
    /// The value `k^c` dividing each distance guess.
    pub kc: f64,
    #[serde(serialize_with = "ser_eps")]
    pub eps: Eps,
    pub eta_min: u64,
    /// Width multiplier of the η window: `η ∈ eta_step·[σ−1, σ] + eta_min + 1`.
    pub eta_step: u64,
    /// σ is drawn uniformly from `[1, sigma_max]`.
    pub sigma_max: u64,
    pub rho: u64,
    /// Multiplies `k^{r+1}·log n / n` in the level-assignment trials.
    pub level_sample_c: f64,
    /// Testing hook: use this probability for every trial instead.
    pub sample_override: Option<f64>,
    pub boost_rounds: u32,
    /// Inputs with `W > max(n,2)^weight_bound_exp` are rejected.
    pub weight_bound_exp: u32,
    pub preset: Preset,
    pub seed: u64,
}

fn ser_eps<S: serde::Serializer>(e: &Eps, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&e.to_string())
}

impl HopsetParams {
    pub fn new(preset: Preset, n: usize, m: usize, eps: Eps, seed: u64) -> Self {
        let rho = hopset_rho_preset(n, m);
        let l = log2n(n);
        match preset {
            Preset::Paper => {
                let k = (l.ceil() as u32).max(2);
                let kf = k as f64;
                let lambda: f64 = 100.0;
                let big_l = (15.0 - 2.0 * eps.as_f64().ln() / kf.ln()).ceil().max(1.0) as u32;
                let kc = lambda.powi(big_l as i32) * kf.powf((big_l as f64 - 1.0) / 2.0) / l.powi(3);
                let eta_min = (16.0 * lambda * lambda * kf * kf * l * l).ceil() as u64 - 1;
                let sigma_max = (4.0 * lambda * lambda * kf * l * l).ceil() as u64;
                HopsetParams {
                    k,
                    lambda,
                    big_l,
                    kc: kc.max(1.0),
                    eps,
                    eta_min,
                    eta_step: 4 * k as u64,
                    sigma_max,
                    rho,
                    level_sample_c: lambda,
                    sample_override: None,
                    boost_rounds: l.ceil() as u32,
                    weight_bound_exp: 4,
                    preset,
                    seed,
                }
            }
            Preset::Desk => HopsetParams {
                k: 4,
                lambda: 2.0,
                big_l: 2,
                kc: 1.0,
                eps,
                eta_min: 7,
                eta_step: 2,
                sigma_max: 4,
                rho,
                level_sample_c: 0.05,
                sample_override: None,
                boost_rounds: 3,
                weight_bound_exp: 4,
                preset,
                seed,
            },
        }
    }

    pub fn with_rho(mut self, rho: u64) -> Self {
        self.rho = rho;
        self
    }

    /// `eta_min + 1 + eta_step·sigma_max`; twice `eta_min + 1` under both presets.
    pub fn eta_max(&self) -> u64 {
        self.eta_min + 1 + self.eta_step * self.sigma_max
    }

    /// Inclusive η window for a given σ.
    pub fn eta_window(&self, sigma: u64) -> (u64, u64) {
        let base = self.eta_min + 1;
        (base + self.eta_step * (sigma - 1), base + self.eta_step * sigma)
    }

    /// Level-`r` trial probability for a base graph on `n` vertices.
    pub fn level_probability(&self, n: usize, r: u32) -> f64 {
        if let Some(p) = self.sample_override {
            return p.clamp(0.0, 1.0);
        }
        let p = self.level_sample_c * (self.k as f64).powi(r as i32 + 1) * log2n(n) / n.max(1) as f64;
        p.min(1.0)
    }

    /// `D_r = D / (λ^r·k^{r/2})`.
    pub fn d_r(&self, d: f64, r: u32) -> f64 {
        d / (self.lambda.powi(r as i32) * (self.k as f64).powf(r as f64 / 2.0))
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParam(m));
        if self.k < 2 {
            return bad(format!("k must be at least 2, got {}", self.k));
        }
        if self.lambda.is_nan() || self.lambda < 1.0 {
            return bad(format!("lambda must be at least 1, got {}", self.lambda));
        }
        if !(self.kc > 0.0 && self.kc.is_finite()) {
            return bad(format!("k^c must be positive and finite, got {}", self.kc));
        }
        if self.sigma_max < 1 || self.eta_step < 1 {
            return bad("sigma_max and eta_step must be at least 1".into());
        }
        if self.rho < 1 {
            return bad("rho must be at least 1".into());
        }
        if self.level_sample_c.is_nan() || self.level_sample_c <= 0.0 {
            return bad("level sampling constant must be positive".into());
        }
        if self.boost_rounds < 1 {
            return bad("at least one boost round is required".into());
        }
        Ok(())
    }
}

/// `max(1, ⌊(m/n)^{1/4}⌋)`, exact in integers.
pub fn hopset_rho_preset(n: usize, m: usize) -> u64 {
    if n == 0 {
        return 1;
    }
    let (n, m) = (n as u128, m as u128);
    let mut r = 1u128;
    while (r + 1).pow(4) * n <= m {
        r += 1;
    }
    r as u64
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CfrLevelStats {
    pub subproblems: u64,
    pub fringe_subproblems: u64,
    pub pivots: u64,
    pub shortcutters: u64,
    /// Largest outer-radius ball seen by a pivot search.
    pub max_ball: u64,
    pub prune_calls: u64,
    /// Metered work of the truncated searches alone.
    pub prune_work: u64,
    /// Distinct edges whose kept copy was produced at this level.
    pub edges_added: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct HopsetTrace {
    pub levels: Vec<CfrLevelStats>,
    /// Distinct edges whose kept copy came from the outer shell.
    pub shell_edges: u64,
    pub guesses: u64,
    pub rounds: u32,
    pub mode: String,
}

impl HopsetTrace {
    pub(crate) fn level_mut(&mut self, r: u32) -> &mut CfrLevelStats {
        let r = r as usize;
        if self.levels.len() <= r {
            self.levels.resize(r + 1, CfrLevelStats::default());
        }
        &mut self.levels[r]
    }

    pub(crate) fn merge(&mut self, other: &HopsetTrace) {
        for (r, s) in other.levels.iter().enumerate() {
            let t = self.level_mut(r as u32);
            t.subproblems += s.subproblems;
            t.fringe_subproblems += s.fringe_subproblems;
            t.pivots += s.pivots;
            t.shortcutters += s.shortcutters;
            t.max_ball = t.max_ball.max(s.max_ball);
            t.prune_calls += s.prune_calls;
            t.prune_work += s.prune_work;
            t.edges_added += s.edges_added;
        }
        self.shell_edges += other.shell_edges;
    }

    pub fn total_edges(&self) -> u64 {
        self.levels.iter().map(|l| l.edges_added).sum::<u64>() + self.shell_edges
    }

    pub fn prune_work(&self) -> u64 {
        self.levels.iter().map(|l| l.prune_work).sum()
    }
}
