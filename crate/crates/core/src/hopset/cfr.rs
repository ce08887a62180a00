use num_rational::Ratio;
use num_traits::ToPrimitive;
use rand::Rng;
use serde::Serialize;

use super::levels::{draw_levels, LevelAssignment};
use super::{HopsetParams, HopsetTrace};
use crate::augment::AugmentSet;
use crate::error::Result;
use crate::graph::{Direction, Vertex, VertexSubset, WDiGraph};
use crate::params::max_level;
use crate::parexec::{parallel_map, scoped_parallel, CostMeter};
use crate::rng::{mix, stream, tag};
use crate::search::{dijkstra_ball, rounding_unit, trunc_nearest, UNREACHED};

const STREAM: u64 = tag("cfr");
const LEVELS: u64 = tag("cfr_levels");
const SHELL: u32 = u32::MAX;

/// How the outer shell measures distances.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CfrMode {
    /// Every guess works on the input weights.
    Exact,
    /// Each guess `Δ = 2^j` works on weights rounded up to multiples of
    /// `ε·Δ/(9·h0)`; output weights are the rounded lengths, rounded up.
    Rounded { h0: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CfrOptions {
    pub trunc_prune: bool,
    pub mode: CfrMode,
    /// Keep every subproblem, raw edge and fringe choice for inspection.
    pub record_provenance: bool,
}

impl Default for CfrOptions {
    fn default() -> Self {
        CfrOptions { trunc_prune: true, mode: CfrMode::Exact, record_provenance: false }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SubKind {
    Shell,
    Root,
    Core,
    Fringe,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EdgeSource {
    Shell,
    Trunc,
    Shortcutter,
}

#[derive(Clone, Debug, Serialize)]
pub struct SubRecord {
    pub kind: SubKind,
    pub level: u32,
    pub round: u32,
    pub guess: i32,
    pub d_r: f64,
    /// Index of the subproblem this one was carved out of.
    pub parent: Option<usize>,
    /// Global ids, ascending. The subproblem graph is the induced subgraph.
    pub members: Vec<Vertex>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProvEdge {
    pub u: Vertex,
    pub v: Vertex,
    pub w: u64,
    pub sub: usize,
    pub source: EdgeSource,
}

#[derive(Clone, Debug, Serialize)]
pub struct FringeRecord {
    pub sub: usize,
    pub pivot: Vertex,
    pub sigma: u64,
    pub eta: u64,
    /// Global ids, ascending.
    pub fringe: Vec<Vertex>,
    /// `(η, fringe size)` over the whole window.
    pub counts: Vec<(u64, usize)>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Provenance {
    pub subs: Vec<SubRecord>,
    pub edges: Vec<ProvEdge>,
    pub fringes: Vec<FringeRecord>,
    /// Level draw used by each `(round, guess)`.
    pub levels: Vec<(u32, i32, LevelAssignment)>,
}

impl Provenance {
    fn append(&mut self, mut other: Provenance) {
        let off = self.subs.len();
        self.subs.extend(other.subs.into_iter().map(|s| SubRecord { parent: s.parent.map(|p| p + off), ..s }));
        self.edges.extend(other.edges.into_iter().map(|e| ProvEdge { sub: e.sub + off, ..e }));
        self.fringes.extend(other.fringes.into_iter().map(|f| FringeRecord { sub: f.sub + off, ..f }));
        self.levels.append(&mut other.levels);
    }
}

#[derive(Clone, Debug)]
pub struct HopsetOutput {
    pub h: AugmentSet,
    pub trace: HopsetTrace,
    pub meter: CostMeter,
    pub provenance: Option<Provenance>,
}

/// The η picked for one pivot and the fringe it cuts out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FringeSpec {
    pub pivot: Vertex,
    pub sigma: u64,
    pub eta: u64,
    /// Local ids of the input graph.
    pub fringe: VertexSubset,
    pub counts: Vec<(u64, usize)>,
}

/// `⌊x / scale⌋` as an integer search radius.
fn cap(x: f64, scale: f64) -> u64 {
    let c = (x / scale).floor();
    if c >= (UNREACHED - 1) as f64 {
        UNREACHED - 1
    } else {
        c.max(0.0) as u64
    }
}

struct Scan {
    eta: u64,
    fringe: Vec<Vertex>,
    counts: Vec<(u64, usize)>,
    /// `(u, dist from pivot, dist to pivot)` over the outer ball.
    ball: Vec<(Vertex, u64, u64)>,
}

fn scan_pivot(g: &WDiGraph, v: Vertex, sigma: u64, d_r: f64, p: &HopsetParams, scale: f64, m: &mut CostMeter) -> Scan {
    let (lo, hi) = p.eta_window(sigma);
    let outer = cap((hi + 1) as f64 * d_r, scale);
    let fwd = dijkstra_ball(g, v, Direction::Forward, outer, m);
    let bwd = dijkstra_ball(g, v, Direction::Backward, outer, m);
    let mut ball: Vec<(Vertex, u64, u64)> = fwd.iter().map(|&(u, d)| (u, d, UNREACHED)).collect();
    ball.extend(bwd.iter().map(|&(u, d)| (u, UNREACHED, d)));
    ball.sort_unstable_by_key(|&(u, _, _)| u);
    ball.dedup_by(|b, a| {
        if a.0 == b.0 {
            a.1 = a.1.min(b.1);
            a.2 = a.2.min(b.2);
            true
        } else {
            false
        }
    });

    // Radii for η−1 … η+1 across the window, indexed from lo−1.
    let caps: Vec<u64> = (lo - 1..=hi + 1).map(|e| cap(e as f64 * d_r, scale)).collect();
    let c = |e: u64| caps[(e - (lo - 1)) as usize];
    let in_fringe = |rd: u64, e: u64| c(e - 1) < rd && rd <= c(e + 1);
    let counts: Vec<(u64, usize)> = (lo..=hi)
        .map(|e| (e, ball.iter().filter(|b| in_fringe(b.1.min(b.2), e)).count()))
        .collect();
    m.charge(ball.len() as u64 * (hi - lo + 1));
    let &(eta, _) = counts.iter().min_by_key(|&&(e, k)| (k, e)).expect("window is non-empty");
    let fringe = ball.iter().filter(|b| in_fringe(b.1.min(b.2), eta)).map(|b| b.0).collect();
    Scan { eta, fringe, counts, ball }
}

/// Pick `η ∈ eta_step·[σ−1, σ] + eta_min + 1` minimising the number of
/// vertices whose distance to or from `v` lies in `((η−1)·d_r, (η+1)·d_r]`,
/// ties towards the smaller η.
pub fn choose_eta(g: &WDiGraph, v: Vertex, d_r: f64, params: &HopsetParams, sigma: u64) -> FringeSpec {
    assert!((1..=params.sigma_max).contains(&sigma), "sigma {sigma} outside [1, {}]", params.sigma_max);
    let s = scan_pivot(g, v, sigma, d_r, params, 1.0, &mut CostMeter::default());
    FringeSpec { pivot: v, sigma, eta: s.eta, fringe: VertexSubset::from_sorted(s.fringe), counts: s.counts }
}

struct Ctx<'a> {
    params: &'a HopsetParams,
    opts: &'a CfrOptions,
    levels: &'a [Option<u32>],
    /// Real length of one working-graph weight unit.
    scale: f64,
    /// Converts a working-graph distance into an output weight.
    real: &'a (dyn Fn(u64) -> u64 + Sync),
    y: usize,
    d: f64,
    round: u32,
    guess: i32,
}

struct Sub {
    level: u32,
    id: u64,
    kind: SubKind,
    members: Vec<Vertex>,
    g: WDiGraph,
    /// The truncated searches already ran on this exact vertex set.
    trunc_done: bool,
}

#[derive(Default)]
struct Out {
    /// `(u, v, w, level or SHELL)` in global ids.
    recs: Vec<(Vertex, Vertex, u64, u32)>,
    trace: HopsetTrace,
    prov: Option<Provenance>,
}

impl Out {
    fn new(record: bool) -> Self {
        Out { prov: record.then(Provenance::default), ..Default::default() }
    }

    fn emit(&mut self, u: Vertex, v: Vertex, w: u64, origin: u32, source: EdgeSource) {
        self.recs.push((u, v, w, origin));
        if let Some(p) = &mut self.prov {
            p.edges.push(ProvEdge { u, v, w, sub: 0, source });
        }
    }

    /// Like `absorb`, for the output of a recursive call on a subproblem of
    /// the one recorded first in `self`.
    fn absorb_child(&mut self, child: Out) {
        let off = self.prov.as_ref().map_or(0, |p| p.subs.len());
        self.absorb(child);
        if let Some(first) = self.prov.as_mut().and_then(|p| p.subs.get_mut(off)) {
            first.parent = Some(0);
        }
    }

    fn absorb(&mut self, child: Out) {
        self.recs.extend(child.recs);
        self.trace.merge(&child.trace);
        if let (Some(p), Some(c)) = (&mut self.prov, child.prov) {
            p.append(c);
        }
    }
}

type Ball = Vec<(Vertex, u64)>;

/// Balls out and in around each of `centers`, to radius `radius`.
fn balls(g: &WDiGraph, centers: &[Vertex], radius: u64, meter: &mut CostMeter) -> Vec<(Ball, Ball)> {
    parallel_map(meter, centers, |&s, m| {
        (dijkstra_ball(g, s, Direction::Forward, radius, m), dijkstra_ball(g, s, Direction::Backward, radius, m))
    })
}

fn solve(ctx: &Ctx, sub: Sub, meter: &mut CostMeter) -> Out {
    let p = ctx.params;
    let mut out = Out::new(ctx.opts.record_provenance);
    let level = sub.level;
    let d_r = p.d_r(ctx.d, level);
    {
        let s = out.trace.level_mut(level);
        s.subproblems += 1;
        if sub.kind == SubKind::Fringe {
            s.fringe_subproblems += 1;
        }
    }
    if let Some(pr) = &mut out.prov {
        pr.subs.push(SubRecord {
            kind: sub.kind,
            level,
            round: ctx.round,
            guess: ctx.guess,
            d_r,
            parent: None,
            members: sub.members.clone(),
        });
    }
    let n_sub = sub.g.n();
    if n_sub <= 1 {
        return out;
    }
    let g = &sub.g;
    let glob = |v: Vertex| sub.members[v as usize];
    let real = ctx.real;

    if ctx.opts.trunc_prune && !sub.trunc_done {
        let locals: Vec<Vertex> = (0..n_sub as Vertex).collect();
        let mut pm = meter.fork();
        let res = parallel_map(&mut pm, &locals, |&v, m| {
            (trunc_nearest(g, v, Direction::Forward, ctx.y, m), trunc_nearest(g, v, Direction::Backward, ctx.y, m))
        });
        meter.then(&pm);
        let s = out.trace.level_mut(level);
        s.prune_calls += n_sub as u64;
        s.prune_work += pm.work();
        for (v, (desc, anc)) in res.into_iter().enumerate() {
            let gv = glob(v as Vertex);
            for (t, d) in desc {
                out.emit(gv, glob(t), real(d), level, EdgeSource::Trunc);
            }
            for (t, d) in anc {
                out.emit(glob(t), gv, real(d), level, EdgeSource::Trunc);
            }
        }
    }

    let role = |r: u32| -> Vec<Vertex> {
        (0..n_sub as Vertex).filter(|&v| ctx.levels[glob(v) as usize] == Some(r)).collect()
    };
    meter.charge_round(n_sub as u64);

    let shortcutters = role(level + p.big_l);
    if !shortcutters.is_empty() {
        out.trace.level_mut(level).shortcutters += shortcutters.len() as u64;
        let radius = cap(p.eta_max() as f64 * d_r, ctx.scale);
        for (&s, (desc, anc)) in shortcutters.iter().zip(balls(g, &shortcutters, radius, meter)) {
            let gs = glob(s);
            for (t, d) in desc.into_iter().filter(|&(t, _)| t != s) {
                out.emit(gs, glob(t), real(d), level, EdgeSource::Shortcutter);
            }
            for (t, d) in anc.into_iter().filter(|&(t, _)| t != s) {
                out.emit(glob(t), gs, real(d), level, EdgeSource::Shortcutter);
            }
        }
    }

    let pivots = role(level);
    let mut children: Vec<Sub> = Vec::new();
    if pivots.is_empty() {
        // Nothing cuts this subproblem. It only moves down while some member
        // still has a role at a deeper level.
        let deeper = sub.members.iter().any(|&v| ctx.levels[v as usize].is_some_and(|l| l > level));
        if deeper {
            children.push(Sub {
                level: level + 1,
                id: mix(sub.id, &[u64::MAX]),
                kind: sub.kind,
                trunc_done: true,
                ..sub
            });
        }
    } else {
        out.trace.level_mut(level).pivots += pivots.len() as u64;
        let mut rng = stream(p.seed, &[STREAM, ctx.round as u64, ctx.guess as u64, level as u64, sub.id]);
        let jobs: Vec<(Vertex, u64)> = pivots.iter().map(|&v| (v, rng.gen_range(1..=p.sigma_max))).collect();
        let scans = parallel_map(meter, &jobs, |&(v, sigma), m| scan_pivot(g, v, sigma, d_r, p, ctx.scale, m));

        let mut cross = vec![false; n_sub];
        let mut labels: Vec<Vec<u32>> = vec![Vec::new(); n_sub];
        let mut tokens = 0u64;
        for (i, (&(v, sigma), scan)) in jobs.iter().zip(scans).enumerate() {
            let s = out.trace.level_mut(level);
            s.max_ball = s.max_ball.max(scan.ball.len() as u64);
            let c = cap(scan.eta as f64 * d_r, ctx.scale);
            for &(u, from, to) in &scan.ball {
                let (desc, anc) = (from <= c, to <= c);
                if desc && anc {
                    cross[u as usize] = true;
                } else if anc {
                    labels[u as usize].push(2 * i as u32);
                } else if desc {
                    labels[u as usize].push(2 * i as u32 + 1);
                }
            }
            tokens += scan.ball.len() as u64;
            if let Some(pr) = &mut out.prov {
                pr.fringes.push(FringeRecord {
                    sub: 0,
                    pivot: glob(v),
                    sigma,
                    eta: scan.eta,
                    fringe: scan.fringe.iter().map(|&u| glob(u)).collect(),
                    counts: scan.counts,
                });
            }
            if scan.fringe.len() >= 2 {
                let members = scan.fringe.iter().map(|&u| glob(u)).collect();
                let fg = g.induced(&VertexSubset::from_sorted(scan.fringe));
                children.push(Sub {
                    level: level + 1,
                    id: mix(sub.id, &[1, glob(v) as u64]),
                    kind: SubKind::Fringe,
                    members,
                    g: fg,
                    trunc_done: false,
                });
            }
        }
        meter.charge_round(tokens);

        let mut order: Vec<Vertex> = (0..n_sub as Vertex).filter(|&v| !cross[v as usize]).collect();
        order.sort_by(|&a, &b| labels[a as usize].cmp(&labels[b as usize]).then(a.cmp(&b)));
        meter.charge_round(n_sub as u64);
        let mut parts: Vec<Vec<Vertex>> = Vec::new();
        for (i, &v) in order.iter().enumerate() {
            if i == 0 || labels[v as usize] != labels[order[i - 1] as usize] {
                parts.push(Vec::new());
            }
            parts.last_mut().expect("part").push(v);
        }
        parts.sort_by_key(|p| p[0]);
        for (i, part) in parts.into_iter().enumerate().filter(|(_, p)| p.len() >= 2) {
            let members = part.iter().map(|&v| glob(v)).collect();
            let cg = g.induced(&VertexSubset::from_sorted(part));
            children.push(Sub {
                level: level + 1,
                id: mix(sub.id, &[2, i as u64]),
                kind: SubKind::Core,
                members,
                g: cg,
                trunc_done: false,
            });
        }
    }

    let tasks: Vec<_> = children.into_iter().map(|c| move |m: &mut CostMeter| solve(ctx, c, m)).collect();
    for child in scoped_parallel(meter, tasks) {
        out.absorb_child(child);
    }
    out
}

/// One boost round at one distance guess `2^j`: level draw, shell
/// shortcutters, then the recursion from level 0.
#[allow(clippy::too_many_arguments)]
fn run_guess(g: &WDiGraph, params: &HopsetParams, opts: &CfrOptions, round: u32, j: i32, meter: &mut CostMeter) -> Result<Out> {
    let n = g.n();
    let mut rng = stream(params.seed, &[LEVELS, round as u64, (j + 1) as u64]);
    let assignment = draw_levels(n, params, &mut rng);
    meter.charge_round(n as u64);
    let delta = if j < 0 { Ratio::new(1u64, 1u64 << (-j)) } else { Ratio::from_integer(1u64 << j) };

    let (work, scale, unit) = match opts.mode {
        CfrMode::Exact => (None, 1.0, None),
        CfrMode::Rounded { h0 } => {
            let unit = rounding_unit(delta, params.eps, h0)?;
            let wg = g.map_weights(|w| crate::search::units_of(w, unit));
            meter.charge_round(g.m() as u64);
            (Some(wg), unit.to_f64().unwrap_or(f64::MIN_POSITIVE), Some(unit))
        }
    };
    let wg = work.as_ref().unwrap_or(g);
    let real = move |d: u64| -> u64 {
        match unit {
            None => d,
            Some(u) => (u * Ratio::from_integer(d as u128)).ceil().to_integer().to_u64().unwrap_or(UNREACHED),
        }
    };
    let delta_f = delta.to_f64().expect("finite guess");
    let ctx = Ctx {
        params,
        opts,
        levels: &assignment.levels,
        scale,
        real: &real,
        y: (params.rho * params.rho) as usize,
        d: delta_f / params.kc,
        round,
        guess: j,
    };

    let mut out = Out::new(opts.record_provenance);
    if let Some(pr) = &mut out.prov {
        pr.subs.push(SubRecord {
            kind: SubKind::Shell,
            level: 0,
            round,
            guess: j,
            d_r: delta_f,
            parent: None,
            members: (0..n as Vertex).collect(),
        });
        pr.levels.push((round, j, assignment.clone()));
    }
    let shell: Vec<Vertex> = (0..n as Vertex)
        .filter(|&v| assignment.levels[v as usize].is_some_and(|l| l <= params.big_l))
        .collect();
    let radius = cap(2.0 * delta_f, scale);
    for (&s, (desc, anc)) in shell.iter().zip(balls(wg, &shell, radius, meter)) {
        for (t, d) in desc.into_iter().filter(|&(t, _)| t != s) {
            out.emit(s, t, real(d), SHELL, EdgeSource::Shell);
        }
        for (t, d) in anc.into_iter().filter(|&(t, _)| t != s) {
            out.emit(t, s, real(d), SHELL, EdgeSource::Shell);
        }
    }

    let root = Sub {
        level: 0,
        id: mix(0, &[round as u64, (j + 1) as u64]),
        kind: SubKind::Root,
        members: (0..n as Vertex).collect(),
        g: wg.clone(),
        trunc_done: false,
    };
    let mut m = meter.fork();
    let inner = solve(&ctx, root, &mut m);
    meter.then(&m);
    out.absorb(inner);
    Ok(out)
}

/// Hopset for a non-negatively weighted digraph: `boost_rounds` independent
/// rounds, each covering every distance scale `2^j` with
/// `j ∈ [−1, ⌊log₂(n·W)⌋]`.
pub fn cfr_build(g: &WDiGraph, params: &HopsetParams, opts: &CfrOptions) -> Result<HopsetOutput> {
    params.validate()?;
    g.check_weight_bound(params.weight_bound_exp)?;
    let n = g.n();
    let mut meter = CostMeter::new(n);
    let nw = (n.max(1) as u128) * (g.max_weight().max(1) as u128);
    let j_max = (127 - nw.leading_zeros()) as i32;
    let jobs: Vec<(u32, i32)> = (0..params.boost_rounds)
        .flat_map(|r| (-1..=j_max).map(move |j| (r, j)))
        .collect();
    let tasks: Vec<_> = jobs
        .iter()
        .map(|&(r, j)| move |m: &mut CostMeter| run_guess(g, params, opts, r, j, m))
        .collect();
    let mut total = Out::new(opts.record_provenance);
    for res in scoped_parallel(&mut meter, tasks) {
        total.absorb(res?);
    }

    // Keep the lightest copy of each pair; among equal weights the deepest-
    // first sort order puts recursion levels before the shell.
    let mut recs = total.recs;
    recs.sort_unstable();
    recs.dedup_by_key(|e| (e.0, e.1));
    let mut trace = total.trace;
    for l in trace.levels.iter_mut() {
        l.edges_added = 0;
    }
    trace.shell_edges = 0;
    for &(_, _, _, origin) in &recs {
        if origin == SHELL {
            trace.shell_edges += 1;
        } else {
            trace.level_mut(origin).edges_added += 1;
        }
    }
    trace.guesses = (j_max + 2) as u64;
    trace.rounds = params.boost_rounds;
    trace.mode = match opts.mode {
        CfrMode::Exact => "exact".into(),
        CfrMode::Rounded { h0 } => format!("rounded(h0={h0})"),
    };
    debug_assert!(trace.levels.len() as u32 <= max_level(n, params.k) + 2);
    let h = AugmentSet::from_vertex_triples(n, recs.into_iter().map(|(u, v, w, _)| (u, v, w)).collect());
    Ok(HopsetOutput { h, trace, meter, provenance: total.prov })
}

#[cfg(test)]
#[allow(clippy::needless_range_loop)]
mod tests {
    use super::*;
    use crate::eps::Eps;
    use crate::graph::gen::{gen_path, gen_random_digraph, randomize_weights};
    use crate::params::Preset;
    use crate::search::dijkstra;

    fn desk(n: usize, m: usize, seed: u64) -> HopsetParams {
        HopsetParams::new(Preset::Desk, n, m, Eps::new(1, 4).unwrap(), seed)
    }

    fn apsp(g: &WDiGraph) -> Vec<Vec<u64>> {
        (0..g.n() as Vertex).map(|s| dijkstra(g, s, Direction::Forward, None).dist).collect()
    }

    #[test]
    fn empty_and_single() {
        for n in [0, 1] {
            let g = WDiGraph::from_edges(n, std::iter::empty()).unwrap();
            let out = cfr_build(&g, &desk(n, 0, 0), &CfrOptions::default()).unwrap();
            assert!(out.h.is_empty());
        }
    }

    #[test]
    fn weights_never_shorten_distances() {
        for seed in 0..6 {
            let g = randomize_weights(&gen_random_digraph(40, 120, seed).unwrap(), 20, seed).unwrap();
            let before = apsp(&g);
            for trunc_prune in [false, true] {
                let opts = CfrOptions { trunc_prune, ..Default::default() };
                let out = cfr_build(&g, &desk(40, 120, seed), &opts).unwrap();
                for (u, v, w) in out.h.weighted() {
                    assert_eq!(w, before[u as usize][v as usize], "exact weight on {u}->{v}");
                }
                assert_eq!(apsp(&g.union(&out.h)), before);
                assert_eq!(out.trace.total_edges(), out.h.len() as u64);
            }
        }
    }

    #[test]
    fn rounded_mode_overestimates_only() {
        let g = randomize_weights(&gen_random_digraph(32, 100, 4).unwrap(), 9, 4).unwrap();
        let before = apsp(&g);
        let opts = CfrOptions { mode: CfrMode::Rounded { h0: 4 }, ..Default::default() };
        let out = cfr_build(&g, &desk(32, 100, 4), &opts).unwrap();
        assert!(out.h.weighted().all(|(u, v, w)| w >= before[u as usize][v as usize]));
        assert_eq!(apsp(&g.union(&out.h)), before);
        assert!(out.trace.mode.starts_with("rounded"));
    }

    #[test]
    fn deterministic() {
        let g = randomize_weights(&gen_random_digraph(48, 150, 9).unwrap(), 30, 9).unwrap();
        let p = desk(48, 150, 77);
        let a = cfr_build(&g, &p, &CfrOptions::default()).unwrap();
        let b = cfr_build(&g, &p, &CfrOptions::default()).unwrap();
        assert_eq!(a.h, b.h);
        assert_eq!(a.trace, b.trace);
    }

    #[test]
    fn choose_eta_on_a_path() {
        // From vertex 0 of a unit path every vertex u sits at distance u, so
        // each window position cuts exactly two vertices out of the ball.
        let g = WDiGraph::unit(&gen_path(64));
        let p = desk(64, 63, 0);
        let spec = choose_eta(&g, 0, 1.0, &p, 2);
        assert_eq!(p.eta_window(2), (10, 12));
        assert_eq!(spec.eta, 10);
        assert_eq!(spec.fringe.members(), &[10, 11]);
        assert!(spec.counts.iter().all(|&(_, c)| c == 2));
    }

    #[test]
    fn forced_shell_gives_full_closure() {
        // Everyone at level 0 makes every vertex a shell shortcutter, so each
        // guess links all pairs within 2^{j+1}; over all guesses that is every
        // reachable pair.
        let g = randomize_weights(&gen_random_digraph(20, 40, 2).unwrap(), 5, 2).unwrap();
        let mut p = desk(20, 40, 3);
        p.sample_override = Some(1.0);
        p.boost_rounds = 1;
        let out = cfr_build(&g, &p, &CfrOptions::default()).unwrap();
        let d = apsp(&g);
        for u in 0..20 {
            for v in 0..20 {
                if u != v && d[u][v] != UNREACHED {
                    assert_eq!(out.h.weight_of(u as Vertex, v as Vertex), Some(d[u][v]));
                }
            }
        }
    }

    #[test]
    fn provenance_offsets_line_up() {
        let g = randomize_weights(&gen_random_digraph(30, 90, 5).unwrap(), 10, 5).unwrap();
        let opts = CfrOptions { record_provenance: true, ..Default::default() };
        let out = cfr_build(&g, &desk(30, 90, 5), &opts).unwrap();
        let prov = out.provenance.unwrap();
        assert!(prov.edges.iter().all(|e| e.sub < prov.subs.len()));
        assert!(prov.fringes.iter().all(|f| f.sub < prov.subs.len()));
        for e in &prov.edges {
            let s = &prov.subs[e.sub];
            assert!(s.members.binary_search(&e.u).is_ok() && s.members.binary_search(&e.v).is_ok());
        }
    }
}
