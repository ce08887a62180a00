use rand::Rng;

use super::{BuildParams, RecursionTrace};
use crate::augment::AugmentSet;
use crate::boolmat::transitive_closure_metered;
use crate::error::{Error, Result};
use crate::graph::{DiGraph, Direction, Vertex, VertexSubset};
use crate::params::max_level;
use crate::parexec::{parallel_map, scoped_parallel, CostMeter};
use crate::rng::{mix, stream, tag};

const STREAM: u64 = tag("jls");

struct Ctx<'a> {
    params: &'a BuildParams,
    n_base: usize,
    r_max: u32,
    tc_prune: bool,
    threshold: usize,
}

struct Sub {
    level: u32,
    id: u64,
    /// Global ids of the local vertices, ascending.
    members: Vec<Vertex>,
    g: DiGraph,
}

#[derive(Default)]
struct SubOut {
    /// `(u, v, level)` in global ids.
    edges: Vec<(Vertex, Vertex, u32)>,
    trace: RecursionTrace,
}

struct PivotOut {
    anc: Vec<Vertex>,
    desc: Vec<Vertex>,
    closure: Option<AugmentSet>,
    ball: usize,
    prune_work: u64,
}

/// Recursive pivot construction on a DAG. Returns the shortcut set and a
/// per-level trace.
pub fn jls_build(g: &DiGraph, params: &BuildParams, tc_prune: bool) -> Result<(AugmentSet, RecursionTrace)> {
    let mut meter = CostMeter::new(g.n());
    run(g, params, tc_prune, &mut meter)
}

pub(super) fn run(
    g: &DiGraph,
    params: &BuildParams,
    tc_prune: bool,
    meter: &mut CostMeter,
) -> Result<(AugmentSet, RecursionTrace)> {
    params.validate()?;
    if !g.is_acyclic() {
        return Err(Error::Cyclic);
    }
    let n = g.n();
    let ctx = Ctx {
        params,
        n_base: n,
        r_max: max_level(n, params.k),
        tc_prune,
        threshold: params.tc_threshold(),
    };
    let root = Sub { level: 0, id: 0, members: (0..n as Vertex).collect(), g: g.clone() };
    let mut out = solve(&ctx, root, meter);

    // An edge found at several levels is attributed to the shallowest one.
    out.edges.sort_unstable_by_key(|&(u, v, r)| (u, v, r));
    out.edges.dedup_by_key(|e| (e.0, e.1));
    for l in out.trace.levels.iter_mut() {
        l.edges_added = 0;
    }
    for &(_, _, r) in &out.edges {
        out.trace.level_mut(r).edges_added += 1;
    }
    let h = AugmentSet::from_vertex_pairs(n, out.edges.iter().map(|&(u, v, _)| (u, v)).collect());
    assert!(out.trace.levels.len() as u32 <= ctx.r_max + 1, "recursion exceeded its depth bound");
    Ok((h, out.trace))
}

fn solve(ctx: &Ctx, sub: Sub, meter: &mut CostMeter) -> SubOut {
    let mut out = SubOut::default();
    let level = sub.level;
    out.trace.level_mut(level).subproblems += 1;
    let n_sub = sub.g.n();
    if n_sub <= 1 {
        return out;
    }

    let p = if level >= ctx.r_max { 1.0 } else { ctx.params.pivot_probability(ctx.n_base, level) };
    let mut rng = stream(ctx.params.seed, &[STREAM, level as u64, sub.id]);
    let pivots: Vec<Vertex> = if p >= 1.0 {
        (0..n_sub as Vertex).collect()
    } else {
        (0..n_sub as Vertex).filter(|_| rng.gen::<f64>() < p).collect()
    };
    meter.charge_round(n_sub as u64);
    out.trace.level_mut(level).pivots += pivots.len() as u64;

    if pivots.is_empty() {
        // Nothing splits this subproblem; it moves to the next level whole.
        let next = Sub { level: level + 1, id: mix(sub.id, &[u64::MAX]), ..sub };
        let child = solve(ctx, next, meter);
        out.edges.extend(child.edges);
        out.trace.merge(&child.trace);
        return out;
    }

    let g = &sub.g;
    let results: Vec<PivotOut> = parallel_map(meter, &pivots, |&p, m| {
        let anc = crate::search::reach_set(g, p, Direction::Backward, m);
        let desc = crate::search::reach_set(g, p, Direction::Forward, m);
        let mut ball: Vec<Vertex> = anc.iter().chain(desc.iter()).copied().collect();
        ball.sort_unstable();
        ball.dedup();
        let size = ball.len();
        let (closure, prune_work) = if ctx.tc_prune && size <= ctx.threshold {
            let mut pm = m.fork();
            let tc = transitive_closure_metered(g, &VertexSubset::from_sorted(ball), &mut pm);
            m.then(&pm);
            (Some(tc), pm.work())
        } else {
            (None, 0)
        };
        PivotOut { anc, desc, closure, ball: size, prune_work }
    });

    let to_global = |v: Vertex| sub.members[v as usize];
    let mut labels: Vec<Vec<u32>> = vec![Vec::new(); n_sub];
    let mut tokens = 0u64;
    {
        let stats = out.trace.level_mut(level);
        for (i, (&p, r)) in pivots.iter().zip(&results).enumerate() {
            stats.max_ball = stats.max_ball.max(r.ball as u64);
            if r.closure.is_some() {
                stats.prune_calls += 1;
                stats.prune_work += r.prune_work;
            }
            for &v in &r.anc {
                labels[v as usize].push(2 * i as u32);
            }
            for &v in &r.desc {
                labels[v as usize].push(2 * i as u32 + 1);
            }
            tokens += (r.anc.len() + r.desc.len()) as u64;
            let gp = to_global(p);
            out.edges.extend(r.anc.iter().filter(|&&v| v != p).map(|&v| (to_global(v), gp, level)));
            out.edges.extend(r.desc.iter().filter(|&&v| v != p).map(|&v| (gp, to_global(v), level)));
            if let Some(tc) = &r.closure {
                out.edges.extend(tc.pairs().map(|(u, v)| (to_global(u), to_global(v), level)));
            }
        }
    }
    meter.charge_round(tokens);

    if p >= 1.0 {
        // Every vertex is a pivot, so every part is a singleton.
        return out;
    }

    let mut order: Vec<Vertex> = (0..n_sub as Vertex).collect();
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

    let children: Vec<Sub> = parts
        .into_iter()
        .enumerate()
        .filter(|(_, part)| part.len() >= 2)
        .map(|(i, part)| {
            let members = part.iter().map(|&v| to_global(v)).collect();
            let cg = g.induced(&VertexSubset::from_sorted(part));
            Sub { level: level + 1, id: mix(sub.id, &[i as u64]), members, g: cg }
        })
        .collect();
    drop(labels);
    let tasks: Vec<_> = children.into_iter().map(|c| move |m: &mut CostMeter| solve(ctx, c, m)).collect();
    for child in scoped_parallel(meter, tasks) {
        out.edges.extend(child.edges);
        out.trace.merge(&child.trace);
    }
    out
}
