//! Command-line front end. `run` parses arguments, executes one command and
//! writes a deterministic report; wall-clock time goes to stderr only.

use std::ffi::OsString;
use std::fmt::Display;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::augment::AugmentSet;
use crate::eps::Eps;
use crate::error::{Error, Result};
use crate::graph::gen::{gen_layered, gen_path, gen_random_dag, gen_random_digraph, gen_spine_dag, randomize_weights};
use crate::graph::io::{augment_to_string, digraph_to_string, read_edge_list, wdigraph_to_string, EdgeList};
use crate::graph::{DiGraph, Direction, Vertex, WDiGraph};
use crate::hopset::{cfr_build, folklore_hopset, CfrMode, CfrOptions, HopsetParams};
use crate::params::Preset;
use crate::parexec::CostMeter;
use crate::pipeline::{reach_with, sssp, SsspOptions};
use crate::search::{bfs, dijkstra, UNREACHED};
use crate::shortcut::{build_shortcut, folklore_shortcut, BuildParams};
use crate::verify::{
    density_sweep, standard_densities, verify_hopset_with, verify_shortcut_auto, SweepBuilder, VerifyConfig,
    VerifyReport,
};

/// Exit status for a run whose checks found a violated property.
pub const EXIT_FAILED_CHECK: i32 = 1;
/// Exit status for bad arguments, unreadable input or invalid parameters.
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "hopcut", version, about = "Shortcut sets, hopsets, and the searches that use them")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Switch {
    On,
    Off,
}

impl Switch {
    fn on(self) -> bool {
        self == Switch::On
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    #[arg(long, global = true, default_value = "desk")]
    pub preset: Preset,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Overrides the preset's ρ formula.
    #[arg(long, global = true)]
    pub rho: Option<u64>,
    /// Decimal or fraction, e.g. 0.25 or 1/4.
    #[arg(long, global = true, default_value = "1/4")]
    pub eps: Eps,
    #[arg(long, global = true, value_enum, default_value = "on")]
    pub tc_prune: Switch,
    #[arg(long, global = true, value_enum, default_value = "on")]
    pub trunc_prune: Switch,
    #[arg(long, global = true, default_value_t = crate::verify::DEFAULT_ORACLE_CAP)]
    pub oracle_cap: usize,
    #[arg(long, global = true, default_value_t = crate::verify::DEFAULT_PAIRS_SAMPLE)]
    pub pairs_sample: usize,
    /// Weights above max(n,2)^weight_exp are rejected.
    #[arg(long, global = true, default_value_t = 4)]
    pub weight_exp: u32,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GenKind {
    Path,
    Dag,
    Digraph,
    Layered,
    Spine,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BenchBuilder {
    Jls,
    Folklore,
    Bare,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write a seeded synthetic graph.
    Generate {
        #[arg(long, value_enum)]
        kind: GenKind,
        #[arg(long, default_value_t = 64)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        m: usize,
        #[arg(long, default_value_t = 8)]
        layers: usize,
        #[arg(long, default_value_t = 8)]
        width: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        /// Attach uniform weights in [1, wmax].
        #[arg(long)]
        wmax: Option<u64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build a shortcut set.
    BuildShortcut {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Use the sampling baseline with this many vertices instead.
        #[arg(long)]
        folklore: Option<usize>,
    },
    /// Build a hopset.
    BuildHopset {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        folklore: Option<usize>,
        /// Run every guess on weights rounded for this hopbound.
        #[arg(long)]
        rounded_h0: Option<u64>,
    },
    /// Check an augmentation against the brute-force oracles.
    Verify {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        augment: PathBuf,
    },
    /// Vertices reachable from a source, by BFS on the graph plus a shortcut set.
    Reach {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        source: Vertex,
    },
    /// (1+ε)-approximate distances from a source.
    Sssp {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        source: Vertex,
        #[arg(long)]
        hopbound: Option<u64>,
    },
    /// Hopbound and span across graph densities.
    Bench {
        #[arg(long, default_value_t = 256)]
        n: usize,
        /// Edge counts; defaults to n, n^1.5 and n² (clamped).
        #[arg(long, value_delimiter = ',')]
        densities: Option<Vec<usize>>,
        #[arg(long, default_value_t = 10)]
        seeds: u64,
        #[arg(long, value_enum, default_value = "jls")]
        builder: BenchBuilder,
        #[arg(long, default_value_t = 16)]
        sample: usize,
    },
}

/// Ordered key/value lines plus a machine-readable summary.
#[derive(Default)]
struct Report {
    lines: Vec<(String, String)>,
    summary: Map<String, Value>,
    /// Verbatim payload (generated graphs written to stdout).
    raw: Option<String>,
    failures: Vec<String>,
}

impl Report {
    fn put(&mut self, key: &str, value: impl Display) {
        self.lines.push((key.to_string(), value.to_string()));
    }

    fn sum(&mut self, key: &str, value: impl Serialize) {
        self.summary.insert(key.into(), serde_json::to_value(value).expect("serializable"));
    }

    fn both(&mut self, key: &str, value: impl Display + Serialize) {
        self.put(key, &value);
        self.sum(key, value);
    }

    fn meter(&mut self, prefix: &str, m: &CostMeter) {
        self.put(&format!("{prefix}.work"), m.work());
        self.put(&format!("{prefix}.span"), m.span());
        self.sum(prefix, json!({"work": m.work(), "span": m.span(), "sync": m.sync()}));
    }

    fn fail(&mut self, property: &str) {
        self.failures.push(property.to_string());
    }

    fn render(&self, format: Format) -> String {
        if let Some(raw) = &self.raw {
            return raw.clone();
        }
        let mut s = String::new();
        let status = if self.failures.is_empty() { "ok".to_string() } else { format!("failed({})", self.failures.join(",")) };
        match format {
            Format::Text => {
                let width = self.lines.iter().map(|(k, _)| k.len()).max().unwrap_or(0).max(6);
                for (k, v) in &self.lines {
                    s.push_str(&format!("{k:<width$}  {v}\n"));
                }
                s.push_str(&format!("{:<width$}  {status}\n", "status"));
            }
            Format::Structured => {
                for (k, v) in &self.lines {
                    s.push_str(&format!("{k}={v}\n"));
                }
                s.push_str(&format!("status={status}\n"));
                let mut summary = self.summary.clone();
                summary.insert("status".into(), Value::String(status));
                s.push_str(&format!("summary={}\n", Value::Object(summary)));
            }
        }
        s
    }
}

fn load(path: &Path) -> Result<EdgeList> {
    let list = read_edge_list(path)?;
    if list.augment {
        return Err(Error::InvalidParam(format!("{} is an augmentation file, expected a graph", path.display())));
    }
    Ok(list)
}

fn write_out(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text)?;
    Ok(())
}

fn build_params(c: &Common, n: usize, m: usize) -> BuildParams {
    let p = BuildParams::new(c.preset, n, m, c.seed);
    match c.rho {
        Some(r) => p.with_rho(r),
        None => p,
    }
}

fn hopset_params(c: &Common, n: usize, m: usize) -> HopsetParams {
    let mut p = HopsetParams::new(c.preset, n, m, c.eps, c.seed);
    if let Some(r) = c.rho {
        p = p.with_rho(r);
    }
    p.weight_bound_exp = c.weight_exp;
    p
}

fn verify_config(c: &Common) -> VerifyConfig {
    VerifyConfig { oracle_cap: c.oracle_cap, pairs_sample: c.pairs_sample, seed: c.seed }
}

fn config_lines(r: &mut Report, c: &Common, command: &str) {
    r.put("command", command);
    r.put("config.preset", c.preset);
    r.put("config.seed", c.seed);
    r.put("config.rho", c.rho.map_or("preset".to_string(), |x| x.to_string()));
    r.put("config.eps", c.eps);
    r.put("config.tc_prune", if c.tc_prune.on() { "on" } else { "off" });
    r.put("config.trunc_prune", if c.trunc_prune.on() { "on" } else { "off" });
    r.put("config.oracle_cap", c.oracle_cap);
    r.put("config.pairs_sample", c.pairs_sample);
    r.put("config.weight_exp", c.weight_exp);
    r.sum("command", command);
    r.sum(
        "config",
        json!({
            "preset": c.preset,
            "seed": c.seed,
            "rho": c.rho,
            "eps": c.eps.to_string(),
            "tc_prune": c.tc_prune,
            "trunc_prune": c.trunc_prune,
            "oracle_cap": c.oracle_cap,
            "pairs_sample": c.pairs_sample,
            "weight_exp": c.weight_exp,
        }),
    );
}

fn verify_lines(r: &mut Report, v: &VerifyReport) {
    r.put("verify.kind", &v.kind);
    r.put("verify.mode", &v.mode);
    r.put("verify.edges_valid", v.edges_valid);
    r.put("verify.reach_preserved", v.reach_preserved);
    if let Some(x) = v.dist_preserved {
        r.put("verify.dist_preserved", x);
    }
    if let Some(x) = v.approx_holds {
        r.put("verify.approx_holds", x);
    }
    r.put("verify.beta_meas", v.beta_meas);
    r.put("verify.worst_pair", v.worst_pair.map_or("none".into(), |(a, b)| format!("{a}->{b}")));
    if !v.invalid_edges.is_empty() {
        let list: Vec<String> = v.invalid_edges.iter().map(|(a, b)| format!("{a}->{b}")).collect();
        r.put("verify.invalid_edges", list.join(" "));
    }
    r.sum("verify", v);
    for f in v.failures() {
        r.fail(f);
    }
}

fn fmt_dist(d: u64) -> String {
    if d == UNREACHED {
        "inf".into()
    } else {
        d.to_string()
    }
}

fn execute(cli: &Cli) -> Result<Report> {
    let c = &cli.common;
    let mut r = Report::default();
    match &cli.command {
        Command::Generate { kind, n, m, layers, width, density, wmax, output } => {
            let g: DiGraph = match kind {
                GenKind::Path => gen_path(*n),
                GenKind::Dag => gen_random_dag(*n, *m, c.seed)?,
                GenKind::Digraph => gen_random_digraph(*n, *m, c.seed)?,
                GenKind::Layered => gen_layered(*layers, *width, *density, c.seed)?,
                GenKind::Spine => gen_spine_dag(*n, *m, c.seed)?,
            };
            let text = match wmax {
                Some(w) => wdigraph_to_string(&randomize_weights(&g, *w, c.seed)?),
                None => digraph_to_string(&g),
            };
            match output {
                Some(path) => {
                    write_out(path, &text)?;
                    config_lines(&mut r, c, "generate");
                    r.both("kind", format!("{kind:?}").to_lowercase());
                    r.both("n", g.n());
                    r.both("m", g.m());
                    r.put("output", path.display());
                }
                None => r.raw = Some(text),
            }
        }
        Command::BuildShortcut { input, output, folklore } => {
            let g = load(input)?.to_digraph()?;
            config_lines(&mut r, c, "build-shortcut");
            r.both("n", g.n());
            r.both("m", g.m());
            let h = match folklore {
                Some(k) => {
                    r.both("builder", "folklore");
                    r.both("sample", k);
                    folklore_shortcut(&g, *k, c.seed)?
                }
                None => {
                    let p = build_params(c, g.n(), g.m());
                    r.both("builder", "jls");
                    r.sum("params", &p);
                    r.put("params.k", p.k);
                    r.put("params.rho", p.rho);
                    r.put("params.tc_threshold", p.tc_threshold());
                    let out = build_shortcut(&g, &p, c.tc_prune.on())?;
                    r.both("components", out.components);
                    for (i, l) in out.trace.levels.iter().enumerate() {
                        r.put(
                            &format!("level.{i}"),
                            format!(
                                "subproblems={} pivots={} max_ball={} prune_calls={} prune_work={} edges={}",
                                l.subproblems, l.pivots, l.max_ball, l.prune_calls, l.prune_work, l.edges_added
                            ),
                        );
                    }
                    r.put("star_edges", out.trace.star_edges);
                    r.sum("trace", &out.trace);
                    r.meter("build", &out.meter);
                    out.h
                }
            };
            r.both("size_h", h.len());
            if let Some(path) = output {
                write_out(path, &augment_to_string(&h))?;
                r.put("output", path.display());
            }
        }
        Command::BuildHopset { input, output, folklore, rounded_h0 } => {
            let g = load(input)?.to_wdigraph()?;
            g.check_weight_bound(c.weight_exp)?;
            config_lines(&mut r, c, "build-hopset");
            r.both("n", g.n());
            r.both("m", g.m());
            r.both("max_weight", g.max_weight());
            let h = match folklore {
                Some(k) => {
                    r.both("builder", "folklore");
                    r.both("sample", k);
                    folklore_hopset(&g, *k, c.seed)?
                }
                None => {
                    let p = hopset_params(c, g.n(), g.m());
                    r.both("builder", "cfr");
                    r.sum("params", &p);
                    r.put("params.k", p.k);
                    r.put("params.rho", p.rho);
                    r.put("params.eta", format!("[{}, {}]", p.eta_min, p.eta_max()));
                    r.put("params.boost_rounds", p.boost_rounds);
                    let mode = rounded_h0.map_or(CfrMode::Exact, |h0| CfrMode::Rounded { h0 });
                    let opts = CfrOptions { trunc_prune: c.trunc_prune.on(), mode, record_provenance: false };
                    let out = cfr_build(&g, &p, &opts)?;
                    r.both("mode", &out.trace.mode);
                    r.both("guesses", out.trace.guesses);
                    for (i, l) in out.trace.levels.iter().enumerate() {
                        r.put(
                            &format!("level.{i}"),
                            format!(
                                "subproblems={} fringe={} pivots={} shortcutters={} max_ball={} prune_work={} edges={}",
                                l.subproblems,
                                l.fringe_subproblems,
                                l.pivots,
                                l.shortcutters,
                                l.max_ball,
                                l.prune_work,
                                l.edges_added
                            ),
                        );
                    }
                    r.put("shell_edges", out.trace.shell_edges);
                    r.sum("trace", &out.trace);
                    r.meter("build", &out.meter);
                    out.h
                }
            };
            r.both("size_h", h.len());
            if let Some(path) = output {
                write_out(path, &augment_to_string(&h))?;
                r.put("output", path.display());
            }
        }
        Command::Verify { input, augment } => {
            let list = load(input)?;
            let h: AugmentSet = read_edge_list(augment)?.to_augment()?;
            config_lines(&mut r, c, "verify");
            r.both("n", list.n);
            r.both("size_h", h.len());
            let cfg = verify_config(c);
            let rep = if h.is_weighted() {
                let g = list.to_wdigraph()?;
                verify_hopset_with(&g, &h, c.eps, &cfg)?
            } else {
                verify_shortcut_auto(&list.to_digraph()?, &h, &cfg)?
            };
            verify_lines(&mut r, &rep);
        }
        Command::Reach { input, source } => {
            let g = load(input)?.to_digraph()?;
            config_lines(&mut r, c, "reach");
            r.both("source", source);
            let p = build_params(c, g.n(), g.m());
            r.sum("params", &p);
            let built = build_shortcut(&g, &p, c.tc_prune.on())?;
            let out = reach_with(&g, *source, &built.h)?;
            r.both("size_h", out.size_h);
            r.both("reached", out.reachable.len());
            r.both("levels", out.levels);
            r.meter("build", &built.meter);
            r.meter("search", &out.search);
            let list: Vec<String> = out.reachable.iter().map(|v| v.to_string()).collect();
            r.put("reachable", list.join(" "));
            r.sum("reachable", &out.reachable);
            if g.n() <= c.oracle_cap {
                let want: Vec<Vertex> = bfs(&g, *source, Direction::Forward, None).reached().map(|v| v as Vertex).collect();
                let same = want == out.reachable;
                r.both("matches_bfs", same);
                if !same {
                    r.fail("matches_bfs");
                }
            }
        }
        Command::Sssp { input, source, hopbound } => {
            let g: WDiGraph = load(input)?.to_wdigraph()?;
            g.check_weight_bound(c.weight_exp)?;
            config_lines(&mut r, c, "sssp");
            r.both("source", source);
            let p = hopset_params(c, g.n(), g.m());
            let opts = SsspOptions { eps: c.eps, hopbound: *hopbound, trunc_prune: c.trunc_prune.on(), oracle_cap: c.oracle_cap };
            let out = sssp(&g, *source, &p, &opts)?;
            r.both("eps_hopset", out.eps_hopset.to_string());
            r.both("h0", out.h0);
            r.both("h0_source", format!("{:?}", out.h0_source).to_lowercase());
            r.both("size_h", out.size_h);
            r.both("guesses", out.guesses);
            r.meter("build", &out.build);
            r.meter("search", &out.search);
            let list: Vec<String> = out.dist.iter().map(|&d| fmt_dist(d)).collect();
            r.put("dist", list.join(" "));
            r.sum("dist", out.dist.iter().map(|&d| (d != UNREACHED).then_some(d)).collect::<Vec<_>>());
            if g.n() <= c.oracle_cap {
                let exact = dijkstra(&g, *source, Direction::Forward, None).dist;
                let mut within = true;
                let mut ratio: f64 = 1.0;
                for (&a, &d) in out.dist.iter().zip(&exact) {
                    if d == UNREACHED {
                        within &= a == UNREACHED;
                        continue;
                    }
                    within &= d <= a && a <= c.eps.strict_allowance(d);
                    if d > 0 {
                        ratio = ratio.max(a as f64 / d as f64);
                    }
                }
                r.both("max_ratio", format!("{ratio:.6}"));
                r.both("within_allowance", within);
                if !within {
                    r.fail("within_allowance");
                }
            }
        }
        Command::Bench { n, densities, seeds, builder, sample } => {
            config_lines(&mut r, c, "bench");
            let ms = densities.clone().unwrap_or_else(|| standard_densities(*n));
            let seed_list: Vec<u64> = (0..*seeds).map(|i| c.seed.wrapping_add(i)).collect();
            let b = match builder {
                BenchBuilder::Jls => SweepBuilder::Jls { preset: c.preset, tc_prune: c.tc_prune.on(), rho: c.rho },
                BenchBuilder::Folklore => SweepBuilder::Folklore { sample: *sample },
                BenchBuilder::Bare => SweepBuilder::Bare,
            };
            r.both("n", n);
            r.both("seeds", seeds);
            r.sum("builder", b);
            r.put("builder", format!("{builder:?}").to_lowercase());
            let rows = density_sweep(*n, &ms, b, &seed_list, &verify_config(c))?;
            for row in &rows {
                r.put(
                    &format!("row.m={}", row.m),
                    format!(
                        "beta={} size_h={} build_work={} build_span={} bfs_span={} bfs_span_bare={} mode={}",
                        row.median_beta,
                        row.median_size_h,
                        row.median_build_work,
                        row.median_build_span,
                        row.median_bfs_span,
                        row.median_bfs_span_bare,
                        row.mode
                    ),
                );
            }
            r.sum("rows", &rows);
        }
    }
    Ok(r)
}

/// Parse `args`, run the command and write its report to `out`. Returns the
/// process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    let start = Instant::now();
    let result = match cli.common.threads {
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build() {
            Ok(pool) => pool.install(|| execute(&cli)),
            Err(e) => Err(Error::InvalidParam(format!("cannot start {t} worker threads: {e}"))),
        },
        None => execute(&cli),
    };
    match result {
        Ok(report) => {
            let _ = out.write_all(report.render(cli.common.format).as_bytes());
            let _ = writeln!(err, "elapsed_ms={} (advisory)", start.elapsed().as_millis());
            if report.failures.is_empty() {
                0
            } else {
                let _ = writeln!(err, "error: violated {}", report.failures.join(", "));
                EXIT_FAILED_CHECK
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("hopcut").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn generate_to_stdout() {
        let (code, out, _) = run_str(&["generate", "--kind", "path", "--n", "3"]);
        assert_eq!(code, 0);
        assert_eq!(out, "3 2\n0 1\n1 2\n");
    }

    #[test]
    fn bad_flag_is_usage_error() {
        let (code, _, err) = run_str(&["generate", "--kind", "nope"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("nope"));
    }

    #[test]
    fn missing_file_is_usage_error() {
        let (code, _, err) = run_str(&["reach", "-i", "/nonexistent/graph.txt", "-s", "0"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.starts_with("error:"));
    }

    #[test]
    fn structured_ends_with_summary() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.txt");
        std::fs::write(&path, "4 3\n0 1\n1 2\n2 3\n").unwrap();
        let p = path.to_str().unwrap();
        let (code, out, _) = run_str(&["reach", "-i", p, "-s", "0", "--format", "structured"]);
        assert_eq!(code, 0);
        assert!(out.contains("reachable=0 1 2 3\n"));
        let last = out.lines().last().unwrap();
        let v: Value = serde_json::from_str(last.strip_prefix("summary=").unwrap()).unwrap();
        assert_eq!(v["status"], "ok");
        assert_eq!(v["config"]["preset"], "desk");
    }
}
