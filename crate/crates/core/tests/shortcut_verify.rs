#![allow(clippy::needless_range_loop, clippy::manual_is_multiple_of)]

mod common;

use common::{closure, hop_diameter_by_powers};
use hopcut::graph::gen::{gen_path, gen_random_dag, gen_random_digraph};
use hopcut::params::Preset;
use hopcut::search::{bfs, UNREACHED_HOPS};
use hopcut::shortcut::{build_shortcut, folklore_shortcut, jls_build, shortcut_rho_preset, BuildParams};
use hopcut::verify::{tc_oracle, verify_shortcut, verify_shortcut_sampled, VerifyConfig};
use hopcut::{AugmentSet, DiGraph, Direction, Vertex};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn digraph(n: usize, m: usize, seed: u64) -> DiGraph {
    if seed % 2 == 0 {
        gen_random_dag(n, m.min(n * (n - 1) / 2), seed).unwrap()
    } else {
        gen_random_digraph(n, m.min(n * (n - 1)), seed).unwrap()
    }
}

fn full_closure(g: &DiGraph) -> AugmentSet {
    let tc = closure(g);
    let mut pairs = Vec::new();
    for (u, row) in tc.iter().enumerate() {
        for (v, &r) in row.iter().enumerate() {
            if r && u != v {
                pairs.push((u, v));
            }
        }
    }
    AugmentSet::from_pairs(g.n(), pairs).unwrap()
}

/// Largest BFS hop distance over related pairs of `g ∪ h`.
fn hop_beta(g: &DiGraph, h: &AugmentSet) -> u32 {
    let gu = g.union(h);
    (0..g.n() as Vertex)
        .flat_map(|s| bfs(&gu, s, Direction::Forward, None).dist)
        .filter(|&d| d != UNREACHED_HOPS)
        .max()
        .unwrap_or(0)
}

#[test]
fn chain_examples() {
    let g = gen_path(4);
    let empty = verify_shortcut(&g, &AugmentSet::empty(4)).unwrap();
    assert!(empty.ok());
    assert_eq!(empty.beta_meas, 3);
    assert_eq!(empty.worst_pair, Some((0, 3)));
    let full = verify_shortcut(&g, &full_closure(&g)).unwrap();
    assert_eq!(full.beta_meas, 1);

    let m = tc_oracle(&gen_path(3), 512).unwrap();
    for i in 0..3 {
        for j in 0..3 {
            assert_eq!(m.get(i, j), i <= j);
        }
    }
    let edgeless = tc_oracle(&DiGraph::empty(3), 512).unwrap();
    assert_eq!(edgeless.count_ones(), 3);
    assert!(tc_oracle(&gen_path(600), 512).is_err());
}

#[test]
fn empty_augmentation_beta_is_the_hop_diameter() {
    for seed in 0..40u64 {
        let n = 2 + (seed as usize * 3) % 63;
        let g = digraph(n, 2 * n, seed);
        let r = verify_shortcut(&g, &AugmentSet::empty(n)).unwrap();
        assert_eq!(r.beta_meas, hop_diameter_by_powers(&g), "seed {seed}");
    }
}

#[test]
fn planted_invalid_edge_is_named() {
    let g = gen_path(5);
    let h = AugmentSet::from_pairs(5, [(0, 2), (3, 1)]).unwrap();
    let r = verify_shortcut(&g, &h).unwrap();
    assert!(!r.edges_valid);
    assert!(!r.reach_preserved);
    assert_eq!(r.invalid_edges, vec![(3, 1)]);
    assert!(r.failures().contains(&"edges_valid"));
}

#[test]
fn jls_corpus_is_valid_and_beta_matches_bfs() {
    for seed in 0..60u64 {
        let n = 4 + (seed as usize * 5) % 61;
        let g = digraph(n, 3 * n, seed);
        for preset in [Preset::Desk, Preset::Paper] {
            let p = BuildParams::new(preset, n, g.m(), seed);
            let h = build_shortcut(&g, &p, seed % 3 != 0).unwrap().h;
            let r = verify_shortcut(&g, &h).unwrap();
            assert!(r.ok(), "seed {seed}: {:?}", r.failures());
            assert_eq!(r.beta_meas, hop_beta(&g, &h));
            assert_eq!(closure(&g.union(&h)), closure(&g));
        }
    }
}

#[test]
fn dag_n32_desk_preset() {
    let g = gen_random_dag(32, 96, 7).unwrap();
    let p = BuildParams::new(Preset::Desk, 32, 96, 7);
    let out = build_shortcut(&g, &p, true).unwrap();
    let r = verify_shortcut(&g, &out.h).unwrap();
    assert!(r.ok());
    assert!(r.beta_meas <= hop_diameter_by_powers(&g));
}

#[test]
fn forced_sampling_on_an_edge() {
    let g = gen_path(2);
    let mut p = BuildParams::new(Preset::Desk, 2, 1, 0);
    p.sample_c = 1e9;
    let (h, _) = jls_build(&g, &p, false).unwrap();
    assert!(h.contains(0, 1));
    assert!(jls_build(&DiGraph::empty(1), &p, true).unwrap().0.is_empty());
}

#[test]
fn folklore_on_long_path() {
    let g = gen_path(256);
    let h = folklore_shortcut(&g, 64, 3).unwrap();
    let r = verify_shortcut(&g, &h).unwrap();
    assert!(r.ok());
    assert_eq!(r.beta_meas, hop_beta(&g, &h));
    assert!(r.beta_meas < 255);

    let chain = gen_path(4);
    assert_eq!(folklore_shortcut(&chain, 4, 0).unwrap(), full_closure(&chain));
    assert!(folklore_shortcut(&chain, 0, 0).unwrap().is_empty());
}

#[test]
fn sampled_mode_never_overstates_beta() {
    let g = gen_random_dag(200, 600, 4).unwrap();
    let h = folklore_shortcut(&g, 20, 4).unwrap();
    let exact = verify_shortcut(&g, &h).unwrap();
    let sampled = verify_shortcut_sampled(&g, &h, 512, 9).unwrap();
    assert_eq!(sampled.mode, "sampled(512)");
    assert!(sampled.beta_meas <= exact.beta_meas);
    assert_eq!(sampled.beta_meas, verify_shortcut_sampled(&g, &h, 512, 9).unwrap().beta_meas);
    let cfg = VerifyConfig { oracle_cap: 64, ..Default::default() };
    assert!(hopcut::verify::verify_shortcut_with(&g, &h, &cfg).is_err());
}

#[test]
fn rho_preset_examples() {
    assert_eq!(shortcut_rho_preset(100, 100, 2.371339), 1);
    assert_eq!(shortcut_rho_preset(256, 256 * 256, 3.0), 4);
    assert_eq!(shortcut_rho_preset(256, 256 * 256, 2.0), 16);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn beta_never_grows_when_closure_edges_are_added(n in 2usize..40, seed in 0u64..1000, extra in 1usize..30) {
        let g = digraph(n, 2 * n, seed);
        let p = BuildParams::new(Preset::Desk, n, g.m(), seed);
        let h = build_shortcut(&g, &p, true).unwrap().h;
        let tc = full_closure(&g);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pool: Vec<_> = tc.pairs().collect();
        let mut bigger: Vec<(usize, usize)> = h.pairs().map(|(u, v)| (u as usize, v as usize)).collect();
        if !pool.is_empty() {
            for _ in 0..extra {
                let (u, v) = pool[rng.gen_range(0..pool.len())];
                bigger.push((u as usize, v as usize));
            }
        }
        let h2 = AugmentSet::from_pairs(n, bigger).unwrap();
        let (a, b) = (verify_shortcut(&g, &h).unwrap(), verify_shortcut(&g, &h2).unwrap());
        prop_assert!(a.ok() && b.ok());
        prop_assert!(b.beta_meas <= a.beta_meas);
    }
}
