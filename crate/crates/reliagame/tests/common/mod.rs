//! Helpers shared by the integration test targets.
#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::Rng;
use reliagame::cli::file::{load_game_file, LoadedGame};
use reliagame::coalition::Coalition;
use reliagame::games::{ExplicitGame, SimpleGame, TypedGame};
use reliagame::netgame::Network;
use reliagame::reliability::ReliabilityGame;
use reliagame::BaseGame;
use std::path::PathBuf;
use std::process::Command;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

/// Load a fixture and expand it to the per-agent view.
pub fn load_fixture(name: &str) -> (ReliabilityGame<BaseGame>, Vec<String>) {
    let loaded = load_game_file(&fixture_path(name)).unwrap();
    let base = loaded.to_base(20).unwrap();
    (base.game, base.labels)
}

pub fn load_fixture_raw(name: &str) -> LoadedGame {
    load_game_file(&fixture_path(name)).unwrap()
}

pub struct CliOutput {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Run the compiled CLI binary on a fixture-relative or absolute path.
pub fn run_cli(args: &[&str]) -> CliOutput {
    let out = Command::new(env!("CARGO_BIN_EXE_reliagame"))
        .args(args)
        .output()
        .expect("binary runs");
    CliOutput {
        status: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).expect("utf8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf8 stderr"),
    }
}

/// Random survival probability from a coarse grid, so that equal values
/// occur often enough for symmetry tests.
pub fn grid_survival(rng: &mut StdRng) -> f64 {
    *[0.1, 0.25, 0.5, 0.75, 0.9]
        .get(rng.random_range(0..5))
        .unwrap()
}

/// Random directed network with source 0 and target 1; parallel edges and
/// self-loops allowed.
pub fn random_network(rng: &mut StdRng, max_edges: usize) -> Network {
    let nv = rng.random_range(3..=6);
    let ne = rng.random_range(1..=max_edges);
    let edges = (0..ne)
        .map(|_| (rng.random_range(0..nv), rng.random_range(0..nv)))
        .collect();
    Network::from_indices(nv, edges, 0, 1).unwrap()
}

/// Random monotone simple game as a minimal-winning-set antichain; retries
/// until the drawn sets form one.
pub fn random_explicit(rng: &mut StdRng, n: usize) -> ExplicitGame {
    loop {
        let sets: Vec<Coalition> = (0..rng.random_range(1..=3))
            .map(|_| Coalition::from_mask(rng.random_range(1..1u64 << n), n))
            .collect();
        if let Ok(game) = ExplicitGame::new(n, sets) {
            return game;
        }
    }
}

/// Random typed game with `k` types and at most `max_agents` agents total.
pub fn random_typed(rng: &mut StdRng, k: usize, max_agents: usize) -> TypedGame {
    let mut counts = Vec::new();
    let mut left = max_agents - (k - 1);
    for _ in 0..k {
        let c = rng.random_range(1..=left.min(4)) as u32;
        left = left + 1 - c as usize;
        counts.push(c);
    }
    let survival: Vec<f64> = (0..k).map(|_| grid_survival(rng)).collect();
    let table_seed: u64 = rng.random();
    TypedGame::new(counts, survival, move |profile| {
        if profile.iter().all(|&w| w == 0) {
            return false;
        }
        let mut h = table_seed;
        for &w in profile {
            h = h
                .wrapping_mul(6364136223846793005)
                .wrapping_add(w as u64 + 1);
        }
        h >> 62 == 0
    })
    .unwrap()
}

/// De-randomized expectation of the sampling estimator for one agent:
/// enumerate every permutation and, within each, every survival outcome of
/// the agent and its predecessors, weighting by probability.
pub fn derandomized_sampler_expectation<G: SimpleGame>(
    g: &ReliabilityGame<G>,
    agent: usize,
) -> f64 {
    let n = g.num_agents();
    let base = g.base();
    let r = g.survival();
    let mut total = 0.0;
    let mut orders = 0u64;
    let mut perm: Vec<usize> = (0..n).collect();
    permute(&mut perm, 0, &mut |perm| {
        orders += 1;
        let pos = perm.iter().position(|&j| j == agent).unwrap();
        let predecessors = &perm[..pos];
        let mut acc = 0.0;
        for outcome in 0..1u64 << predecessors.len() {
            let mut p = r[agent];
            let mut survivors = Coalition::empty(n);
            for (b, &j) in predecessors.iter().enumerate() {
                if outcome >> b & 1 == 1 {
                    p *= r[j];
                    survivors = survivors.with(j);
                } else {
                    p *= 1.0 - r[j];
                }
            }
            if base.value(survivors.with(agent)) as i8 - base.value(survivors) as i8 == 1 {
                acc += p;
            }
        }
        total += acc;
    });
    total / orders as f64
}

fn permute(items: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, visit);
        items.swap(k, i);
    }
}
