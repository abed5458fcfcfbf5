//! Shapley values for reliability games: exact computation at small agent
//! counts and an unbiased Monte Carlo estimator with Hoeffding confidence
//! intervals.
//!
//! One sample draws a uniform agent permutation, lets the target agent
//! survive or fail with its own probability (failing ends the sample with a
//! zero draw), then draws survival for the agents preceding it and reports
//! whether the target is critical for the surviving predecessors in the
//! *base* game. The expectation of that 0/1 draw is exactly the agent's
//! Shapley value in the reliability extension, so no exact extension values
//! are ever needed while sampling.
//!
//! Sampling is reproducible by construction: sample `t` of agent `i` uses an
//! RNG stream derived from `(seed, i, t)` alone, and aggregation is an
//! integer count, so results are identical for any worker count.

use crate::coalition::Coalition;
use crate::error::{Error, Result};
use crate::games::SimpleGame;
use crate::kahan::KahanSum;
use crate::reliability::ReliabilityGame;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Default agent cap for exact Shapley computation (work grows as `3^n`).
pub const DEFAULT_EXACT_SHAPLEY_CAP: usize = 12;

/// Stream domain tag for the shared sampling mode; per-agent streams use the
/// agent index as the domain.
const SHARED_DOMAIN: u64 = u64::MAX;

/// Point estimate of one agent's Shapley value with its Hoeffding interval.
#[derive(Debug, Clone, PartialEq)]
pub struct ShapleyEstimate {
    pub agent: usize,
    /// Mean of the 0/1 sample draws.
    pub point: f64,
    /// Number of samples `k`.
    pub samples: u64,
    /// Half-width `sqrt(ln(2/delta) / (2k))`; the interval
    /// `[point - epsilon, point + epsilon]` is reported as computed even
    /// when it leaves `[0, 1]`.
    pub epsilon: f64,
    pub delta: f64,
    pub seed: u64,
}

impl ShapleyEstimate {
    pub fn interval(&self) -> (f64, f64) {
        (self.point - self.epsilon, self.point + self.epsilon)
    }
}

/// How an all-agents estimation run spends its samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SamplingMode {
    /// Every agent gets its own independent permutations and survival
    /// draws: `n * k` base-game evaluations, per-agent draws fully i.i.d.
    Independent,
    /// One permutation and one survival draw per sample serve every agent.
    /// Each agent's draw sequence is still i.i.d. marginally, so the
    /// per-agent Hoeffding guarantee is unchanged, but draws are correlated
    /// across agents within a sample.
    Shared,
}

/// Exact Shapley values with the default cap.
pub fn exact_shapley<G: SimpleGame>(g: &ReliabilityGame<G>) -> Result<Vec<f64>> {
    exact_shapley_capped(g, DEFAULT_EXACT_SHAPLEY_CAP)
}

/// Exact Shapley values of the reliability extension, via the coalition-sum
/// form over a memoized table of extension values:
///
/// ```text
/// phi_i = sum over S not containing i of |S|! (n-1-|S|)! / n! * (vr(S u {i}) - vr(S))
/// ```
pub fn exact_shapley_capped<G: SimpleGame>(g: &ReliabilityGame<G>, cap: usize) -> Result<Vec<f64>> {
    let n = g.num_agents();
    if n > cap.min(Coalition::MAX_AGENTS) {
        return Err(Error::cap(
            "exact Shapley value (use sampling instead)",
            n,
            cap.min(Coalition::MAX_AGENTS),
        ));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let table = g.value_table(n)?;

    // weight[s] = s! (n-1-s)! / n!; factorials up to 12! are exact in f64.
    let factorial: Vec<f64> = (0..=n)
        .scan(1.0, |acc, k| {
            if k > 0 {
                *acc *= k as f64;
            }
            Some(*acc)
        })
        .collect();
    let weight: Vec<f64> = (0..n)
        .map(|s| factorial[s] * factorial[n - 1 - s] / factorial[n])
        .collect();

    let grand = Coalition::grand(n);
    let mut phi = Vec::with_capacity(n);
    for i in 0..n {
        let mut acc = KahanSum::new();
        for s in grand.without(i).subsets() {
            let with_i = s.mask() as usize | 1 << i;
            let marginal = table[with_i] - table[s.mask() as usize];
            acc.add(weight[s.size()] * marginal);
        }
        phi.push(acc.value());
    }
    Ok(phi)
}

/// One draw of the sampling estimator for `agent`; see the module docs for
/// the procedure. The expectation of the returned indicator equals the
/// agent's Shapley value in the extension.
pub fn sample_once<G: SimpleGame, R: Rng>(
    g: &ReliabilityGame<G>,
    agent: usize,
    rng: &mut R,
) -> bool {
    let n = g.num_agents();
    assert!(agent < n, "agent {agent} out of range 0..{n}");

    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);

    // The agent's own survival gates the sample; on failure the
    // predecessors' draws are skipped entirely.
    if rng.random::<f64>() >= g.survival()[agent] {
        return false;
    }

    let mut survivors = Coalition::empty(n);
    for &j in order.iter().take_while(|&&j| j != agent) {
        if rng.random::<f64>() < g.survival()[j] {
            survivors = survivors.with(j);
        }
    }

    let base = g.base();
    base.value(survivors.with(agent)) as i8 - base.value(survivors) as i8 == 1
}

/// RNG for sample `t` in stream domain `domain` (an agent index, or
/// [`SHARED_DOMAIN`]). Derivation depends only on `(seed, domain, t)`.
fn stream_rng(seed: u64, domain: u64, sample: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&domain.to_le_bytes());
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(sample);
    rng
}

/// Monte Carlo estimate of one agent's Shapley value from `samples`
/// independent draws. Deterministic given `(seed, samples)` regardless of
/// thread count.
pub fn estimate_shapley<G: SimpleGame + Sync>(
    g: &ReliabilityGame<G>,
    agent: usize,
    samples: u64,
    seed: u64,
    delta: f64,
) -> Result<ShapleyEstimate> {
    validate_sampling_args(samples, delta)?;
    let n = g.num_agents();
    if agent >= n {
        return Err(Error::InvalidArgument(format!(
            "agent {agent} out of range 0..{n}"
        )));
    }
    let hits: u64 = (0..samples)
        .into_par_iter()
        .map(|t| sample_once(g, agent, &mut stream_rng(seed, agent as u64, t)) as u64)
        .sum();
    Ok(ShapleyEstimate {
        agent,
        point: hits as f64 / samples as f64,
        samples,
        epsilon: confidence_half_width(samples, delta),
        delta,
        seed,
    })
}

/// Estimates for every agent at once.
pub fn estimate_all<G: SimpleGame + Sync>(
    g: &ReliabilityGame<G>,
    samples: u64,
    seed: u64,
    delta: f64,
    mode: SamplingMode,
) -> Result<Vec<ShapleyEstimate>> {
    validate_sampling_args(samples, delta)?;
    let n = g.num_agents();
    let hits: Vec<u64> = match mode {
        SamplingMode::Independent => (0..n)
            .map(|agent| {
                (0..samples)
                    .into_par_iter()
                    .map(|t| sample_once(g, agent, &mut stream_rng(seed, agent as u64, t)) as u64)
                    .sum()
            })
            .collect(),
        SamplingMode::Shared => (0..samples)
            .into_par_iter()
            .map(|t| shared_sample(g, &mut stream_rng(seed, SHARED_DOMAIN, t)))
            .fold(
                || vec![0u64; n],
                |mut acc, marginals| {
                    for (i, slot) in acc.iter_mut().enumerate() {
                        *slot += marginals >> i & 1;
                    }
                    acc
                },
            )
            .reduce(
                || vec![0u64; n],
                |mut a, b| {
                    for (x, y) in a.iter_mut().zip(b) {
                        *x += y;
                    }
                    a
                },
            ),
    };
    Ok(hits
        .into_iter()
        .enumerate()
        .map(|(agent, h)| ShapleyEstimate {
            agent,
            point: h as f64 / samples as f64,
            samples,
            epsilon: confidence_half_width(samples, delta),
            delta,
            seed,
        })
        .collect())
}

/// One shared sample: a single permutation and survival draw evaluated for
/// every agent, returned as a bit mask of agents with a marginal of one.
fn shared_sample<G: SimpleGame>(g: &ReliabilityGame<G>, rng: &mut ChaCha8Rng) -> u64 {
    let n = g.num_agents();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    // One survival draw for every agent, in agent-index order.
    let mut alive = Coalition::empty(n);
    for i in 0..n {
        if rng.random::<f64>() < g.survival()[i] {
            alive = alive.with(i);
        }
    }

    let base = g.base();
    let mut marginals = 0u64;
    let mut survivors = Coalition::empty(n);
    let mut current = base.value(survivors);
    for &j in &order {
        if !alive.contains(j) {
            continue;
        }
        let with_j = base.value(survivors.with(j));
        if with_j as i8 - current as i8 == 1 {
            marginals |= 1 << j;
        }
        survivors = survivors.with(j);
        current = with_j;
    }
    marginals
}

fn validate_sampling_args(samples: u64, delta: f64) -> Result<()> {
    if samples == 0 {
        return Err(Error::InvalidArgument(
            "sample count must be at least 1".into(),
        ));
    }
    if !delta.is_finite() || !(0.0..1.0).contains(&delta) || delta == 0.0 {
        return Err(Error::InvalidArgument(format!(
            "delta must lie in (0, 1), got {delta}"
        )));
    }
    Ok(())
}

/// Smallest sample count guaranteeing an `(epsilon, delta)` estimate by the
/// Hoeffding bound: `ceil(ln(2/delta) / (2 epsilon^2))`.
pub fn plan_samples(epsilon: f64, delta: f64) -> Result<u64> {
    if !epsilon.is_finite() || epsilon <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "epsilon must be positive, got {epsilon}"
        )));
    }
    if !delta.is_finite() || delta <= 0.0 || delta >= 1.0 {
        return Err(Error::InvalidArgument(format!(
            "delta must lie in (0, 1), got {delta}"
        )));
    }
    let k = ((2.0 / delta).ln() / (2.0 * epsilon * epsilon)).ceil();
    if k > u64::MAX as f64 {
        return Err(Error::InvalidArgument(
            "requested accuracy needs more samples than fit in a u64".into(),
        ));
    }
    Ok((k as u64).max(1))
}

/// Hoeffding confidence interval around an estimate from `samples` draws:
/// `point` plus/minus `sqrt(ln(2/delta) / (2 samples))`.
pub fn confidence_interval(point: f64, samples: u64, delta: f64) -> (f64, f64) {
    let half = confidence_half_width(samples, delta);
    (point - half, point + half)
}

fn confidence_half_width(samples: u64, delta: f64) -> f64 {
    assert!(samples >= 1, "need at least one sample");
    assert!(delta > 0.0 && delta < 1.0, "delta must lie in (0, 1)");
    ((2.0 / delta).ln() / (2.0 * samples as f64)).sqrt()
}
