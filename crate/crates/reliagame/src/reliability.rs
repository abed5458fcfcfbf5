//! Exact valuation of reliability extensions.
//!
//! Given a simple base game `v` and a survival probability `r_i` for each
//! agent, the reliability extension values a coalition `C` at the
//! probability that its surviving members win the base game:
//!
//! ```text
//! vr(C) = sum over C' subset of C of  alpha(C'|C) * v(C')
//! alpha(C'|C) = prod_{i in C'} r_i * prod_{j in C \ C'} (1 - r_j)
//! ```
//!
//! [`ReliabilityGame::exact_value`] evaluates the sum by walking all 2^|C|
//! sub-coalitions in standard descending sub-mask order, extending the
//! survival-probability product one member at a time (never recomputing it
//! per term) and accumulating with compensated summation. Branches whose
//! partial probability is exactly zero are skipped; they contribute nothing.

use crate::coalition::Coalition;
use crate::error::{Error, Result};
use crate::games::{is_convex_values, SimpleGame, TypedGame};
use crate::kahan::KahanSum;

/// Default cap on the coalition size for exact sub-coalition enumeration.
pub const DEFAULT_ENUMERATION_CAP: usize = 20;

/// A simple base game paired with per-agent survival probabilities.
#[derive(Debug, Clone, PartialEq)]
pub struct ReliabilityGame<G> {
    base: G,
    survival: Vec<f64>,
}

impl<G: SimpleGame> ReliabilityGame<G> {
    pub fn new(base: G, survival: Vec<f64>) -> Result<Self> {
        if survival.len() != base.num_agents() {
            return Err(Error::InvalidGame(format!(
                "{} survival probabilities for {} agents",
                survival.len(),
                base.num_agents()
            )));
        }
        if survival
            .iter()
            .any(|r| !r.is_finite() || !(0.0..=1.0).contains(r))
        {
            return Err(Error::InvalidGame(
                "survival probabilities must lie in [0, 1]".into(),
            ));
        }
        Ok(ReliabilityGame { base, survival })
    }

    pub fn base(&self) -> &G {
        &self.base
    }

    pub fn survival(&self) -> &[f64] {
        &self.survival
    }

    pub fn num_agents(&self) -> usize {
        self.base.num_agents()
    }

    /// Replace the survival vector, keeping the base game.
    pub fn with_survival(&self, survival: Vec<f64>) -> Result<Self>
    where
        G: Clone,
    {
        ReliabilityGame::new(self.base.clone(), survival)
    }

    /// Exact value of a coalition under the default enumeration cap.
    pub fn exact_value(&self, coalition: Coalition) -> Result<f64> {
        self.exact_value_capped(coalition, DEFAULT_ENUMERATION_CAP)
    }

    /// Exact value of a coalition; enumerates all `2^|C|` sub-coalitions.
    pub fn exact_value_capped(&self, coalition: Coalition, cap: usize) -> Result<f64> {
        assert_eq!(
            coalition.capacity(),
            self.num_agents(),
            "coalition capacity mismatch"
        );
        let size = coalition.size();
        if size > cap.min(Coalition::MAX_AGENTS) {
            return Err(Error::cap(
                "exact reliability value (use sampling for large coalitions)",
                size,
                cap.min(Coalition::MAX_AGENTS),
            ));
        }
        let members: Vec<usize> = coalition.members().collect();
        let mut acc = KahanSum::new();
        self.enumerate(&members, 0, 1.0, 0, &mut acc);
        Ok(acc.value())
    }

    fn enumerate(&self, members: &[usize], idx: usize, prob: f64, mask: u64, acc: &mut KahanSum) {
        if prob == 0.0 {
            return;
        }
        if idx == members.len() {
            if self
                .base
                .wins(Coalition::from_mask(mask, self.num_agents()))
            {
                acc.add(prob);
            }
            return;
        }
        let agent = members[idx];
        let r = self.survival[agent];
        // Survivor branch first: visits sub-masks in descending order.
        self.enumerate(members, idx + 1, prob * r, mask | 1 << agent, acc);
        self.enumerate(members, idx + 1, prob * (1.0 - r), mask, acc);
    }

    /// Exact value of the grand coalition.
    pub fn grand_value(&self) -> Result<f64> {
        self.exact_value(Coalition::grand(self.num_agents()))
    }

    /// Dense table of exact values for all `2^n` coalitions, refused when
    /// the agent count exceeds `cap`.
    pub fn value_table(&self, cap: usize) -> Result<Vec<f64>> {
        let n = self.num_agents();
        if n > cap.min(Coalition::MAX_AGENTS) {
            return Err(Error::cap(
                "full value-table enumeration",
                n,
                cap.min(Coalition::MAX_AGENTS),
            ));
        }
        (0..1u64 << n)
            .map(|mask| self.exact_value_capped(Coalition::from_mask(mask, n), n))
            .collect()
    }

    /// Convexity of the (real-valued) extension, checked exhaustively over
    /// all coalition pairs at tolerance 1e-9.
    pub fn is_convex(&self, cap: usize) -> Result<bool> {
        let table = self.value_table(cap)?;
        Ok(is_convex_values(&table, 1e-9))
    }
}

/// Survival weight `alpha(sub | sup)`: the probability that, of the members
/// of `sup`, exactly those in `sub` survive.
///
/// Panics unless `sub` is a subset of `sup`; over all subsets of `sup` the
/// weights sum to one.
pub fn alpha(survival: &[f64], sub: Coalition, sup: Coalition) -> f64 {
    assert!(
        sub.is_subset_of(&sup),
        "alpha requires {sub} to be a subset of {sup}"
    );
    let mut p = 1.0;
    for i in sup.members() {
        if sub.contains(i) {
            p *= survival[i];
        } else {
            p *= 1.0 - survival[i];
        }
    }
    p
}

/// Binomial probability mass function over `0..=q` survivors when each of
/// the `q` agents independently survives with probability `r`.
pub fn survivor_pmf(q: u32, r: f64) -> Vec<f64> {
    assert!(
        r.is_finite() && (0.0..=1.0).contains(&r),
        "survival probability must lie in [0, 1]"
    );
    let q = q as usize;
    let mut pmf = Vec::with_capacity(q + 1);
    // Multiplicative binomial-coefficient recurrence; q <= 63 keeps the
    // coefficients exactly representable.
    let mut coef = 1.0f64;
    for w in 0..=q {
        if w > 0 {
            coef = coef * (q - w + 1) as f64 / w as f64;
        }
        pmf.push(coef * r.powi(w as i32) * (1.0 - r).powi((q - w) as i32));
    }
    pmf
}

/// Exact value of a coalition of a typed game, given the coalition's count
/// profile, via the per-type binomial survivor distributions:
///
/// ```text
/// vr(q) = sum over w <= q of  prod_j P(w_j; q_j, r_j) * v(w)
/// ```
///
/// Runs in `O(prod (q_j + 1))` time. Panics if the profile exceeds the type
/// counts.
pub fn typed_value(tg: &TypedGame, profile: &[u32]) -> f64 {
    assert_eq!(profile.len(), tg.num_types(), "profile arity mismatch");
    for (j, (&q, &c)) in profile.iter().zip(tg.counts()).enumerate() {
        assert!(q <= c, "profile entry {q} exceeds count {c} for type {j}");
    }
    let pmfs: Vec<Vec<f64>> = profile
        .iter()
        .zip(tg.survival())
        .map(|(&q, &r)| survivor_pmf(q, r))
        .collect();
    let mut acc = KahanSum::new();
    let mut survivors = vec![0u32; profile.len()];
    typed_value_rec(tg, &pmfs, profile, 0, 1.0, &mut survivors, &mut acc);
    acc.value()
}

fn typed_value_rec(
    tg: &TypedGame,
    pmfs: &[Vec<f64>],
    profile: &[u32],
    ty: usize,
    prob: f64,
    survivors: &mut Vec<u32>,
    acc: &mut KahanSum,
) {
    if prob == 0.0 {
        return;
    }
    if ty == profile.len() {
        if tg.profile_value(survivors) {
            acc.add(prob);
        }
        return;
    }
    for w in 0..=profile[ty] {
        survivors[ty] = w;
        typed_value_rec(
            tg,
            pmfs,
            profile,
            ty + 1,
            prob * pmfs[ty][w as usize],
            survivors,
            acc,
        );
    }
    survivors[ty] = 0;
}
