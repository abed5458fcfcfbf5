//! Core solution concepts for reliability games: membership checking, veto
//! analysis, the typed-game LP, brute-force LP, and the constructive method
//! for convex base games.
//!
//! The veto route is sound but deliberately incomplete: a base game without
//! veto agents proves nothing about its extension (reducing reliability can
//! make an empty core non-empty), so that method answers `Unknown` instead
//! of `Empty`.

use crate::coalition::Coalition;
use crate::error::{Error, Result};
use crate::games::{
    is_convex_capped, is_monotone_capped, SimpleGame, TypedGame, DEFAULT_CONVEXITY_CAP,
    DEFAULT_MONOTONE_CAP,
};
use crate::kahan::KahanSum;
use crate::lp::{solve_feasibility, Feasibility, FeasibilityProblem, DEFAULT_TOLERANCE};
use crate::reliability::{alpha, typed_value, ReliabilityGame};

/// Default agent cap for full-coalition membership scans.
pub const DEFAULT_MEMBERSHIP_CAP: usize = 16;
/// Default agent cap for the brute-force core LP.
pub const DEFAULT_BRUTE_FORCE_CAP: usize = 16;
/// Default agent cap for the constructive convex-game method, which solves
/// one subgame LP per winning coalition.
pub const DEFAULT_CONVEX_CONSTRUCTION_CAP: usize = 12;
/// Default cap on the number of coalition profiles in the typed core LP.
pub const DEFAULT_TYPED_PROFILE_CAP: usize = 1_000_000;
/// Tolerance shared by the membership inequalities and the efficiency
/// equality; matches the LP tolerance so LP-built imputations always pass
/// their own check.
pub const MEMBERSHIP_TOLERANCE: f64 = 1e-9;

/// Nonnegative per-agent payments. An imputation additionally pays out
/// exactly the grand-coalition value; that is checked where it matters
/// (membership, core construction), not here.
#[derive(Debug, Clone, PartialEq)]
pub struct PayoffVector {
    values: Vec<f64>,
}

impl PayoffVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.iter().any(|p| !p.is_finite() || *p < 0.0) {
            return Err(Error::InvalidArgument(
                "payoffs must be finite and nonnegative".into(),
            ));
        }
        Ok(PayoffVector { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.values
    }

    /// Total payment `p(C)` of a coalition.
    pub fn payoff_of(&self, coalition: Coalition) -> f64 {
        assert_eq!(coalition.capacity(), self.values.len());
        coalition.members().map(|i| self.values[i]).sum()
    }

    pub fn total(&self) -> f64 {
        self.values.iter().sum()
    }
}

/// Outcome of a membership scan.
#[derive(Debug, Clone, PartialEq)]
pub enum Membership {
    InCore,
    /// The first blocking coalition in ascending mask order, with its
    /// payment and value.
    Blocked {
        coalition: Coalition,
        payoff: f64,
        value: f64,
    },
}

impl Membership {
    pub fn is_in_core(&self) -> bool {
        matches!(self, Membership::InCore)
    }
}

/// How a core verdict was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoreMethod {
    Veto,
    TypedLp,
    BruteLp,
    ConvexConstruction,
}

impl CoreMethod {
    pub fn name(&self) -> &'static str {
        match self {
            CoreMethod::Veto => "veto",
            CoreMethod::TypedLp => "typed-lp",
            CoreMethod::BruteLp => "brute-lp",
            CoreMethod::ConvexConstruction => "convex-construction",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CoreVerdict {
    NonEmpty(PayoffVector),
    Empty,
    /// The method could not decide; the reason says why.
    Unknown {
        reason: String,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoreResult {
    pub verdict: CoreVerdict,
    pub method: CoreMethod,
}

/// Check `p(C) >= vr(C) - tol` for every coalition, under the default cap.
///
/// The payoff must be an imputation: nonnegative (enforced by
/// [`PayoffVector`]) and paying out `vr(N)` to within the membership
/// tolerance, otherwise the call is rejected.
pub fn check_core_membership<G: SimpleGame>(
    g: &ReliabilityGame<G>,
    payoff: &PayoffVector,
) -> Result<Membership> {
    check_core_membership_capped(g, payoff, DEFAULT_MEMBERSHIP_CAP)
}

pub fn check_core_membership_capped<G: SimpleGame>(
    g: &ReliabilityGame<G>,
    payoff: &PayoffVector,
    cap: usize,
) -> Result<Membership> {
    let n = g.num_agents();
    if payoff.len() != n {
        return Err(Error::InvalidArgument(format!(
            "payoff vector has {} entries for {n} agents",
            payoff.len()
        )));
    }
    let table = g.value_table(cap)?;
    let grand = table[(1usize << n) - 1];
    let total = payoff.total();
    if (total - grand).abs() > MEMBERSHIP_TOLERANCE {
        return Err(Error::NotImputation(format!(
            "payoffs sum to {total}, but the grand coalition is worth {grand}"
        )));
    }
    for mask in 1..1u64 << n {
        let c = Coalition::from_mask(mask, n);
        let p = payoff.payoff_of(c);
        let v = table[mask as usize];
        if p < v - MEMBERSHIP_TOLERANCE {
            return Ok(Membership::Blocked {
                coalition: c,
                payoff: p,
                value: v,
            });
        }
    }
    Ok(Membership::InCore)
}

/// Veto agents of a monotone simple game: agents whose absence forces value
/// zero, found by the `v(N \ {i}) = 0` test (sound only under
/// monotonicity, so non-monotone games are refused).
pub fn find_veto_agents<G: SimpleGame>(game: &G) -> Result<Vec<usize>> {
    find_veto_agents_capped(game, DEFAULT_MONOTONE_CAP)
}

pub fn find_veto_agents_capped<G: SimpleGame>(game: &G, monotone_cap: usize) -> Result<Vec<usize>> {
    if !game.known_monotone() && !is_monotone_capped(game, monotone_cap)? {
        return Err(Error::NonMonotone(
            "the veto shortcut v(N \\ {i}) = 0 is unsound for non-monotone games".into(),
        ));
    }
    let n = game.num_agents();
    let grand = Coalition::grand(n);
    Ok((0..n).filter(|&i| !game.wins(grand.without(i))).collect())
}

/// Decide the core through base-game veto agents.
///
/// With veto agents present, splitting `vr(N)` equally among them is in the
/// core (veto agents survive into the extension, and every coalition
/// missing one is worth zero there). Without veto agents the method cannot
/// decide — extensions of veto-free games may still have non-empty cores —
/// so it answers `Unknown`.
pub fn core_via_veto<G: SimpleGame>(g: &ReliabilityGame<G>) -> Result<CoreResult> {
    core_via_veto_capped(g, DEFAULT_MONOTONE_CAP)
}

pub fn core_via_veto_capped<G: SimpleGame>(
    g: &ReliabilityGame<G>,
    monotone_cap: usize,
) -> Result<CoreResult> {
    let veto = find_veto_agents_capped(g.base(), monotone_cap)?;
    if veto.is_empty() {
        return Ok(CoreResult {
            verdict: CoreVerdict::Unknown {
                reason: "base game has no veto agents; the veto method cannot decide".into(),
            },
            method: CoreMethod::Veto,
        });
    }
    let n = g.num_agents();
    let grand_value = g.grand_value()?;
    let share = grand_value / veto.len() as f64;
    let mut payoffs = vec![0.0; n];
    for &i in &veto {
        payoffs[i] = share;
    }
    Ok(CoreResult {
        verdict: CoreVerdict::NonEmpty(PayoffVector::new(payoffs)?),
        method: CoreMethod::Veto,
    })
}

/// Decide the core by the full feasibility LP: one constraint per nonempty
/// coalition, the efficiency equality, and nonnegativity. Exponential in
/// the agent count; desk scale only.
pub fn core_brute_force<G: SimpleGame>(g: &ReliabilityGame<G>) -> Result<CoreResult> {
    core_brute_force_capped(g, DEFAULT_BRUTE_FORCE_CAP)
}

pub fn core_brute_force_capped<G: SimpleGame>(
    g: &ReliabilityGame<G>,
    cap: usize,
) -> Result<CoreResult> {
    let n = g.num_agents();
    if n > cap.min(Coalition::MAX_AGENTS) {
        return Err(Error::cap(
            "brute-force core LP",
            n,
            cap.min(Coalition::MAX_AGENTS),
        ));
    }
    let table = g.value_table(n)?;
    let verdict = core_lp_from_table(n, &table)?;
    Ok(CoreResult {
        verdict,
        method: CoreMethod::BruteLp,
    })
}

/// Shared LP construction for dense value tables. Constraints with a
/// nonpositive right-hand side are vacuous under `p >= 0` and are dropped;
/// the grand coalition is covered by the equality row.
fn core_lp_from_table(n: usize, table: &[f64]) -> Result<CoreVerdict> {
    let full = (1u64 << n) - 1;
    let mut rows = Vec::new();
    for mask in 1..full {
        let value = table[mask as usize];
        if value <= 0.0 {
            continue;
        }
        let c = Coalition::from_mask(mask, n);
        let indicator: Vec<f64> = (0..n)
            .map(|i| if c.contains(i) { 1.0 } else { 0.0 })
            .collect();
        rows.push((indicator, value));
    }
    let problem = FeasibilityProblem::new(n, rows, (vec![1.0; n], table[full as usize]))?;
    match solve_feasibility(&problem, DEFAULT_TOLERANCE)? {
        Feasibility::Feasible { x, .. } => Ok(CoreVerdict::NonEmpty(PayoffVector::new(x)?)),
        Feasibility::Infeasible { .. } => Ok(CoreVerdict::Empty),
    }
}

/// Decide the core of a typed game through the per-type LP.
///
/// Equivalent agents can share a payoff without loss, so one variable per
/// type suffices: for every count profile `q`, `sum_j q_j p(j) >= vr(q)`,
/// with `sum_j n_j p(j) = vr(n)` and `p >= 0`. Polynomially many
/// constraints for constant type count. A non-empty verdict returns the
/// per-agent imputation in expansion order (all agents of type 0 first).
pub fn core_typed(tg: &TypedGame) -> Result<CoreResult> {
    core_typed_capped(tg, DEFAULT_TYPED_PROFILE_CAP)
}

pub fn core_typed_capped(tg: &TypedGame, profile_cap: usize) -> Result<CoreResult> {
    let profiles = tg.profile_count();
    if profiles > profile_cap {
        return Err(Error::CapExceeded {
            what: "typed core LP profile enumeration",
            agents: profiles,
            cap: profile_cap,
        });
    }
    let k = tg.num_types();
    let counts = tg.counts();
    let full: Vec<u32> = counts.to_vec();
    let grand_value = typed_value(tg, &full);

    let mut rows = Vec::new();
    for q in tg.profiles() {
        if q.iter().all(|&w| w == 0) || q == full {
            continue;
        }
        let value = typed_value(tg, &q);
        if value <= 0.0 {
            continue;
        }
        rows.push((q.iter().map(|&w| w as f64).collect(), value));
    }
    let equality = (counts.iter().map(|&c| c as f64).collect(), grand_value);
    let problem = FeasibilityProblem::new(k, rows, equality)?;
    let verdict = match solve_feasibility(&problem, DEFAULT_TOLERANCE)? {
        Feasibility::Feasible { x, .. } => {
            let mut per_agent = Vec::with_capacity(tg.num_agents());
            for (j, &c) in counts.iter().enumerate() {
                per_agent.extend(std::iter::repeat_n(x[j].max(0.0), c as usize));
            }
            CoreVerdict::NonEmpty(PayoffVector::new(per_agent)?)
        }
        Feasibility::Infeasible { .. } => CoreVerdict::Empty,
    };
    Ok(CoreResult {
        verdict,
        method: CoreMethod::TypedLp,
    })
}

/// Constructive core imputation for convex base games: mix one core element
/// of each winning subgame, weighting subgame `C` by the probability that
/// exactly `C` survives from the grand coalition. Refuses non-convex bases,
/// for which the construction is unsound (some extension then has an empty
/// core).
pub fn convex_core_construction<G: SimpleGame>(g: &ReliabilityGame<G>) -> Result<CoreResult> {
    convex_core_construction_capped(g, DEFAULT_CONVEX_CONSTRUCTION_CAP)
}

pub fn convex_core_construction_capped<G: SimpleGame>(
    g: &ReliabilityGame<G>,
    cap: usize,
) -> Result<CoreResult> {
    let n = g.num_agents();
    if n > cap.min(Coalition::MAX_AGENTS) {
        return Err(Error::cap(
            "convex-game core construction",
            n,
            cap.min(Coalition::MAX_AGENTS),
        ));
    }
    if !is_convex_capped(g.base(), n.max(DEFAULT_CONVEXITY_CAP))? {
        return Err(Error::NonConvex);
    }

    let base = g.base();
    let grand = Coalition::grand(n);
    let mut accumulators = vec![KahanSum::new(); n];
    for mask in 1..=grand.mask() {
        let c = Coalition::from_mask(mask, n);
        if !base.wins(c) {
            // Convexity makes every subgame core non-empty, so a losing
            // coalition has no winning subsets and its subgame core is the
            // zero vector, contributing nothing to the mixture.
            continue;
        }
        let weight = alpha(g.survival(), c, grand);
        if weight == 0.0 {
            continue;
        }
        let p_c = subgame_core_element(base, c)?;
        for (i, member) in c.members().enumerate() {
            accumulators[member].add(weight * p_c[i]);
        }
    }
    let payoffs: Vec<f64> = accumulators.iter().map(|a| a.value().max(0.0)).collect();
    let payoff = PayoffVector::new(payoffs)?;

    match check_core_membership_capped(g, &payoff, n.max(DEFAULT_MEMBERSHIP_CAP))? {
        Membership::InCore => Ok(CoreResult {
            verdict: CoreVerdict::NonEmpty(payoff),
            method: CoreMethod::ConvexConstruction,
        }),
        Membership::Blocked { coalition, .. } => Err(Error::SolverFailure(format!(
            "constructed imputation is blocked by {coalition} despite a convex base"
        ))),
    }
}

/// A core element of the base subgame restricted to `c`, indexed densely by
/// the members of `c` in increasing order. Agents are re-indexed so the LP
/// stays as small as the subgame.
fn subgame_core_element<G: SimpleGame>(base: &G, c: Coalition) -> Result<Vec<f64>> {
    let n = base.num_agents();
    let members: Vec<usize> = c.members().collect();
    let size = members.len();
    let mut rows = Vec::new();
    for sub in 1..(1u64 << size) - 1 {
        // Map the dense submask back to the full agent space.
        let mut full_mask = 0u64;
        for (b, &member) in members.iter().enumerate() {
            if sub >> b & 1 == 1 {
                full_mask |= 1 << member;
            }
        }
        if !base.wins(Coalition::from_mask(full_mask, n)) {
            continue;
        }
        let indicator: Vec<f64> = (0..size)
            .map(|b| if sub >> b & 1 == 1 { 1.0 } else { 0.0 })
            .collect();
        rows.push((indicator, 1.0));
    }
    let problem = FeasibilityProblem::new(size, rows, (vec![1.0; size], 1.0))?;
    match solve_feasibility(&problem, DEFAULT_TOLERANCE)? {
        Feasibility::Feasible { x, .. } => Ok(x.iter().map(|v| v.max(0.0)).collect()),
        Feasibility::Infeasible { .. } => Err(Error::SolverFailure(format!(
            "subgame {c} has an empty core despite a convex base"
        ))),
    }
}
