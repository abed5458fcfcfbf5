//! Simple base games with uniform oracle access and structural predicates.
//!
//! A base game is a boolean characteristic function over coalitions of a
//! declared agent count. The concrete families here are minimal-winning-set
//! games ([`ExplicitGame`]), weighted voting games, dense value tables
//! ([`TableGame`], mostly useful as a test oracle), typed games and their
//! expansions (see [`typed`]), and s-t connectivity games (see
//! [`crate::netgame`]).

pub mod typed;

use crate::coalition::Coalition;
use crate::error::{Error, Result};
use crate::netgame::Network;
pub use typed::{expand_typed, expand_typed_capped, TypedExpandedGame, TypedGame};

/// Default agent cap for full value-enumeration sweeps (monotonicity,
/// agent equivalence).
pub const DEFAULT_MONOTONE_CAP: usize = 20;
/// Default agent cap for the pairwise convexity check, which is quadratic
/// in the number of coalitions.
pub const DEFAULT_CONVEXITY_CAP: usize = 14;
/// Default agent cap for the agent-equivalence check.
pub const DEFAULT_EQUIVALENCE_CAP: usize = 20;

/// Boolean characteristic-function oracle: `v : 2^N -> {0, 1}`.
///
/// Implementations must be pure and satisfy `v(empty) = 0`. The coalition's
/// capacity must equal [`SimpleGame::num_agents`]; implementations panic on
/// mismatch.
pub trait SimpleGame {
    fn num_agents(&self) -> usize;

    /// Whether the coalition wins, i.e. `v(coalition) = 1`.
    fn wins(&self, coalition: Coalition) -> bool;

    /// `v(coalition)` as an integer.
    fn value(&self, coalition: Coalition) -> u8 {
        self.wins(coalition) as u8
    }

    /// True when monotonicity is guaranteed by construction, in which case
    /// callers may skip the exhaustive check.
    fn known_monotone(&self) -> bool {
        false
    }
}

/// A simple game given by its minimal winning coalitions.
///
/// A coalition wins iff it contains at least one of the listed sets, so the
/// induced game is monotone by construction. The list must be an antichain:
/// no listed set may contain another.
#[derive(Debug, Clone, PartialEq)]
pub struct ExplicitGame {
    n: usize,
    minimal_winning: Vec<Coalition>,
}

impl ExplicitGame {
    pub fn new(n: usize, minimal_winning: Vec<Coalition>) -> Result<Self> {
        if n > Coalition::MAX_AGENTS {
            return Err(Error::InvalidGame(format!(
                "agent count {n} exceeds the hard cap of {}",
                Coalition::MAX_AGENTS
            )));
        }
        for (k, w) in minimal_winning.iter().enumerate() {
            if w.capacity() != n {
                return Err(Error::InvalidGame(format!(
                    "minimal winning set #{k} is over {} agents, game has {n}",
                    w.capacity()
                )));
            }
            if w.is_empty() {
                return Err(Error::InvalidGame(
                    "the empty coalition cannot be a minimal winning set (v(empty) = 0)".into(),
                ));
            }
        }
        for i in 0..minimal_winning.len() {
            for j in 0..minimal_winning.len() {
                if i != j && minimal_winning[i].is_subset_of(&minimal_winning[j]) {
                    return Err(Error::InvalidGame(format!(
                        "minimal winning sets must form an antichain: set #{i} {} is contained in set #{j} {}",
                        minimal_winning[i], minimal_winning[j]
                    )));
                }
            }
        }
        Ok(ExplicitGame { n, minimal_winning })
    }

    pub fn minimal_winning(&self) -> &[Coalition] {
        &self.minimal_winning
    }
}

impl SimpleGame for ExplicitGame {
    fn num_agents(&self) -> usize {
        self.n
    }

    fn wins(&self, coalition: Coalition) -> bool {
        assert_eq!(coalition.capacity(), self.n, "coalition capacity mismatch");
        self.minimal_winning
            .iter()
            .any(|w| w.is_subset_of(&coalition))
    }

    fn known_monotone(&self) -> bool {
        true
    }
}

/// Weighted voting: a coalition wins iff its total weight reaches the quota.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedVotingGame {
    weights: Vec<f64>,
    quota: f64,
}

impl WeightedVotingGame {
    pub fn new(weights: Vec<f64>, quota: f64) -> Result<Self> {
        if weights.len() > Coalition::MAX_AGENTS {
            return Err(Error::InvalidGame(format!(
                "agent count {} exceeds the hard cap of {}",
                weights.len(),
                Coalition::MAX_AGENTS
            )));
        }
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidGame(
                "weights must be finite and nonnegative".into(),
            ));
        }
        if !quota.is_finite() || quota <= 0.0 {
            return Err(Error::InvalidGame(format!(
                "quota must be positive and finite, got {quota}"
            )));
        }
        Ok(WeightedVotingGame { weights, quota })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn quota(&self) -> f64 {
        self.quota
    }
}

impl SimpleGame for WeightedVotingGame {
    fn num_agents(&self) -> usize {
        self.weights.len()
    }

    fn wins(&self, coalition: Coalition) -> bool {
        assert_eq!(
            coalition.capacity(),
            self.weights.len(),
            "coalition capacity mismatch"
        );
        let total: f64 = coalition.members().map(|i| self.weights[i]).sum();
        total >= self.quota
    }

    fn known_monotone(&self) -> bool {
        true
    }
}

/// A simple game stored as a dense value table indexed by coalition mask.
///
/// Arbitrary (including non-monotone) games can be represented, which makes
/// this the workhorse for randomized cross-checks against the structured
/// families.
#[derive(Debug, Clone, PartialEq)]
pub struct TableGame {
    n: usize,
    values: Vec<bool>,
}

impl TableGame {
    pub fn new(n: usize, values: Vec<bool>) -> Result<Self> {
        if n > 24 {
            return Err(Error::InvalidGame(format!(
                "a dense value table over {n} agents would need 2^{n} entries"
            )));
        }
        if values.len() != 1usize << n {
            return Err(Error::InvalidGame(format!(
                "value table has {} entries, expected 2^{n}",
                values.len()
            )));
        }
        if values[0] {
            return Err(Error::InvalidGame("v(empty) must be 0".into()));
        }
        Ok(TableGame { n, values })
    }

    pub fn from_fn<F: FnMut(Coalition) -> bool>(n: usize, mut f: F) -> Result<Self> {
        if n > 24 {
            return Err(Error::InvalidGame(format!(
                "a dense value table over {n} agents would need 2^{n} entries"
            )));
        }
        let values = (0..1u64 << n)
            .map(|mask| f(Coalition::from_mask(mask, n)))
            .collect();
        Self::new(n, values)
    }

    /// Materialize any simple game as a table. Handy for restricting and
    /// perturbing games in tests.
    pub fn from_game<G: SimpleGame>(game: &G) -> Result<Self> {
        Self::from_fn(game.num_agents(), |c| game.wins(c))
    }
}

impl SimpleGame for TableGame {
    fn num_agents(&self) -> usize {
        self.n
    }

    fn wins(&self, coalition: Coalition) -> bool {
        assert_eq!(coalition.capacity(), self.n, "coalition capacity mismatch");
        self.values[coalition.mask() as usize]
    }
}

/// The closed family of base games the CLI and file format know about.
#[derive(Debug, Clone, PartialEq)]
pub enum BaseGame {
    Network(Network),
    Explicit(ExplicitGame),
    WeightedVoting(WeightedVotingGame),
    TypedExpanded(TypedExpandedGame),
}

impl SimpleGame for BaseGame {
    fn num_agents(&self) -> usize {
        match self {
            BaseGame::Network(g) => g.num_agents(),
            BaseGame::Explicit(g) => g.num_agents(),
            BaseGame::WeightedVoting(g) => g.num_agents(),
            BaseGame::TypedExpanded(g) => g.num_agents(),
        }
    }

    fn wins(&self, coalition: Coalition) -> bool {
        match self {
            BaseGame::Network(g) => g.wins(coalition),
            BaseGame::Explicit(g) => g.wins(coalition),
            BaseGame::WeightedVoting(g) => g.wins(coalition),
            BaseGame::TypedExpanded(g) => g.wins(coalition),
        }
    }

    fn known_monotone(&self) -> bool {
        match self {
            BaseGame::Network(g) => g.known_monotone(),
            BaseGame::Explicit(g) => g.known_monotone(),
            BaseGame::WeightedVoting(g) => g.known_monotone(),
            BaseGame::TypedExpanded(g) => g.known_monotone(),
        }
    }
}

/// Exhaustive monotonicity check with the default cap.
///
/// Returns true iff `v(C') <= v(C)` for every `C' subset of C`, verified by
/// iterating single-agent removals over all coalitions.
pub fn is_monotone<G: SimpleGame>(game: &G) -> Result<bool> {
    is_monotone_capped(game, DEFAULT_MONOTONE_CAP)
}

pub fn is_monotone_capped<G: SimpleGame>(game: &G, cap: usize) -> Result<bool> {
    let n = game.num_agents();
    if n > cap.min(Coalition::MAX_AGENTS) {
        return Err(Error::cap(
            "monotonicity check",
            n,
            cap.min(Coalition::MAX_AGENTS),
        ));
    }
    for mask in 1..1u64 << n {
        let c = Coalition::from_mask(mask, n);
        if game.wins(c) {
            continue;
        }
        // c loses; no single-agent removal may produce a winner.
        for i in c.members() {
            if game.wins(c.without(i)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Exhaustive convexity check with the default cap: `v(A u B) + v(A n B) >=
/// v(A) + v(B)` for all coalition pairs.
pub fn is_convex<G: SimpleGame>(game: &G) -> Result<bool> {
    is_convex_capped(game, DEFAULT_CONVEXITY_CAP)
}

pub fn is_convex_capped<G: SimpleGame>(game: &G, cap: usize) -> Result<bool> {
    let n = game.num_agents();
    if n > cap.min(Coalition::MAX_AGENTS) {
        return Err(Error::cap(
            "convexity check",
            n,
            cap.min(Coalition::MAX_AGENTS),
        ));
    }
    let table: Vec<f64> = (0..1u64 << n)
        .map(|mask| game.value(Coalition::from_mask(mask, n)) as f64)
        .collect();
    Ok(is_convex_values(&table, 0.0))
}

/// Convexity of a real-valued game given as a dense table indexed by
/// coalition mask. Violations smaller than `tol` are ignored.
pub fn is_convex_values(values: &[f64], tol: f64) -> bool {
    let size = values.len();
    assert!(
        size.is_power_of_two(),
        "table length must be a power of two"
    );
    for a in 0..size {
        for b in a..size {
            if values[a | b] + values[a & b] < values[a] + values[b] - tol {
                return false;
            }
        }
    }
    true
}

/// Whether agents `i` and `j` are interchangeable: for every coalition `C`
/// avoiding both, `v(C u {i}) = v(C u {j})`.
pub fn equivalent_agents<G: SimpleGame>(game: &G, i: usize, j: usize) -> Result<bool> {
    equivalent_agents_capped(game, i, j, DEFAULT_EQUIVALENCE_CAP)
}

pub fn equivalent_agents_capped<G: SimpleGame>(
    game: &G,
    i: usize,
    j: usize,
    cap: usize,
) -> Result<bool> {
    let n = game.num_agents();
    if i >= n || j >= n {
        return Err(Error::InvalidArgument(format!(
            "agents {i}, {j} must be in 0..{n}"
        )));
    }
    if i == j {
        return Err(Error::InvalidArgument(
            "agent equivalence needs two distinct agents".into(),
        ));
    }
    if n > cap.min(Coalition::MAX_AGENTS) {
        return Err(Error::cap(
            "agent equivalence check",
            n,
            cap.min(Coalition::MAX_AGENTS),
        ));
    }
    let rest = Coalition::grand(n).without(i).without(j);
    for c in rest.subsets() {
        if game.wins(c.with(i)) != game.wins(c.with(j)) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    /// The five-edge example game as minimal winning sets: agents
    /// (a,b,c,d,e) = (0,1,2,3,4), winners contain {a,b}, {c,d} or {a,e,d}.
    pub(crate) fn bridge_explicit() -> ExplicitGame {
        ExplicitGame::new(
            5,
            vec![
                Coalition::from_members(5, [0, 1]),
                Coalition::from_members(5, [2, 3]),
                Coalition::from_members(5, [0, 4, 3]),
            ],
        )
        .unwrap()
    }

    fn unanimity(n: usize, veto: &[usize]) -> ExplicitGame {
        ExplicitGame::new(n, vec![Coalition::from_members(n, veto.iter().copied())]).unwrap()
    }

    #[test]
    fn explicit_game_values() {
        let g = bridge_explicit();
        assert_eq!(g.value(Coalition::from_members(5, [0, 1])), 1);
        assert_eq!(g.value(Coalition::from_members(5, [0, 4, 3])), 1);
        assert_eq!(g.value(Coalition::from_members(5, [0, 2])), 0);
        assert_eq!(g.value(Coalition::empty(5)), 0);
    }

    #[test]
    fn weighted_voting_values() {
        let g = WeightedVotingGame::new(vec![1.0, 1.0, 1.0], 2.0).unwrap();
        assert_eq!(g.value(Coalition::from_members(3, [0])), 0);
        assert_eq!(g.value(Coalition::from_members(3, [0, 1])), 1);
        assert_eq!(g.value(Coalition::empty(3)), 0);
    }

    #[test]
    fn antichain_violation_reports_pair() {
        let err = ExplicitGame::new(
            3,
            vec![
                Coalition::from_members(3, [0, 1]),
                Coalition::from_members(3, [0]),
            ],
        )
        .unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("antichain"), "unexpected message: {msg}");
        assert!(
            msg.contains("#1") && msg.contains("#0"),
            "should name the pair: {msg}"
        );
    }

    #[test]
    fn empty_minimal_winning_set_rejected() {
        assert!(ExplicitGame::new(3, vec![Coalition::empty(3)]).is_err());
    }

    #[test]
    fn table_game_rejects_nonzero_empty_value() {
        let mut values = vec![false; 8];
        values[0] = true;
        assert!(TableGame::new(3, values).is_err());
    }

    #[test]
    fn monotone_families() {
        assert!(is_monotone(&bridge_explicit()).unwrap());
        let wvg = WeightedVotingGame::new(vec![3.0, 1.0, 0.0, 2.5], 3.5).unwrap();
        assert!(is_monotone(&wvg).unwrap());
    }

    #[test]
    fn monotonicity_violation_detected() {
        // v({0}) = 1, v({0,1}) = 0.
        let g = TableGame::new(2, vec![false, true, false, false]).unwrap();
        assert!(!is_monotone(&g).unwrap());
    }

    #[test]
    fn monotone_check_refuses_above_cap() {
        let g = WeightedVotingGame::new(vec![1.0; 25], 5.0).unwrap();
        match is_monotone_capped(&g, 20) {
            Err(Error::CapExceeded {
                agents: 25,
                cap: 20,
                ..
            }) => {}
            other => panic!("expected cap refusal, got {other:?}"),
        }
    }

    #[test]
    fn randomized_families_are_monotone() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..40 {
            let n = rng.random_range(1..=12);
            let sets = (0..rng.random_range(1..=4))
                .map(|_| {
                    let mask = rng.random_range(1..1u64 << n);
                    Coalition::from_mask(mask, n)
                })
                .collect::<Vec<_>>();
            // Skip draws violating the antichain requirement.
            if let Ok(g) = ExplicitGame::new(n, sets) {
                assert!(is_monotone(&g).unwrap());
            }
            let weights: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..5.0)).collect();
            let quota = rng.random_range(0.5..10.0);
            let wvg = WeightedVotingGame::new(weights, quota).unwrap();
            assert!(is_monotone(&wvg).unwrap());
        }
    }

    #[test]
    fn unanimity_games_are_convex() {
        assert!(is_convex(&unanimity(3, &[0, 1, 2])).unwrap());
        assert!(is_convex(&unanimity(5, &[1, 3])).unwrap());
        assert!(is_convex(&unanimity(4, &[2])).unwrap());
    }

    #[test]
    fn bridge_game_is_not_convex() {
        assert!(!is_convex(&bridge_explicit()).unwrap());
    }

    #[test]
    fn convexity_matches_ordered_pair_oracle() {
        // Oracle quantifies over all ordered pairs independently of the
        // implementation's triangular loop.
        fn oracle(g: &TableGame) -> bool {
            let n = g.num_agents();
            for a in 0..1u64 << n {
                for b in 0..1u64 << n {
                    let (ca, cb) = (Coalition::from_mask(a, n), Coalition::from_mask(b, n));
                    let lhs = g.value(ca.union(&cb)) as i32 + g.value(ca.intersection(&cb)) as i32;
                    let rhs = g.value(ca) as i32 + g.value(cb) as i32;
                    if lhs < rhs {
                        return false;
                    }
                }
            }
            true
        }
        let mut rng = StdRng::seed_from_u64(23);
        for _ in 0..60 {
            let n = rng.random_range(1..=6);
            let mut values: Vec<bool> = (0..1usize << n).map(|_| rng.random_bool(0.3)).collect();
            values[0] = false;
            let g = TableGame::new(n, values).unwrap();
            assert_eq!(is_convex(&g).unwrap(), oracle(&g));
        }
    }

    #[test]
    fn convexity_refuses_above_cap() {
        let g = WeightedVotingGame::new(vec![1.0; 15], 5.0).unwrap();
        assert!(matches!(is_convex(&g), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn equivalent_agents_examples() {
        // Bridge game: a and e are separated by C = {b}.
        let g = bridge_explicit();
        assert!(!equivalent_agents(&g, 0, 4).unwrap());
        // The a<->d / b<->c symmetry is a joint relabeling, not pairwise
        // interchangeability: C = {a} separates b from c.
        assert!(!equivalent_agents(&g, 1, 2).unwrap());
        assert!(!equivalent_agents(&g, 0, 3).unwrap());

        // Two identical parallel edges are genuinely interchangeable.
        let parallel = ExplicitGame::new(
            2,
            vec![
                Coalition::from_members(2, [0]),
                Coalition::from_members(2, [1]),
            ],
        )
        .unwrap();
        assert!(equivalent_agents(&parallel, 0, 1).unwrap());
    }

    #[test]
    fn equivalent_agents_rejects_same_agent() {
        let g = bridge_explicit();
        assert!(matches!(
            equivalent_agents(&g, 2, 2),
            Err(Error::InvalidArgument(_))
        ));
    }
}
