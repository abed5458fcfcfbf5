//! Typed games: agents come in `k` types, with per-type survival
//! probabilities, and a coalition's value depends only on its count profile.

use crate::coalition::Coalition;
use crate::error::{Error, Result};
use crate::games::{BaseGame, SimpleGame};

/// Default cap on the total agent count when expanding a typed game into an
/// explicit per-agent game.
pub const DEFAULT_EXPANSION_CAP: usize = 20;

/// A game over `k` agent types, given by per-type counts `n_j`, per-type
/// survival probabilities `r_j`, and a boolean value for every count profile
/// `(w_1..w_k)` with `0 <= w_j <= n_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct TypedGame {
    counts: Vec<u32>,
    survival: Vec<f64>,
    /// Dense table over profiles in mixed-radix order; `strides[j]` is the
    /// index step for one more agent of type `j`.
    values: Vec<bool>,
    strides: Vec<usize>,
}

impl TypedGame {
    /// Build a typed game from a winning predicate on profiles.
    pub fn new<F>(counts: Vec<u32>, survival: Vec<f64>, mut winning: F) -> Result<Self>
    where
        F: FnMut(&[u32]) -> bool,
    {
        if counts.is_empty() {
            return Err(Error::InvalidGame(
                "a typed game needs at least one type".into(),
            ));
        }
        if counts.contains(&0) {
            return Err(Error::InvalidGame(
                "every type must have at least one agent".into(),
            ));
        }
        if counts.len() != survival.len() {
            return Err(Error::InvalidGame(format!(
                "{} types but {} survival probabilities",
                counts.len(),
                survival.len()
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
        let total: u64 = counts.iter().map(|&c| c as u64).sum();
        if total > Coalition::MAX_AGENTS as u64 {
            return Err(Error::InvalidGame(format!(
                "typed game has {total} agents in total, hard cap is {}",
                Coalition::MAX_AGENTS
            )));
        }

        let mut strides = Vec::with_capacity(counts.len());
        let mut size = 1usize;
        for &c in &counts {
            strides.push(size);
            size *= c as usize + 1;
        }

        let mut values = vec![false; size];
        let mut profile = vec![0u32; counts.len()];
        for (idx, slot) in values.iter_mut().enumerate() {
            let mut rest = idx;
            for (j, &c) in counts.iter().enumerate() {
                profile[j] = (rest % (c as usize + 1)) as u32;
                rest /= c as usize + 1;
            }
            *slot = winning(&profile);
        }
        if values[0] {
            return Err(Error::InvalidGame(
                "the all-zero profile must lose (v(empty) = 0)".into(),
            ));
        }
        Ok(TypedGame {
            counts,
            survival,
            values,
            strides,
        })
    }

    /// Build from an explicit list of winning profiles; every profile not
    /// listed loses.
    pub fn from_winning_profiles(
        counts: Vec<u32>,
        survival: Vec<f64>,
        winning: &[Vec<u32>],
    ) -> Result<Self> {
        for p in winning {
            if p.len() != counts.len() {
                return Err(Error::InvalidGame(format!(
                    "winning profile {p:?} has {} entries, expected {}",
                    p.len(),
                    counts.len()
                )));
            }
            if p.iter().zip(&counts).any(|(w, c)| w > c) {
                return Err(Error::InvalidGame(format!(
                    "winning profile {p:?} exceeds the type counts {counts:?}"
                )));
            }
        }
        Self::new(counts, survival, |profile| {
            winning.iter().any(|p| p.as_slice() == profile)
        })
    }

    pub fn num_types(&self) -> usize {
        self.counts.len()
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn survival(&self) -> &[f64] {
        &self.survival
    }

    /// Total number of agents across all types.
    pub fn num_agents(&self) -> usize {
        self.counts.iter().map(|&c| c as usize).sum()
    }

    /// Number of distinct profiles, `prod (n_j + 1)`.
    pub fn profile_count(&self) -> usize {
        self.values.len()
    }

    /// Value of a profile. Panics if any entry exceeds its type count.
    pub fn profile_value(&self, profile: &[u32]) -> bool {
        self.values[self.profile_index(profile)]
    }

    fn profile_index(&self, profile: &[u32]) -> usize {
        assert_eq!(profile.len(), self.counts.len(), "profile arity mismatch");
        let mut idx = 0usize;
        for (j, (&w, &c)) in profile.iter().zip(&self.counts).enumerate() {
            assert!(w <= c, "profile entry {w} exceeds count {c} for type {j}");
            idx += w as usize * self.strides[j];
        }
        idx
    }

    /// All profiles in mixed-radix order (type 0 varying fastest).
    pub fn profiles(&self) -> impl Iterator<Item = Vec<u32>> + '_ {
        let k = self.counts.len();
        (0..self.values.len()).map(move |idx| {
            let mut profile = vec![0u32; k];
            let mut rest = idx;
            for (j, &c) in self.counts.iter().enumerate() {
                profile[j] = (rest % (c as usize + 1)) as u32;
                rest /= c as usize + 1;
            }
            profile
        })
    }

    /// True iff the profile table is monotone: raising any single count
    /// never turns a winning profile into a losing one.
    pub fn is_profile_monotone(&self) -> bool {
        for (idx, &win) in self.values.iter().enumerate() {
            if !win {
                continue;
            }
            // Winning profile: every superprofile must win too.
            let mut rest = idx;
            for (j, &c) in self.counts.iter().enumerate() {
                let w = rest % (c as usize + 1);
                rest /= c as usize + 1;
                if (w as u32) < c && !self.values[idx + self.strides[j]] {
                    return false;
                }
            }
        }
        true
    }
}

/// A typed game expanded to an explicit per-agent base game. Agents are laid
/// out type-major: all agents of type 0 first, then type 1, and so on.
#[derive(Debug, Clone, PartialEq)]
pub struct TypedExpandedGame {
    typed: TypedGame,
    agent_type: Vec<usize>,
    monotone: bool,
}

impl TypedExpandedGame {
    pub fn typed(&self) -> &TypedGame {
        &self.typed
    }

    /// Type index of each agent.
    pub fn agent_types(&self) -> &[usize] {
        &self.agent_type
    }

    /// Count profile of a coalition of expanded agents.
    pub fn profile_of(&self, coalition: Coalition) -> Vec<u32> {
        assert_eq!(coalition.capacity(), self.agent_type.len());
        let mut profile = vec![0u32; self.typed.num_types()];
        for i in coalition.members() {
            profile[self.agent_type[i]] += 1;
        }
        profile
    }
}

impl SimpleGame for TypedExpandedGame {
    fn num_agents(&self) -> usize {
        self.agent_type.len()
    }

    fn wins(&self, coalition: Coalition) -> bool {
        self.typed.profile_value(&self.profile_of(coalition))
    }

    fn known_monotone(&self) -> bool {
        self.monotone
    }
}

/// Expand a typed game into an explicit per-agent base game plus the
/// per-agent survival vector, with the default agent cap.
pub fn expand_typed(tg: &TypedGame) -> Result<(BaseGame, Vec<f64>)> {
    expand_typed_capped(tg, DEFAULT_EXPANSION_CAP)
}

pub fn expand_typed_capped(tg: &TypedGame, cap: usize) -> Result<(BaseGame, Vec<f64>)> {
    let n = tg.num_agents();
    if n > cap.min(Coalition::MAX_AGENTS) {
        return Err(Error::cap(
            "typed game expansion",
            n,
            cap.min(Coalition::MAX_AGENTS),
        ));
    }
    let mut agent_type = Vec::with_capacity(n);
    let mut survival = Vec::with_capacity(n);
    for (j, &c) in tg.counts().iter().enumerate() {
        for _ in 0..c {
            agent_type.push(j);
            survival.push(tg.survival()[j]);
        }
    }
    let monotone = tg.is_profile_monotone();
    let game = TypedExpandedGame {
        typed: tg.clone(),
        agent_type,
        monotone,
    };
    Ok((BaseGame::TypedExpanded(game), survival))
}
