//! Coalitions as fixed-capacity bit sets over agent indices.

use std::fmt;

/// A subset of the agents `0..n`, stored as a 64-bit mask.
///
/// Every coalition carries the agent count `n` of the game it belongs to;
/// mixing coalitions of different capacities is a programming error and
/// panics. The hard capacity limit is [`Coalition::MAX_AGENTS`] agents, which
/// bounds every exact algorithm in the crate.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Coalition {
    mask: u64,
    n: u8,
}

impl Coalition {
    /// Hard upper bound on the number of agents in any game.
    pub const MAX_AGENTS: usize = 63;

    fn check_capacity(n: usize) {
        assert!(
            n <= Self::MAX_AGENTS,
            "agent count {n} exceeds the hard cap of {}",
            Self::MAX_AGENTS
        );
    }

    /// The empty coalition over `n` agents.
    pub fn empty(n: usize) -> Self {
        Self::check_capacity(n);
        Coalition {
            mask: 0,
            n: n as u8,
        }
    }

    /// The grand coalition `N` of all `n` agents.
    pub fn grand(n: usize) -> Self {
        Self::check_capacity(n);
        Coalition {
            mask: (1u64 << n) - 1,
            n: n as u8,
        }
    }

    /// Coalition from a raw bit mask. Panics if the mask has bits at or
    /// above `n`.
    pub fn from_mask(mask: u64, n: usize) -> Self {
        Self::check_capacity(n);
        assert!(
            mask & !((1u64 << n) - 1) == 0,
            "mask {mask:#x} has members outside 0..{n}"
        );
        Coalition { mask, n: n as u8 }
    }

    /// Coalition containing the given member indices.
    pub fn from_members<I: IntoIterator<Item = usize>>(n: usize, members: I) -> Self {
        let mut c = Self::empty(n);
        for i in members {
            c = c.with(i);
        }
        c
    }

    /// The singleton `{i}`.
    pub fn singleton(n: usize, i: usize) -> Self {
        Self::empty(n).with(i)
    }

    /// Agent capacity `n` this coalition is defined over.
    #[inline]
    pub fn capacity(&self) -> usize {
        self.n as usize
    }

    /// Raw bit mask.
    #[inline]
    pub fn mask(&self) -> u64 {
        self.mask
    }

    /// Number of members.
    #[inline]
    pub fn size(&self) -> usize {
        self.mask.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        assert!(i < self.capacity(), "agent {i} out of range 0..{}", self.n);
        self.mask >> i & 1 == 1
    }

    /// This coalition with agent `i` added.
    #[inline]
    pub fn with(&self, i: usize) -> Self {
        assert!(i < self.capacity(), "agent {i} out of range 0..{}", self.n);
        Coalition {
            mask: self.mask | 1 << i,
            n: self.n,
        }
    }

    /// This coalition with agent `i` removed.
    #[inline]
    pub fn without(&self, i: usize) -> Self {
        assert!(i < self.capacity(), "agent {i} out of range 0..{}", self.n);
        Coalition {
            mask: self.mask & !(1 << i),
            n: self.n,
        }
    }

    fn check_same_capacity(&self, other: &Self) {
        assert_eq!(
            self.n, other.n,
            "coalition capacity mismatch: {} vs {}",
            self.n, other.n
        );
    }

    #[inline]
    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.check_same_capacity(other);
        self.mask & !other.mask == 0
    }

    pub fn union(&self, other: &Self) -> Self {
        self.check_same_capacity(other);
        Coalition {
            mask: self.mask | other.mask,
            n: self.n,
        }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.check_same_capacity(other);
        Coalition {
            mask: self.mask & other.mask,
            n: self.n,
        }
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.check_same_capacity(other);
        Coalition {
            mask: self.mask & !other.mask,
            n: self.n,
        }
    }

    pub fn complement(&self) -> Self {
        Coalition {
            mask: !self.mask & ((1u64 << self.n) - 1),
            n: self.n,
        }
    }

    /// Member indices in increasing order.
    pub fn members(&self) -> Members {
        Members { mask: self.mask }
    }

    /// All subsets of this coalition in increasing mask order, including the
    /// empty set and the coalition itself.
    pub fn subsets(&self) -> Subsets {
        Subsets {
            mask: self.mask,
            n: self.n,
            next: Some(0),
        }
    }
}

impl fmt::Display for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.members().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Iterator over member indices.
pub struct Members {
    mask: u64,
}

impl Iterator for Members {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.mask == 0 {
            return None;
        }
        let i = self.mask.trailing_zeros() as usize;
        self.mask &= self.mask - 1;
        Some(i)
    }
}

/// Iterator over all submasks of a mask, ascending.
pub struct Subsets {
    mask: u64,
    n: u8,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = Coalition;

    #[inline]
    fn next(&mut self) -> Option<Coalition> {
        let sub = self.next?;
        // (sub - mask) & mask steps through submasks in increasing order.
        let following = sub.wrapping_sub(self.mask) & self.mask;
        self.next = if sub == self.mask {
            None
        } else {
            Some(following)
        };
        Some(Coalition {
            mask: sub,
            n: self.n,
        })
    }
}
