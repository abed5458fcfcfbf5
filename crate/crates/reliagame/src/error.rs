//! Crate-wide error type.
//!
//! Exact algorithms in this crate refuse to run above their agent caps
//! instead of silently degrading to heuristics; those refusals surface as
//! [`Error::CapExceeded`]. Data problems (malformed games, bad arguments)
//! and solver breakdowns get their own variants so callers can tell a bad
//! input from an analysis that is merely too large from a genuine failure.

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An exhaustive computation was refused because the instance exceeds
    /// the configured cap.
    #[error("{what}: exhaustive computation over {agents} agents exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        agents: usize,
        cap: usize,
    },

    /// A game definition violated a structural invariant.
    #[error("invalid game: {0}")]
    InvalidGame(String),

    /// A caller-supplied argument was out of range or malformed.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A payoff vector failed the imputation requirements.
    #[error("not an imputation: {0}")]
    NotImputation(String),

    /// An operation that is only sound for monotone games was given a
    /// non-monotone one.
    #[error("operation requires a monotone game: {0}")]
    NonMonotone(String),

    /// The constructive core method was given a non-convex base game, for
    /// which the construction is unsound.
    #[error("operation requires a convex base game")]
    NonConvex,

    /// The dense LP tableau would not fit in the solver's memory budget.
    #[error("linear program too large for the dense solver: {rows} rows x {cols} columns")]
    LpTooLarge { rows: usize, cols: usize },

    /// The LP solver broke down numerically (distinct from infeasibility).
    #[error("solver failure: {0}")]
    SolverFailure(String),
}

impl Error {
    pub fn cap(what: &'static str, agents: usize, cap: usize) -> Self {
        Error::CapExceeded { what, agents, cap }
    }
}
