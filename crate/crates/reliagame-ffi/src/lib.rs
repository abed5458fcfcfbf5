//! C ABI for the reliagame library.
//!
//! The surface mirrors the CLI: games come in as JSON strings in the same
//! schema the `reliagame` tool reads, and analyses run against an opaque
//! [`ReliaGame`] handle. Every function returns a [`ReliaStatus`]; on any
//! non-OK status a thread-local message is available through
//! [`relia_last_error_message`]. The handle is immutable after creation and
//! may be shared across threads; results are deterministic for a fixed
//! seed regardless of thread count.
//!
//! The matching header lives at `include/reliagame.h` and is maintained by
//! hand against this file.

use reliagame::cli::file::{load_game_str, BaseLoad, LoadedGame};
use reliagame::coalition::Coalition;
use reliagame::core::{
    check_core_membership, convex_core_construction, core_brute_force, core_typed, core_via_veto,
    CoreVerdict, Membership, PayoffVector,
};
use reliagame::error::Error;
use reliagame::games::typed::DEFAULT_EXPANSION_CAP;
use reliagame::shapley::{estimate_all, exact_shapley, plan_samples, SamplingMode};
use reliagame::SimpleGame;
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Status code returned by every API call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReliaStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    CapExceeded = 3,
    SolverFailure = 4,
    Panic = 5,
}

/// Core computation method selector.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReliaCoreMethod {
    Veto = 0,
    Typed = 1,
    Brute = 2,
    Convex = 3,
    Auto = 4,
}

/// Core verdict.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReliaCoreVerdict {
    NonEmpty = 0,
    Empty = 1,
    Unknown = 2,
}

/// Opaque game handle. From C this is only ever a pointer.
pub struct ReliaGame {
    loaded: LoadedGame,
    /// Eagerly expanded per-agent view; absent when a typed game exceeds
    /// the expansion cap (the typed core path still works then).
    base: Option<BaseLoad>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn status_of(err: &Error) -> ReliaStatus {
    match err {
        Error::CapExceeded { .. } | Error::LpTooLarge { .. } => ReliaStatus::CapExceeded,
        Error::SolverFailure(_) => ReliaStatus::SolverFailure,
        _ => ReliaStatus::InvalidArgument,
    }
}

fn fail(err: &Error) -> ReliaStatus {
    set_error(&err.to_string());
    status_of(err)
}

/// Run `body` with panics converted to [`ReliaStatus::Panic`].
fn guarded(body: impl FnOnce() -> ReliaStatus) -> ReliaStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic in library call".to_string());
            set_error(&message);
            ReliaStatus::Panic
        }
    }
}

unsafe fn game_ref<'a>(game: *const ReliaGame) -> Option<&'a ReliaGame> {
    game.as_ref()
}

fn expanded(game: &ReliaGame) -> Result<&BaseLoad, ReliaStatus> {
    match &game.base {
        Some(base) => Ok(base),
        None => {
            set_error("typed game exceeds the expansion cap; only the typed core is available");
            Err(ReliaStatus::CapExceeded)
        }
    }
}

/// Build a coalition from an array of agent indices.
fn coalition_from(members: *const usize, len: usize, n: usize) -> Result<Coalition, ReliaStatus> {
    let mut c = Coalition::empty(n);
    if len > 0 {
        if members.is_null() {
            set_error("member array is null");
            return Err(ReliaStatus::NullPointer);
        }
        let slice = unsafe { std::slice::from_raw_parts(members, len) };
        for &i in slice {
            if i >= n {
                set_error(&format!("agent index {i} out of range 0..{n}"));
                return Err(ReliaStatus::InvalidArgument);
            }
            c = c.with(i);
        }
    }
    Ok(c)
}

/// Message for the most recent failure on this thread. Never null; empty
/// when no failure has been recorded. Valid until the next failing call on
/// the same thread.
#[no_mangle]
pub extern "C" fn relia_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Parse a JSON game description (the CLI file format) into a new handle.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out_game` must be a valid
/// pointer. On success the caller owns the handle and must release it with
/// [`relia_game_free`].
#[no_mangle]
pub unsafe extern "C" fn relia_game_from_json(
    json: *const c_char,
    out_game: *mut *mut ReliaGame,
) -> ReliaStatus {
    guarded(|| {
        if json.is_null() || out_game.is_null() {
            set_error("null pointer argument");
            return ReliaStatus::NullPointer;
        }
        let text = match unsafe { CStr::from_ptr(json) }.to_str() {
            Ok(t) => t,
            Err(_) => {
                set_error("game JSON is not valid UTF-8");
                return ReliaStatus::InvalidArgument;
            }
        };
        match load_game_str(text) {
            Ok(loaded) => {
                let base = loaded.to_base(DEFAULT_EXPANSION_CAP).ok();
                let handle = Box::new(ReliaGame { loaded, base });
                unsafe { *out_game = Box::into_raw(handle) };
                ReliaStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Release a handle created by [`relia_game_from_json`].
///
/// # Safety
/// `game` must be a handle from this library, not yet freed; null is a
/// no-op.
#[no_mangle]
pub unsafe extern "C" fn relia_game_free(game: *mut ReliaGame) {
    if !game.is_null() {
        drop(unsafe { Box::from_raw(game) });
    }
}

/// Number of agents of the per-agent view of the game.
///
/// # Safety
/// `game` must be a live handle and `out_count` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn relia_game_agent_count(
    game: *const ReliaGame,
    out_count: *mut usize,
) -> ReliaStatus {
    guarded(|| {
        let (Some(game), false) = (unsafe { game_ref(game) }, out_count.is_null()) else {
            set_error("null pointer argument");
            return ReliaStatus::NullPointer;
        };
        let base = match expanded(game) {
            Ok(b) => b,
            Err(status) => return status,
        };
        unsafe { *out_count = base.game.num_agents() };
        ReliaStatus::Ok
    })
}

/// Label of one agent as a freshly allocated string; release it with
/// [`relia_string_free`].
///
/// # Safety
/// `game` must be a live handle and `out_label` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn relia_game_agent_label(
    game: *const ReliaGame,
    agent: usize,
    out_label: *mut *mut c_char,
) -> ReliaStatus {
    guarded(|| {
        let (Some(game), false) = (unsafe { game_ref(game) }, out_label.is_null()) else {
            set_error("null pointer argument");
            return ReliaStatus::NullPointer;
        };
        let base = match expanded(game) {
            Ok(b) => b,
            Err(status) => return status,
        };
        let Some(label) = base.labels.get(agent) else {
            set_error(&format!(
                "agent index {agent} out of range 0..{}",
                base.labels.len()
            ));
            return ReliaStatus::InvalidArgument;
        };
        match CString::new(label.as_str()) {
            Ok(s) => {
                unsafe { *out_label = s.into_raw() };
                ReliaStatus::Ok
            }
            Err(_) => {
                set_error("label contains an interior NUL");
                ReliaStatus::InvalidArgument
            }
        }
    })
}

/// Release a string returned by this library.
///
/// # Safety
/// `s` must come from this library and not have been freed; null is a
/// no-op.
#[no_mangle]
pub unsafe extern "C" fn relia_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Exact reliability value of the coalition given by `members` (agent
/// indices, `len` of them; duplicates are harmless).
///
/// # Safety
/// `game` must be a live handle; `members` must point to `len` readable
/// indices (may be null when `len` is 0); `out_value` must be valid.
#[no_mangle]
pub unsafe extern "C" fn relia_exact_value(
    game: *const ReliaGame,
    members: *const usize,
    len: usize,
    out_value: *mut f64,
) -> ReliaStatus {
    guarded(|| {
        let (Some(game), false) = (unsafe { game_ref(game) }, out_value.is_null()) else {
            set_error("null pointer argument");
            return ReliaStatus::NullPointer;
        };
        let base = match expanded(game) {
            Ok(b) => b,
            Err(status) => return status,
        };
        let coalition = match coalition_from(members, len, base.game.num_agents()) {
            Ok(c) => c,
            Err(status) => return status,
        };
        match base.game.exact_value(coalition) {
            Ok(v) => {
                unsafe { *out_value = v };
                ReliaStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Base-game value (0 or 1) of the coalition given by `members`.
///
/// # Safety
/// Same contract as [`relia_exact_value`].
#[no_mangle]
pub unsafe extern "C" fn relia_base_value(
    game: *const ReliaGame,
    members: *const usize,
    len: usize,
    out_value: *mut i32,
) -> ReliaStatus {
    guarded(|| {
        let (Some(game), false) = (unsafe { game_ref(game) }, out_value.is_null()) else {
            set_error("null pointer argument");
            return ReliaStatus::NullPointer;
        };
        let base = match expanded(game) {
            Ok(b) => b,
            Err(status) => return status,
        };
        let coalition = match coalition_from(members, len, base.game.num_agents()) {
            Ok(c) => c,
            Err(status) => return status,
        };
        unsafe { *out_value = base.game.base().value(coalition) as i32 };
        ReliaStatus::Ok
    })
}

/// Exact Shapley values; `out_values` must hold one double per agent.
///
/// # Safety
/// `game` must be a live handle; `out_values` must point to agent-count
/// writable doubles.
#[no_mangle]
pub unsafe extern "C" fn relia_exact_shapley(
    game: *const ReliaGame,
    out_values: *mut f64,
) -> ReliaStatus {
    guarded(|| {
        let (Some(game), false) = (unsafe { game_ref(game) }, out_values.is_null()) else {
            set_error("null pointer argument");
            return ReliaStatus::NullPointer;
        };
        let base = match expanded(game) {
            Ok(b) => b,
            Err(status) => return status,
        };
        match exact_shapley(&base.game) {
            Ok(phi) => {
                let out = unsafe { std::slice::from_raw_parts_mut(out_values, phi.len()) };
                out.copy_from_slice(&phi);
                ReliaStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Smallest sample count guaranteeing an `(epsilon, delta)` estimate.
///
/// # Safety
/// `out_samples` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn relia_plan_samples(
    epsilon: f64,
    delta: f64,
    out_samples: *mut u64,
) -> ReliaStatus {
    guarded(|| {
        if out_samples.is_null() {
            set_error("null pointer argument");
            return ReliaStatus::NullPointer;
        }
        match plan_samples(epsilon, delta) {
            Ok(k) => {
                unsafe { *out_samples = k };
                ReliaStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Monte Carlo Shapley estimates for every agent: `samples` draws per agent
/// from the given seed. `shared_mode` of 0 draws independently per agent;
/// nonzero reuses one permutation per sample for all agents. `out_points`
/// must hold one double per agent; `out_epsilon` (nullable) receives the
/// Hoeffding half-width for the given `delta`.
///
/// # Safety
/// `game` must be a live handle; `out_points` must point to agent-count
/// writable doubles; `out_epsilon` may be null.
#[no_mangle]
pub unsafe extern "C" fn relia_estimate_shapley(
    game: *const ReliaGame,
    samples: u64,
    seed: u64,
    delta: f64,
    shared_mode: u8,
    out_points: *mut f64,
    out_epsilon: *mut f64,
) -> ReliaStatus {
    guarded(|| {
        let (Some(game), false) = (unsafe { game_ref(game) }, out_points.is_null()) else {
            set_error("null pointer argument");
            return ReliaStatus::NullPointer;
        };
        let base = match expanded(game) {
            Ok(b) => b,
            Err(status) => return status,
        };
        let mode = if shared_mode == 0 {
            SamplingMode::Independent
        } else {
            SamplingMode::Shared
        };
        match estimate_all(&base.game, samples, seed, delta, mode) {
            Ok(estimates) => {
                let out = unsafe { std::slice::from_raw_parts_mut(out_points, estimates.len()) };
                for (slot, est) in out.iter_mut().zip(&estimates) {
                    *slot = est.point;
                }
                if !out_epsilon.is_null() {
                    unsafe { *out_epsilon = estimates.first().map_or(0.0, |e| e.epsilon) };
                }
                ReliaStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Decide the core. On a NonEmpty verdict, `out_imputation` (nullable,
/// agent-count doubles) receives a core imputation. `Auto` tries veto, then
/// the typed LP for typed games, then brute force; if every method refuses
/// under its cap the verdict is Unknown.
///
/// # Safety
/// `game` must be a live handle; `out_verdict` must be valid;
/// `out_imputation` may be null or point to agent-count writable doubles.
#[no_mangle]
pub unsafe extern "C" fn relia_core_solve(
    game: *const ReliaGame,
    method: ReliaCoreMethod,
    out_verdict: *mut ReliaCoreVerdict,
    out_imputation: *mut f64,
) -> ReliaStatus {
    guarded(|| {
        let (Some(game), false) = (unsafe { game_ref(game) }, out_verdict.is_null()) else {
            set_error("null pointer argument");
            return ReliaStatus::NullPointer;
        };
        let result = match run_core(game, method) {
            Ok(r) => r,
            Err(status) => return status,
        };
        let verdict = match result {
            CoreVerdict::NonEmpty(payoff) => {
                if !out_imputation.is_null() {
                    let out =
                        unsafe { std::slice::from_raw_parts_mut(out_imputation, payoff.len()) };
                    out.copy_from_slice(payoff.as_slice());
                }
                ReliaCoreVerdict::NonEmpty
            }
            CoreVerdict::Empty => ReliaCoreVerdict::Empty,
            CoreVerdict::Unknown { reason } => {
                set_error(&reason);
                ReliaCoreVerdict::Unknown
            }
        };
        unsafe { *out_verdict = verdict };
        ReliaStatus::Ok
    })
}

fn run_core(game: &ReliaGame, method: ReliaCoreMethod) -> Result<CoreVerdict, ReliaStatus> {
    let typed = game.loaded.typed();
    match method {
        ReliaCoreMethod::Veto => {
            let base = expanded(game)?;
            core_via_veto(&base.game)
                .map(|r| r.verdict)
                .map_err(|e| fail(&e))
        }
        ReliaCoreMethod::Brute => {
            let base = expanded(game)?;
            core_brute_force(&base.game)
                .map(|r| r.verdict)
                .map_err(|e| fail(&e))
        }
        ReliaCoreMethod::Convex => {
            let base = expanded(game)?;
            convex_core_construction(&base.game)
                .map(|r| r.verdict)
                .map_err(|e| fail(&e))
        }
        ReliaCoreMethod::Typed => {
            let Some(typed) = typed else {
                set_error("typed core needs a typed game");
                return Err(ReliaStatus::InvalidArgument);
            };
            core_typed(&typed.typed)
                .map(|r| r.verdict)
                .map_err(|e| fail(&e))
        }
        ReliaCoreMethod::Auto => {
            let mut reasons: Vec<String> = Vec::new();
            if let Ok(base) = expanded(game) {
                match core_via_veto(&base.game) {
                    Ok(r) => match r.verdict {
                        CoreVerdict::Unknown { reason } => reasons.push(reason),
                        decisive => return Ok(decisive),
                    },
                    Err(e @ (Error::CapExceeded { .. } | Error::NonMonotone(_))) => {
                        reasons.push(e.to_string())
                    }
                    Err(e) => return Err(fail(&e)),
                }
            } else {
                reasons.push("typed game exceeds the expansion cap".into());
            }
            if let Some(typed) = typed {
                match core_typed(&typed.typed) {
                    Ok(r) => return Ok(r.verdict),
                    Err(e @ (Error::CapExceeded { .. } | Error::LpTooLarge { .. })) => {
                        reasons.push(e.to_string())
                    }
                    Err(e) => return Err(fail(&e)),
                }
            }
            if let Ok(base) = expanded(game) {
                match core_brute_force(&base.game) {
                    Ok(r) => return Ok(r.verdict),
                    Err(e @ (Error::CapExceeded { .. } | Error::LpTooLarge { .. })) => {
                        reasons.push(e.to_string())
                    }
                    Err(e) => return Err(fail(&e)),
                }
            }
            Ok(CoreVerdict::Unknown {
                reason: reasons.join("; "),
            })
        }
    }
}

/// Check whether nonnegative payoffs (`len` must equal the agent count and
/// they must pay out the grand-coalition value) lie in the core.
/// `out_in_core` receives 1 or 0; on a blocked result,
/// `out_blocking_mask` (nullable) receives the first blocking coalition in
/// ascending mask order as an agent bit mask.
///
/// # Safety
/// `game` must be a live handle; `payoffs` must point to `len` readable
/// doubles; `out_in_core` must be valid; `out_blocking_mask` may be null.
#[no_mangle]
pub unsafe extern "C" fn relia_check_membership(
    game: *const ReliaGame,
    payoffs: *const f64,
    len: usize,
    out_in_core: *mut i32,
    out_blocking_mask: *mut u64,
) -> ReliaStatus {
    guarded(|| {
        let (Some(game), false) = (unsafe { game_ref(game) }, out_in_core.is_null()) else {
            set_error("null pointer argument");
            return ReliaStatus::NullPointer;
        };
        if payoffs.is_null() {
            set_error("payoff array is null");
            return ReliaStatus::NullPointer;
        }
        let base = match expanded(game) {
            Ok(b) => b,
            Err(status) => return status,
        };
        let values = unsafe { std::slice::from_raw_parts(payoffs, len) }.to_vec();
        let payoff = match PayoffVector::new(values) {
            Ok(p) => p,
            Err(e) => return fail(&e),
        };
        match check_core_membership(&base.game, &payoff) {
            Ok(Membership::InCore) => {
                unsafe { *out_in_core = 1 };
                ReliaStatus::Ok
            }
            Ok(Membership::Blocked { coalition, .. }) => {
                unsafe {
                    *out_in_core = 0;
                    if !out_blocking_mask.is_null() {
                        *out_blocking_mask = coalition.mask();
                    }
                }
                ReliaStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}
