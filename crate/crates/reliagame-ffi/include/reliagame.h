/* C API for the reliagame solver library.
 *
 * Games are described by JSON strings in the same schema the `reliagame`
 * command-line tool reads. All functions return a ReliaStatus; on any
 * non-OK status, relia_last_error_message() holds a thread-local
 * description. Handles are immutable and safe to share across threads.
 *
 * Kept in sync with crates/reliagame-ffi/src/lib.rs by hand.
 */

#ifndef RELIAGAME_H
#define RELIAGAME_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ReliaStatus {
  RELIA_STATUS_OK = 0,
  RELIA_STATUS_NULL_POINTER = 1,
  RELIA_STATUS_INVALID_ARGUMENT = 2,
  RELIA_STATUS_CAP_EXCEEDED = 3,
  RELIA_STATUS_SOLVER_FAILURE = 4,
  RELIA_STATUS_PANIC = 5,
} ReliaStatus;

typedef enum ReliaCoreMethod {
  RELIA_CORE_METHOD_VETO = 0,
  RELIA_CORE_METHOD_TYPED = 1,
  RELIA_CORE_METHOD_BRUTE = 2,
  RELIA_CORE_METHOD_CONVEX = 3,
  RELIA_CORE_METHOD_AUTO = 4,
} ReliaCoreMethod;

typedef enum ReliaCoreVerdict {
  RELIA_CORE_VERDICT_NON_EMPTY = 0,
  RELIA_CORE_VERDICT_EMPTY = 1,
  RELIA_CORE_VERDICT_UNKNOWN = 2,
} ReliaCoreVerdict;

/* Opaque game handle. */
typedef struct ReliaGame ReliaGame;

/* Message for the most recent failure on this thread; never null, empty
 * when nothing failed yet. Valid until the next failing call on the same
 * thread. */
const char *relia_last_error_message(void);

/* Parse a JSON game description into a fresh handle. The caller owns the
 * handle and releases it with relia_game_free. */
ReliaStatus relia_game_from_json(const char *json, ReliaGame **out_game);

void relia_game_free(ReliaGame *game);

/* Number of agents in the per-agent view of the game. */
ReliaStatus relia_game_agent_count(const ReliaGame *game, uintptr_t *out_count);

/* Label of one agent as a freshly allocated string; release it with
 * relia_string_free. */
ReliaStatus relia_game_agent_label(const ReliaGame *game, uintptr_t agent,
                                   char **out_label);

void relia_string_free(char *s);

/* Exact reliability value of the coalition listing `len` agent indices in
 * `members` (may be null when len is 0). */
ReliaStatus relia_exact_value(const ReliaGame *game, const uintptr_t *members,
                              uintptr_t len, double *out_value);

/* Base-game value (0 or 1) of the same coalition. */
ReliaStatus relia_base_value(const ReliaGame *game, const uintptr_t *members,
                             uintptr_t len, int32_t *out_value);

/* Exact Shapley values; out_values must hold one double per agent. */
ReliaStatus relia_exact_shapley(const ReliaGame *game, double *out_values);

/* Smallest sample count guaranteeing an (epsilon, delta) estimate. */
ReliaStatus relia_plan_samples(double epsilon, double delta,
                               uint64_t *out_samples);

/* Monte Carlo Shapley estimates for every agent, `samples` draws per agent
 * from `seed`. shared_mode 0 draws independently per agent; nonzero reuses
 * one permutation per sample for all agents. out_points must hold one
 * double per agent; out_epsilon (nullable) receives the Hoeffding
 * half-width for `delta`. Identical inputs give identical outputs for any
 * thread count. */
ReliaStatus relia_estimate_shapley(const ReliaGame *game, uint64_t samples,
                                   uint64_t seed, double delta,
                                   uint8_t shared_mode, double *out_points,
                                   double *out_epsilon);

/* Decide the core. On a NON_EMPTY verdict, out_imputation (nullable,
 * agent-count doubles) receives a core imputation. AUTO tries veto, then
 * the typed LP for typed games, then brute force. */
ReliaStatus relia_core_solve(const ReliaGame *game, ReliaCoreMethod method,
                             ReliaCoreVerdict *out_verdict,
                             double *out_imputation);

/* Check whether nonnegative payoffs (len must equal the agent count, and
 * they must pay out the grand-coalition value) lie in the core.
 * out_in_core receives 1 or 0; on a blocked result out_blocking_mask
 * (nullable) receives the first blocking coalition as an agent bit mask. */
ReliaStatus relia_check_membership(const ReliaGame *game,
                                   const double *payoffs, uintptr_t len,
                                   int32_t *out_in_core,
                                   uint64_t *out_blocking_mask);

#ifdef __cplusplus
}
#endif

#endif /* RELIAGAME_H */
