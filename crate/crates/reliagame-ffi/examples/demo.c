/* Minimal C client: load the five-edge bridge fixture, print exact values,
 * Shapley estimates, and the core verdict.
 *
 * Build (from the repository root, after `cargo build --release`):
 *
 *   cc crates/reliagame-ffi/examples/demo.c \
 *      -Icrates/reliagame-ffi/include \
 *      target/release/libreliagame_ffi.a -lpthread -ldl -lm -o demo
 */

#include <stdio.h>
#include <stdlib.h>

#include "reliagame.h"

static const char *BRIDGE_JSON =
    "{\"game\":\"network\",\"format_version\":1,"
    "\"vertices\":[\"s\",\"u\",\"w\",\"t\"],\"source\":\"s\",\"target\":\"t\","
    "\"edges\":[{\"label\":\"a\",\"from\":\"s\",\"to\":\"u\"},"
    "{\"label\":\"b\",\"from\":\"u\",\"to\":\"t\"},"
    "{\"label\":\"c\",\"from\":\"s\",\"to\":\"w\"},"
    "{\"label\":\"d\",\"from\":\"w\",\"to\":\"t\"},"
    "{\"label\":\"e\",\"from\":\"u\",\"to\":\"w\"}],"
    "\"survival\":[0.5,0.1,0.1,0.5,0.5]}";

static void require(ReliaStatus status, const char *what) {
  if (status != RELIA_STATUS_OK) {
    fprintf(stderr, "%s failed (%d): %s\n", what, (int)status,
            relia_last_error_message());
    exit(1);
  }
}

int main(void) {
  ReliaGame *game = NULL;
  require(relia_game_from_json(BRIDGE_JSON, &game), "parse");

  uintptr_t n = 0;
  require(relia_game_agent_count(game, &n), "agent count");
  printf("agents: %zu\n", (size_t)n);

  uintptr_t ab[2] = {0, 1};
  double value = 0.0;
  require(relia_exact_value(game, ab, 2, &value), "exact value");
  printf("v({a,b}) = %.12f\n", value);

  double *phi = calloc(n, sizeof(double));
  require(relia_exact_shapley(game, phi), "exact shapley");
  double total = 0.0;
  for (uintptr_t i = 0; i < n; i++) {
    char *label = NULL;
    require(relia_game_agent_label(game, i, &label), "label");
    printf("phi[%s] = %.12f\n", label, phi[i]);
    total += phi[i];
    relia_string_free(label);
  }
  printf("total = %.12f\n", total);
  free(phi);

  ReliaCoreVerdict verdict;
  double *imputation = calloc(n, sizeof(double));
  require(relia_core_solve(game, RELIA_CORE_METHOD_AUTO, &verdict, imputation),
          "core");
  printf("core verdict: %d\n", (int)verdict);
  free(imputation);

  relia_game_free(game);
  return 0;
}
