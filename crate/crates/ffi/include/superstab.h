#ifndef SUPERSTAB_H
#define SUPERSTAB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Matrix families accepted by `ss_rmatrix_json`.
 */
typedef enum {
  SS_MATRIX_KIND_CLOSED = 0,
  SS_MATRIX_KIND_YANGIAN = 1,
  SS_MATRIX_KIND_YANGIAN_CHECK = 2,
} SsMatrixKind;

typedef enum {
  SS_STATUS_OK = 0,
  SS_STATUS_NULL_ARGUMENT = 1,
  SS_STATUS_INVALID_UTF8 = 2,
  SS_STATUS_PARSE = 3,
  SS_STATUS_DOMAIN = 4,
  SS_STATUS_GUARD = 5,
  SS_STATUS_NO_SOLUTION = 6,
  SS_STATUS_COMPUTATION = 7,
  SS_STATUS_PANIC = 8,
} SsStatus;

typedef struct SsStabClass SsStabClass;

typedef struct SsWeightFunction SsWeightFunction;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread. Empty after a success.
 * The pointer stays valid until the next call into this library on the
 * same thread.
 */
const char *ss_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void ss_string_free(char *s);

/**
 * Builds `W^(r)_{σ,I}`. `sigma` is one-line notation ("" or "id" for the
 * identity); `subset` is a comma list or "none".
 *
 * # Safety
 * String arguments must be null or NUL-terminated; `out` must be writable.
 */
SsStatus ss_weight_new(const char *r,
                       uint32_t n,
                       const char *sigma,
                       const char *subset,
                       SsWeightFunction **out);

/**
 * # Safety
 * `h` must be null or a handle from `ss_weight_new`, not yet freed.
 */
void ss_weight_free(SsWeightFunction *h);

/**
 * Human-readable sum of symmetrized terms.
 *
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
SsStatus ss_weight_to_string(const SsWeightFunction *h, char **out);

/**
 * `{ "r", "n", "k", "sigma", "subset", "terms": [...] }`.
 *
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
SsStatus ss_weight_to_json(const SsWeightFunction *h, char **out);

/**
 * Restriction to the fixed point `subset` as polynomial JSON.
 *
 * # Safety
 * `h` must be a live handle; `subset` NUL-terminated; `out` writable.
 */
SsStatus ss_weight_restrict_json(const SsWeightFunction *h, const char *subset, char **out);

/**
 * The class `κ^(r)_{σ,I}` of a weight function.
 *
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
SsStatus ss_stab_new(const SsWeightFunction *h, SsStabClass **out);

/**
 * # Safety
 * `h` must be null or a handle from `ss_stab_new`, not yet freed.
 */
void ss_stab_free(SsStabClass *h);

/**
 * `{ "subset-key": polynomial, ... }`.
 *
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
SsStatus ss_stab_to_json(const SsStabClass *h, char **out);

/**
 * `{ "A0": {"pass", "witness"}, ... }`; `all_pass` receives the conjunction.
 *
 * # Safety
 * `h` must be a live handle; `out` and `all_pass` must be writable.
 */
SsStatus ss_stab_axioms_json(const SsStabClass *h, bool *all_pass, char **out);

/**
 * Number of GKM violations of the class.
 *
 * # Safety
 * `h` must be a live handle; `violations` must be writable.
 */
SsStatus ss_stab_gkm_violations(const SsStabClass *h, uint32_t *violations);

/**
 * A 4×4 R-matrix of version `r` as JSON.
 *
 * # Safety
 * `r` must be NUL-terminated; `out` must be writable.
 */
SsStatus ss_rmatrix_json(const char *r, SsMatrixKind kind, char **out);

/**
 * The geometric R-matrix on `(C^2)^{⊗n}` for `(σ, a)`, `n ≤ 3`.
 *
 * # Safety
 * String arguments must be NUL-terminated; `out` must be writable.
 */
SsStatus ss_geometric_r_json(const char *r, uint32_t n, const char *sigma, uint32_t a, char **out);

/**
 * Yang-Baxter check for the closed-form (`yangian = false`) or Yangian
 * R-matrix of version `r`.
 *
 * # Safety
 * `r` must be NUL-terminated; `holds` must be writable.
 */
SsStatus ss_yang_baxter(const char *r, bool yangian, bool *holds);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SUPERSTAB_H */
