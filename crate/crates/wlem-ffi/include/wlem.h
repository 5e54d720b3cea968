#ifndef WLEM_H
#define WLEM_H

/* This file is generated by cbindgen from wlem-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every FFI call.
 */
typedef enum WlemStatus {
  WLEM_STATUS_OK = 0,
  /**
   * A required pointer argument was NULL.
   */
  WLEM_STATUS_NULL_ARGUMENT = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  WLEM_STATUS_INVALID_UTF8 = 2,
  /**
   * A formula failed to parse.
   */
  WLEM_STATUS_SYNTAX_ERROR = 3,
  /**
   * A JSON document failed to parse.
   */
  WLEM_STATUS_BAD_JSON = 4,
  /**
   * Structurally valid input violating a precondition (bad order, bad
   * bounds, out-of-range index, ...).
   */
  WLEM_STATUS_INVALID_INPUT = 5,
  /**
   * The evaluation cap was exhausted before the query finished.
   */
  WLEM_STATUS_BUDGET_EXHAUSTED = 6,
  /**
   * A panic was caught at the boundary; this is a bug in the library.
   */
  WLEM_STATUS_INTERNAL_ERROR = 7,
} WlemStatus;

/**
 * Opaque Brouwer-algebra handle.
 */
typedef struct WlemAlgebra WlemAlgebra;

/**
 * Opaque formula handle.
 */
typedef struct WlemFormula WlemFormula;

/**
 * Opaque frame handle; remembers declared world names for JSON output.
 */
typedef struct WlemFrame WlemFrame;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Version of the underlying library, as a static string.
 */
const char *wlem_version(void);

/**
 * Message for the most recent failure on this thread. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *wlem_last_error_message(void);

/**
 * Releases a string allocated by this library.
 *
 * # Safety
 * `s` must be NULL or a pointer previously returned through a `char **`
 * out parameter, not yet freed.
 */
void wlem_string_free(char *s);

/**
 * Parses a formula from text (`~`, `&`, `|`, `->`, variables `p1`, ...).
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be a valid pointer.
 */
enum WlemStatus wlem_formula_parse(const char *text, struct WlemFormula **out);

/**
 * The k-th testability schema (`k = 1` gives `~p1 | ~~p1`).
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum WlemStatus wlem_gen_phi(uint32_t k, struct WlemFormula **out);

/**
 * The k-th topwidth schema over `k + 1` variables.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum WlemStatus wlem_gen_sigma(uint32_t k, struct WlemFormula **out);

/**
 * Prints a formula with minimal parentheses.
 *
 * # Safety
 * `f` must be a live formula handle; `out` must be a valid pointer.
 */
enum WlemStatus wlem_formula_to_string(const struct WlemFormula *f, char **out);

/**
 * # Safety
 * `f` must be NULL or a live formula handle, not yet freed.
 */
void wlem_formula_free(struct WlemFormula *f);

/**
 * Loads a frame from its JSON form
 * `{"worlds": n | [names], "cover": [[i, j], ...], "root": r}`.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be a valid pointer.
 */
enum WlemStatus wlem_frame_from_json(const char *text, struct WlemFrame **out);

/**
 * Serializes a frame back to JSON (with its declared names, if any).
 *
 * # Safety
 * `frame` must be a live frame handle; `out` must be a valid pointer.
 */
enum WlemStatus wlem_frame_to_json(const struct WlemFrame *frame, char **out);

/**
 * Number of maximal worlds.
 *
 * # Safety
 * `frame` must be a live frame handle; `out` must be a valid pointer.
 */
enum WlemStatus wlem_frame_topwidth(const struct WlemFrame *frame, uint32_t *out);

/**
 * Checks a formula on every valuation of the frame. On success,
 * `*out_holds` reports validity and, when the formula fails and
 * `out_countermodel_json` is non-NULL, `*out_countermodel_json` receives
 * the first countermodel as JSON (NULL when the formula holds).
 *
 * # Safety
 * `frame` and `f` must be live handles; `out_holds` must be valid;
 * `out_countermodel_json` may be NULL.
 */
enum WlemStatus wlem_frame_check(const struct WlemFrame *frame,
                                 const struct WlemFormula *f,
                                 uint64_t cap,
                                 bool *out_holds,
                                 char **out_countermodel_json);

/**
 * # Safety
 * `frame` must be NULL or a live frame handle, not yet freed.
 */
void wlem_frame_free(struct WlemFrame *frame);

/**
 * Loads a Brouwer algebra from its JSON form
 * `{"elements": m, "leq": [[i, j], ...], "bottom": b, "top": t}`.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be a valid pointer.
 */
enum WlemStatus wlem_algebra_from_json(const char *text, struct WlemAlgebra **out);

/**
 * Serializes an algebra back to JSON.
 *
 * # Safety
 * `alg` must be a live algebra handle; `out` must be a valid pointer.
 */
enum WlemStatus wlem_algebra_to_json(const struct WlemAlgebra *alg, char **out);

/**
 * Does every assignment evaluate the formula to the bottom element?
 *
 * # Safety
 * `alg` and `f` must be live handles; `out` must be a valid pointer.
 */
enum WlemStatus wlem_algebra_satisfies(const struct WlemAlgebra *alg,
                                       const struct WlemFormula *f,
                                       uint64_t cap,
                                       bool *out);

/**
 * The open-set algebra of a frame.
 *
 * # Safety
 * `frame` must be a live frame handle; `out` must be a valid pointer.
 */
enum WlemStatus wlem_frame_to_algebra(const struct WlemFrame *frame, struct WlemAlgebra **out);

/**
 * The prime-ideal frame of an algebra with meet-irreducible bottom.
 *
 * # Safety
 * `alg` must be a live algebra handle; `out` must be a valid pointer.
 */
enum WlemStatus wlem_algebra_to_frame(const struct WlemAlgebra *alg, struct WlemFrame **out);

/**
 * # Safety
 * `alg` must be NULL or a live algebra handle, not yet freed.
 */
void wlem_algebra_free(struct WlemAlgebra *alg);

/**
 * The middle binomial coefficient `C(n, n/2)`; fails for `n > 67`, where
 * the value no longer fits in 64 bits.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum WlemStatus wlem_sperner_number(uint32_t n, uint64_t *out);

/**
 * The least `n >= 1` whose middle binomial coefficient reaches `k`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum WlemStatus wlem_min_topwidth_for(uint64_t k, uint32_t *out);

/**
 * Bounded membership of a formula in the logic of the k-th testability
 * schema. `*out_refuted` is set on success; when a countermodel exists and
 * `out_countermodel_json` is non-NULL it receives the witness as JSON
 * (NULL otherwise).
 *
 * # Safety
 * `f` must be a live formula handle; `out_refuted` must be valid;
 * `out_countermodel_json` may be NULL.
 */
enum WlemStatus wlem_decide(const struct WlemFormula *f,
                            uint64_t k,
                            uint32_t max_size,
                            uint64_t cap,
                            bool *out_refuted,
                            char **out_countermodel_json);

/**
 * Searches the enumerated frames (topwidth bound 0 means unbounded) for a
 * countermodel of the formula.
 *
 * # Safety
 * `f` must be a live formula handle; `out_found` must be valid;
 * `out_countermodel_json` may be NULL.
 */
enum WlemStatus wlem_countermodel_search(const struct WlemFormula *f,
                                         uint32_t max_size,
                                         uint32_t topwidth,
                                         uint64_t cap,
                                         bool *out_found,
                                         char **out_countermodel_json);

/**
 * Reads a countermodel of a testability schema (as JSON) and returns the
 * powerset antichain it certifies, as JSON.
 *
 * # Safety
 * `countermodel_json` must be a NUL-terminated string; `out` must be a
 * valid pointer.
 */
enum WlemStatus wlem_extract_antichain(const char *countermodel_json, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WLEM_H */
