#ifndef PIVOTLAB_H
#define PIVOTLAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * How a pivot run ended.
 */
typedef enum PlRunStatus {
  PL_RUN_STATUS_SINK_REACHED = 0,
  PL_RUN_STATUS_CYCLE_DETECTED = 1,
  PL_RUN_STATUS_STEP_LIMIT = 2,
} PlRunStatus;

/**
 * Result codes. Zero is success.
 */
typedef enum PlStatus {
  PL_STATUS_OK = 0,
  PL_STATUS_NULL_ARGUMENT = 1,
  PL_STATUS_INVALID_ARGUMENT = 2,
  PL_STATUS_PARSE = 3,
  PL_STATUS_DIMENSION = 4,
  PL_STATUS_NOT_P_MATRIX = 5,
  PL_STATUS_DEGENERATE = 6,
  PL_STATUS_CAPABILITY = 7,
  PL_STATUS_MALFORMED_ORIENTATION = 8,
  PL_STATUS_IO = 9,
  PL_STATUS_INTERNAL = 10,
  PL_STATUS_PANIC = 11,
} PlStatus;

/**
 * An LCP instance `(M, q)` with exact rational data.
 */
typedef struct PlInstance PlInstance;

/**
 * A unique-sink orientation oracle.
 */
typedef struct PlOrientation PlOrientation;

/**
 * The recorded visits of one pivot run.
 */
typedef struct PlTrace PlTrace;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL after a
 * successful one. Valid until the next `pl_*` call on this thread.
 */
const char *pl_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *pl_version(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void pl_string_free(char *s);

/**
 * The Morris instance of odd dimension `n >= 3`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum PlStatus pl_instance_morris(size_t n, struct PlInstance **out);

/**
 * Parses an instance from its JSON text (`{"n", "M", "q"}`).
 *
 * # Safety
 * `json` must be NUL-terminated and `out` valid.
 */
enum PlStatus pl_instance_from_json(const char *json, struct PlInstance **out);

/**
 * JSON text of `inst`; free with [`pl_string_free`].
 *
 * # Safety
 * `inst` and `out` must be valid.
 */
enum PlStatus pl_instance_to_json(const struct PlInstance *inst, char **out);

/**
 * Dimension of `inst`, or 0 if it is null.
 *
 * # Safety
 * `inst` must be null or valid.
 */
size_t pl_instance_dim(const struct PlInstance *inst);

/**
 * # Safety
 * `inst` must be null or come from this library, and not be freed twice.
 */
void pl_instance_free(struct PlInstance *inst);

/**
 * The orientation induced by `inst`. The instance is copied; it may be
 * freed afterwards.
 *
 * # Safety
 * `inst` and `out` must be valid.
 */
enum PlStatus pl_orientation_from_instance(const struct PlInstance *inst,
                                           struct PlOrientation **out);

/**
 * The Morris orientation, evaluated by its transducer.
 *
 * # Safety
 * `out` must be valid.
 */
enum PlStatus pl_orientation_morris(size_t n, struct PlOrientation **out);

/**
 * The uniform orientation with its sink at the all-ones vertex.
 *
 * # Safety
 * `out` must be valid.
 */
enum PlStatus pl_orientation_uniform(size_t n, struct PlOrientation **out);

/**
 * Parses an orientation table in the text format written by `export`.
 *
 * # Safety
 * `text` must be NUL-terminated and `out` valid.
 */
enum PlStatus pl_orientation_from_table(const char *text, struct PlOrientation **out);

/**
 * Table text of the whole orientation; free with [`pl_string_free`].
 *
 * # Safety
 * `o` and `out` must be valid.
 */
enum PlStatus pl_orientation_to_table(const struct PlOrientation *o, char **out);

/**
 * Dimension of `o`, or 0 if it is null.
 *
 * # Safety
 * `o` must be null or valid.
 */
size_t pl_orientation_dim(const struct PlOrientation *o);

/**
 * Outgoing coordinates at vertex `v` as a mask.
 *
 * # Safety
 * `o` and `out` must be valid.
 */
enum PlStatus pl_orientation_outmap(const struct PlOrientation *o, uint64_t v, uint64_t *out);

/**
 * Runs `checks` (comma-separated names such as `"uso,holt-klee"`) on the
 * tabulated orientation. `passed` receives 1 if all pass, else 0.
 *
 * # Safety
 * `o`, `checks` and `passed` must be valid.
 */
enum PlStatus pl_verify(const struct PlOrientation *o, const char *checks, int32_t *passed);

/**
 * # Safety
 * `o` must be null or come from this library, and not be freed twice.
 */
void pl_orientation_free(struct PlOrientation *o);

/**
 * Runs the rule named `rule` (`murty`, `murty-pi`, `randomized-murty`,
 * `random-edge`, `greedy-antipodal`, `greedy-subcube-sink`) from `start`.
 *
 * `pi` is a comma-separated permutation, required for `murty-pi` and
 * NULL otherwise. `max_steps == 0` selects the default limit `50 n^2`.
 *
 * # Safety
 * `o`, `rule` and `out` must be valid; `pi` must be NULL or
 * NUL-terminated.
 */
enum PlStatus pl_run(const struct PlOrientation *o,
                     const char *rule,
                     const char *pi,
                     uint64_t seed,
                     uint64_t start,
                     uint64_t max_steps,
                     struct PlTrace **out);

/**
 * Number of pivot steps, or 0 if `t` is null.
 *
 * # Safety
 * `t` must be null or valid.
 */
uint64_t pl_trace_steps(const struct PlTrace *t);

/**
 * Number of coordinate flips; differs from the step count only for the
 * greedy rules.
 *
 * # Safety
 * `t` must be null or valid.
 */
uint64_t pl_trace_flips(const struct PlTrace *t);

/**
 * Number of recorded visits (`steps + 1`).
 *
 * # Safety
 * `t` must be null or valid.
 */
size_t pl_trace_len(const struct PlTrace *t);

/**
 * # Safety
 * `t` and `out` must be valid.
 */
enum PlStatus pl_trace_status(const struct PlTrace *t, enum PlRunStatus *out);

/**
 * Vertex of visit `index`.
 *
 * # Safety
 * `t` and `out` must be valid.
 */
enum PlStatus pl_trace_vertex(const struct PlTrace *t, size_t index, uint64_t *out);

/**
 * Trace CSV; free with [`pl_string_free`].
 *
 * # Safety
 * `t` and `out` must be valid.
 */
enum PlStatus pl_trace_to_csv(const struct PlTrace *t, char **out);

/**
 * # Safety
 * `t` must be null or come from this library, and not be freed twice.
 */
void pl_trace_free(struct PlTrace *t);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PIVOTLAB_H */
