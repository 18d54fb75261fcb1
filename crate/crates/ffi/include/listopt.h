#ifndef LISTOPT_H
#define LISTOPT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ListoptStatus {
  LISTOPT_STATUS_OK = 0,
  LISTOPT_STATUS_NULL_POINTER = 1,
  LISTOPT_STATUS_INVALID_UTF8 = 2,
  /**
   * Bad input: unknown item, duplicate label, index out of range.
   */
  LISTOPT_STATUS_DOMAIN = 3,
  /**
   * A size guard was exceeded.
   */
  LISTOPT_STATUS_CONFIG = 4,
  /**
   * Unknown oracle kind or policy name.
   */
  LISTOPT_STATUS_USAGE = 5,
  /**
   * A panic was caught at the boundary.
   */
  LISTOPT_STATUS_INTERNAL = 6,
} ListoptStatus;

/**
 * A list in its initial order plus a request sequence.
 */
typedef struct ListoptProblem ListoptProblem;

/**
 * A solved schedule.
 */
typedef struct ListoptSchedule ListoptSchedule;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a comma-separated list (initial order) and comma-separated requests.
 *
 * # Safety
 * `list_csv` and `requests_csv` must be NUL-terminated strings; `out` must be writable.
 */
enum ListoptStatus listopt_problem_new(const char *list_csv,
                                       const char *requests_csv,
                                       struct ListoptProblem **out);

/**
 * Overrides the list-size guards. Zero leaves a guard unchanged.
 *
 * # Safety
 * `problem` must come from [`listopt_problem_new`] and not be freed.
 */
enum ListoptStatus listopt_problem_set_max_l(struct ListoptProblem *problem,
                                             size_t solver_max_l,
                                             size_t oracle_max_l);

/**
 * Number of items and of requests.
 *
 * # Safety
 * `problem` must be a live handle; `out_l` and `out_m` must be writable.
 */
enum ListoptStatus listopt_problem_size(const struct ListoptProblem *problem,
                                        size_t *out_l,
                                        size_t *out_m);

/**
 * # Safety
 * `problem` must be null or a handle from [`listopt_problem_new`], freed at most once.
 */
void listopt_problem_free(struct ListoptProblem *problem);

/**
 * Computes the optimal element-transfer schedule.
 *
 * # Safety
 * `problem` must be a live handle; `out` must be writable.
 */
enum ListoptStatus listopt_solve(const struct ListoptProblem *problem,
                                 struct ListoptSchedule **out);

/**
 * Total cost, or 0 for a null handle.
 *
 * # Safety
 * `schedule` must be null or a live handle.
 */
uint64_t listopt_schedule_total(const struct ListoptSchedule *schedule);

/**
 * Number of requests the schedule serves, or 0 for a null handle.
 *
 * # Safety
 * `schedule` must be null or a live handle.
 */
size_t listopt_schedule_len(const struct ListoptSchedule *schedule);

/**
 * 1-based target position of the request at 0-based index `i`.
 *
 * # Safety
 * `schedule` must be a live handle; `out_target` must be writable.
 */
enum ListoptStatus listopt_schedule_target(const struct ListoptSchedule *schedule,
                                           size_t i,
                                           size_t *out_target);

/**
 * Initial ordering as 0-based item indices; writes `l` entries to `out_order`.
 *
 * # Safety
 * `schedule` must be a live handle; `out_order` must have room for `len` entries.
 */
enum ListoptStatus listopt_schedule_initial(const struct ListoptSchedule *schedule,
                                            size_t *out_order,
                                            size_t len);

/**
 * Schedule as JSON (initial ordering, per-request records, total). Free with
 * [`listopt_string_free`].
 *
 * # Safety
 * `schedule` must be a live handle; `out` must be writable.
 */
enum ListoptStatus listopt_schedule_to_json(const struct ListoptSchedule *schedule, char **out);

/**
 * # Safety
 * `schedule` must be null or a handle from [`listopt_solve`], freed at most once.
 */
void listopt_schedule_free(struct ListoptSchedule *schedule);

/**
 * Brute-force optimum; `kind` is `all`, `paid-free` or `subset`.
 *
 * # Safety
 * `problem` must be a live handle, `kind` a NUL-terminated string, `out_total` writable.
 */
enum ListoptStatus listopt_oracle(const struct ListoptProblem *problem,
                                  const char *kind,
                                  uint64_t *out_total);

/**
 * Online policy cost; `policy` is `mtf`, `transpose` or `frequency-count`.
 *
 * # Safety
 * `problem` must be a live handle, `policy` a NUL-terminated string, `out_total` writable.
 */
enum ListoptStatus listopt_online(const struct ListoptProblem *problem,
                                  const char *policy,
                                  uint64_t *out_total);

/**
 * Message for the last failed call on this thread ("" after a success). The pointer
 * stays valid until the next library call on the same thread.
 */
const char *listopt_last_error_message(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, freed at most once.
 */
void listopt_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LISTOPT_H */
