/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef CBMW_H
#define CBMW_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes. `Ok` is zero.
typedef enum CbmwStatus {
  CBMW_STATUS_OK = 0,
  CBMW_STATUS_NULL_POINTER = 1,
  CBMW_STATUS_INVALID_UTF8 = 2,
  CBMW_STATUS_PARSE = 3,
  CBMW_STATUS_INVALID_ARGUMENT = 4,
  CBMW_STATUS_OUT_OF_RANGE = 5,
  CBMW_STATUS_EXCLUDED_CONFIGURATION = 6,
  CBMW_STATUS_Q_MINUS_Q_INV_VANISHES = 7,
  CBMW_STATUS_DIVISION_BY_ZERO = 8,
  CBMW_STATUS_INTERNAL = 9,
  CBMW_STATUS_PANIC = 10,
} CbmwStatus;

// Table selector for [`cbmw_table`].
typedef enum CbmwTable {
  CBMW_TABLE_MU = 0,
  CBMW_TABLE_XI = 1,
  CBMW_TABLE_GAMMA = 2,
  CBMW_TABLE_A_COEFFS = 3,
} CbmwTable;

// Selects one verdict of a report.
typedef enum CbmwVerdict {
  CBMW_VERDICT_GROUND_RING = 0,
  CBMW_VERDICT_WEAK = 1,
  CBMW_VERDICT_WILCOX_YU = 2,
  CBMW_VERDICT_U_ADMISSIBLE = 3,
} CbmwVerdict;

// Ground-ring parameters with deltas up to a truncation.
typedef struct CbmwInstance CbmwInstance;

// Verdicts of one check.
typedef struct CbmwReport CbmwReport;

// Summary of a randomized equivalence run.
typedef struct CbmwVerifySummary {
  size_t samples;
  size_t forward_passed;
  size_t perturbations;
  size_t perturbations_detected;
  size_t morphisms_invariant;
  size_t symbolic_families;
  size_t symbolic_passed;
  // Nonzero when every check held.
  int32_t all_passed;
} CbmwVerifySummary;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, empty after a success.
// Valid until the next call on the same thread.
const char *cbmw_last_error_message(void);

// # Safety
// `s` is null or came from this library.
void cbmw_string_free(char *s);

// Builds the u-admissible instance for `u[0..r]` and `q`. `rho_choice` is
// one of `minus-a0`, `plus-a0`, `q-inv-a0`, `minus-q-a0`, or null for the
// normalized root. Negative `max_a` or `neg_depth` select the defaults.
//
// # Safety
// `u` points to `r` NUL-terminated strings; `q` is a NUL-terminated string;
// `out` is writable.
enum CbmwStatus cbmw_instance_generate(size_t r,
                                       const char *const *u,
                                       const char *q,
                                       const char *rho_choice,
                                       int64_t max_a,
                                       int64_t neg_depth,
                                       struct CbmwInstance **out);

// Parses a parameter file (the JSON written by `cbmw gen`).
//
// # Safety
// `json` is a NUL-terminated string; `out` is writable.
enum CbmwStatus cbmw_instance_from_json(const char *json, struct CbmwInstance **out);

// # Safety
// `instance` is a live handle; `out` is writable.
enum CbmwStatus cbmw_instance_to_json(const struct CbmwInstance *instance, char **out);

// Rank `r`, or 0 for a null handle.
//
// # Safety
// `instance` is null or a live handle.
size_t cbmw_instance_rank(const struct CbmwInstance *instance);

// `delta_a` for `-neg_depth <= a <= max_a`.
//
// # Safety
// `instance` is a live handle; `out` is writable.
enum CbmwStatus cbmw_instance_delta(const struct CbmwInstance *instance, int64_t a, char **out);

// Replaces `delta_a` for `0 <= a <= max_a` and recomputes the negative deltas.
//
// # Safety
// `instance` is a live handle; `value` is a NUL-terminated string.
enum CbmwStatus cbmw_instance_set_delta(struct CbmwInstance *instance, size_t a, const char *value);

// # Safety
// `instance` is null or a live handle, not used afterwards.
void cbmw_instance_free(struct CbmwInstance *instance);

// Runs every check up to the instance's own truncation.
//
// # Safety
// `instance` is a live handle; `out` is writable.
enum CbmwStatus cbmw_check(const struct CbmwInstance *instance, struct CbmwReport **out);

// 1 if the verdict passed, 0 if it failed, -1 for a null handle.
//
// # Safety
// `report` is null or a live handle.
int32_t cbmw_report_passed(const struct CbmwReport *report, enum CbmwVerdict which);

// 1 if every verdict passed, 0 otherwise, -1 for a null handle.
//
// # Safety
// `report` is null or a live handle.
int32_t cbmw_report_all_passed(const struct CbmwReport *report);

// The report file written by `cbmw check`.
//
// # Safety
// `report` is a live handle; `out` is writable.
enum CbmwStatus cbmw_report_to_json(const struct CbmwReport *report, char **out);

// # Safety
// `report` is null or a live handle, not used afterwards.
void cbmw_report_free(struct CbmwReport *report);

// Newline-separated `name_index = value` lines. Negative `max` selects the
// default `2r + 8`.
//
// # Safety
// `out` is writable.
enum CbmwStatus cbmw_table(size_t r, enum CbmwTable what, int64_t max, char **out);

// Randomized equivalence run with default truncation and the symbolic
// suite.
//
// # Safety
// `out` is writable.
enum CbmwStatus cbmw_verify(size_t r, size_t samples, uint64_t seed, struct CbmwVerifySummary *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CBMW_H */
