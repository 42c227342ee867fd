#ifndef HECKE_H
#define HECKE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every call.
typedef enum HeckeStatus {
  HECKE_STATUS_OK = 0,
  HECKE_STATUS_NULL_POINTER = 1,
  HECKE_STATUS_INVALID_UTF8 = 2,
  HECKE_STATUS_UNKNOWN_ID = 3,
  HECKE_STATUS_INVALID_ARGUMENT = 4,
  // Exponent outside the known range of a series.
  HECKE_STATUS_OUT_OF_RANGE = 5,
  // Coefficient does not fit the requested integer type.
  HECKE_STATUS_OVERFLOW = 6,
  // The core engine reported an error (non-unit, pole, divergence, ...).
  HECKE_STATUS_COMPUTATION = 7,
  HECKE_STATUS_PANIC = 8,
} HeckeStatus;

// Outcome of a verification.
typedef enum HeckeOutcome {
  HECKE_OUTCOME_PASS = 0,
  HECKE_OUTCOME_FAIL = 1,
  HECKE_OUTCOME_SKIPPED = 2,
} HeckeOutcome;

// Which side of an identity to expand.
typedef enum HeckeSide {
  HECKE_SIDE_LHS = 0,
  HECKE_SIDE_RHS = 1,
} HeckeSide;

// Opaque verification report.
typedef struct HeckeReport HeckeReport;

// Opaque truncated Laurent series in `q^(1/2)`.
typedef struct HeckeSeries HeckeSeries;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread; empty after a success.
// The pointer stays valid until the next call on the same thread.
const char *hecke_last_error(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void hecke_string_free(char *s);

// Number of catalog identities.
size_t hecke_identity_count(void);

// Id of catalog entry `index` as a static string, or null when out of range.
const char *hecke_identity_id(size_t index);

// Verifies a catalog identity below `q^order`.
//
// # Safety
// `id` must be a valid C string; `out` must be writable.
enum HeckeStatus hecke_verify_identity(const char *id, int64_t order, struct HeckeReport **out);

// Checks a truncated theorem at index `m` below `q^order`.
//
// # Safety
// `id` must be a valid C string; `out` must be writable.
enum HeckeStatus hecke_verify_truncated(const char *id,
                                        int64_t m,
                                        int64_t order,
                                        struct HeckeReport **out);

// # Safety
// `report` must be a live handle.
enum HeckeStatus hecke_report_outcome(const struct HeckeReport *report, enum HeckeOutcome *out);

// First disagreement of a failed report. Coefficients are decimal strings
// the caller frees.
//
// # Safety
// `report` must be a live handle; the out-pointers must be writable.
enum HeckeStatus hecke_report_mismatch(const struct HeckeReport *report,
                                       int64_t *exponent_halves,
                                       char **lhs,
                                       char **rhs);

// The report as one JSON object; free with [`hecke_string_free`].
//
// # Safety
// `report` must be a live handle; `out` must be writable.
enum HeckeStatus hecke_report_json(const struct HeckeReport *report, char **out);

// # Safety
// `report` must be null or a live handle, not used afterwards.
void hecke_report_free(struct HeckeReport *report);

// Expands one side of a catalog identity below `q^order`.
//
// # Safety
// `id` must be a valid C string; `out` must be writable.
enum HeckeStatus hecke_identity_expand(const char *id,
                                       enum HeckeSide side,
                                       int64_t order,
                                       struct HeckeSeries **out);

// Truncation bound in half-units, or `INT64_MAX` for an exact series.
//
// # Safety
// `series` must be a live handle.
enum HeckeStatus hecke_series_trunc_halves(const struct HeckeSeries *series, int64_t *out);

// Coefficient of `q^(exponent_halves/2)` as an `int64_t`.
//
// # Safety
// `series` must be a live handle; `out` must be writable.
enum HeckeStatus hecke_series_coeff(const struct HeckeSeries *series,
                                    int64_t exponent_halves,
                                    int64_t *out);

// Coefficient as a decimal string; free with [`hecke_string_free`].
//
// # Safety
// `series` must be a live handle; `out` must be writable.
enum HeckeStatus hecke_series_coeff_string(const struct HeckeSeries *series,
                                           int64_t exponent_halves,
                                           char **out);

// # Safety
// `series` must be null or a live handle, not used afterwards.
void hecke_series_free(struct HeckeSeries *series);

// Number of partitions of `n` in a family (`"ppe"`, `"pp"` or `"pepod"`),
// as a decimal string freed with [`hecke_string_free`].
//
// # Safety
// `family` must be a valid C string; `out` must be writable.
enum HeckeStatus hecke_partition_count(const char *family, int64_t n, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HECKE_H */
