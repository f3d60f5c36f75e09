/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef DIRORBIT_H
#define DIRORBIT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum DirorbitOp {
  DIRORBIT_OP_ADD = 0,
  DIRORBIT_OP_SUB = 1,
  DIRORBIT_OP_MUL = 2,
  DIRORBIT_OP_DIV = 3,
} DirorbitOp;

typedef enum DirorbitParamRounding {
  DIRORBIT_PARAM_ROUNDING_STORED = 0,
  DIRORBIT_PARAM_ROUNDING_DIRECTED = 1,
} DirorbitParamRounding;

typedef enum DirorbitRounding {
  DIRORBIT_ROUNDING_NEAREST = 0,
  DIRORBIT_ROUNDING_TOWARD_NEG_INF = 1,
  DIRORBIT_ROUNDING_TOWARD_POS_INF = 2,
} DirorbitRounding;

typedef enum DirorbitScheme {
  DIRORBIT_SCHEME_NEAREST = 0,
  DIRORBIT_SCHEME_LEMMA1 = 1,
} DirorbitScheme;

/**
 * How the text passed to `dirorbit_orbit_run` is read.
 */
typedef enum DirorbitStart {
  /**
   * decimal numeral or `p/q`
   */
  DIRORBIT_START_VALUE = 0,
  /**
   * `1/d` for a decimal numeral `d`
   */
  DIRORBIT_START_RECIPROCAL = 1,
} DirorbitStart;

typedef enum DirorbitStatus {
  DIRORBIT_STATUS_OK = 0,
  DIRORBIT_STATUS_OVERFLOW = 1,
  DIRORBIT_STATUS_INVALID = 2,
  DIRORBIT_STATUS_DIV_BY_ZERO = 3,
  DIRORBIT_STATUS_RESIDUAL_UNDERFLOW = 4,
  DIRORBIT_STATUS_PARSE_ERROR = 5,
  DIRORBIT_STATUS_NONFINITE_ORBIT = 6,
  DIRORBIT_STATUS_CAP_EXCEEDED = 7,
  DIRORBIT_STATUS_LENGTH_MISMATCH = 8,
  DIRORBIT_STATUS_CONFIG_ERROR = 9,
  DIRORBIT_STATUS_NULL_POINTER = 10,
  DIRORBIT_STATUS_OUT_OF_RANGE = 11,
  DIRORBIT_STATUS_BUFFER_TOO_SMALL = 12,
  DIRORBIT_STATUS_PANIC = 13,
} DirorbitStatus;

/**
 * Opaque map handle.
 */
typedef struct DirorbitMap DirorbitMap;

/**
 * Opaque pseudo-orbit handle.
 */
typedef struct DirorbitOrbit DirorbitOrbit;

/**
 * Opaque error-series handle.
 */
typedef struct DirorbitSeries DirorbitSeries;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty if none. Valid
 * until the next failing call on the same thread.
 */
const char *dirorbit_last_error_message(void);

/**
 * Stable lowercase name of a status code.
 */
const char *dirorbit_status_name(enum DirorbitStatus status);

/**
 * `a op b` correctly rounded in `rounding`.
 *
 * # Safety
 * `out` must be valid for writing one double.
 */
enum DirorbitStatus dirorbit_dir_op(enum DirorbitOp op,
                                    double a,
                                    double b,
                                    enum DirorbitRounding rounding,
                                    double *out);

/**
 * # Safety
 * `primary` and `residual` must be valid for writing one double each.
 */
enum DirorbitStatus dirorbit_two_sum(double a, double b, double *primary, double *residual);

/**
 * # Safety
 * `primary` and `residual` must be valid for writing one double each.
 */
enum DirorbitStatus dirorbit_two_product(double a, double b, double *primary, double *residual);

double dirorbit_next_up(double x);

double dirorbit_next_down(double x);

/**
 * # Safety
 * `out` must be valid for writing one double.
 */
enum DirorbitStatus dirorbit_average2(double a, double b, double *out);

/**
 * Writes 16 lowercase hex digits and a NUL; `len` must be at least 17.
 *
 * # Safety
 * `buf` must be valid for writing `len` bytes.
 */
enum DirorbitStatus dirorbit_to_hex(double x, char *buf, size_t len);

/**
 * # Safety
 * `hex` must be a NUL-terminated string; `out` valid for one double.
 */
enum DirorbitStatus dirorbit_from_hex(const char *hex, double *out);

/**
 * # Safety
 * `numeral` must be a NUL-terminated string; `out` valid for one double.
 */
enum DirorbitStatus dirorbit_parse_decimal(const char *numeral,
                                           enum DirorbitRounding rounding,
                                           double *out);

/**
 * Creates a logistic map with decimal parameter `r`.
 *
 * # Safety
 * `r` must be a NUL-terminated string; `out` valid for one pointer.
 */
enum DirorbitStatus dirorbit_map_new_logistic(const char *r,
                                              enum DirorbitParamRounding param,
                                              struct DirorbitMap **out);

/**
 * # Safety
 * `map` must be null or a handle from `dirorbit_map_new_logistic` not yet freed.
 */
void dirorbit_map_free(struct DirorbitMap *map);

/**
 * One map step with every operation rounded in `rounding`.
 *
 * # Safety
 * `map` must be a live handle; `out` valid for one double.
 */
enum DirorbitStatus dirorbit_map_eval(const struct DirorbitMap *map,
                                      double x,
                                      enum DirorbitRounding rounding,
                                      double *out);

/**
 * Runs `n` steps of `scheme` from the start described by `start`/`x0`.
 *
 * # Safety
 * `map` must be a live handle, `x0` a NUL-terminated string and `out`
 * valid for one pointer.
 */
enum DirorbitStatus dirorbit_orbit_run(const struct DirorbitMap *map,
                                       enum DirorbitStart start,
                                       const char *x0,
                                       enum DirorbitScheme scheme,
                                       size_t n,
                                       struct DirorbitOrbit **out);

/**
 * # Safety
 * `orbit` must be null or a handle from `dirorbit_orbit_run` not yet freed.
 */
void dirorbit_orbit_free(struct DirorbitOrbit *orbit);

/**
 * Number of stored values (`n + 1`); 0 for a null handle.
 *
 * # Safety
 * `orbit` must be null or a live handle.
 */
size_t dirorbit_orbit_len(const struct DirorbitOrbit *orbit);

/**
 * # Safety
 * `orbit` must be a live handle; `out` valid for one double.
 */
enum DirorbitStatus dirorbit_orbit_value(const struct DirorbitOrbit *orbit,
                                         size_t index,
                                         double *out);

/**
 * Sets `found` to 1 and fills `onset`/`value` if the orbit ends in a run
 * of at least `window` identical values, else sets `found` to 0.
 *
 * # Safety
 * `orbit` must be a live handle; out-pointers valid for writing.
 */
enum DirorbitStatus dirorbit_orbit_fixed_point(const struct DirorbitOrbit *orbit,
                                               size_t window,
                                               int *found,
                                               size_t *onset,
                                               double *value);

/**
 * Error series of `orbit` against its exact orbit; `cap` bounds the step
 * count (0 means the default of 64).
 *
 * # Safety
 * `orbit` must be a live handle; `out` valid for one pointer.
 */
enum DirorbitStatus dirorbit_error_series(const struct DirorbitOrbit *orbit,
                                          size_t cap,
                                          struct DirorbitSeries **out);

/**
 * # Safety
 * `series` must be null or a handle from `dirorbit_error_series` not yet freed.
 */
void dirorbit_series_free(struct DirorbitSeries *series);

/**
 * # Safety
 * `series` must be null or a live handle.
 */
size_t dirorbit_series_len(const struct DirorbitSeries *series);

/**
 * `log10` of entry `index`; `-INFINITY` for an exact zero.
 *
 * # Safety
 * `series` must be a live handle; `out` valid for one double.
 */
enum DirorbitStatus dirorbit_series_log10(const struct DirorbitSeries *series,
                                          size_t index,
                                          double *out);

/**
 * Entry `index` as six-significant-digit scientific text.
 *
 * # Safety
 * `series` must be a live handle; `buf` valid for writing `len` bytes.
 */
enum DirorbitStatus dirorbit_series_display(const struct DirorbitSeries *series,
                                            size_t index,
                                            char *buf,
                                            size_t len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DIRORBIT_H */
