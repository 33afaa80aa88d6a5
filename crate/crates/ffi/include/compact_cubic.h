#ifndef COMPACT_CUBIC_H
#define COMPACT_CUBIC_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes. Zero is success.
typedef enum CcStatus {
  CC_STATUS_OK = 0,
  CC_STATUS_NULL_POINTER = 1,
  CC_STATUS_TOO_FEW_NODES = 2,
  CC_STATUS_NON_MONOTONE = 3,
  CC_STATUS_LENGTH_MISMATCH = 4,
  CC_STATUS_NON_FINITE = 5,
  CC_STATUS_INVALID_SCHEME = 6,
  CC_STATUS_NON_UNIFORM = 7,
  CC_STATUS_SINGULAR = 8,
  CC_STATUS_OUT_OF_DOMAIN = 9,
  CC_STATUS_BUFFER_TOO_SMALL = 10,
  CC_STATUS_INVALID_ARGUMENT = 11,
  CC_STATUS_PANIC = 12,
  CC_STATUS_OTHER = 13,
} CcStatus;

// Interpolation method.
typedef enum CcMethod {
  CC_METHOD_SPLINE_NATURAL = 0,
  // Uses the `dleft` / `dright` arguments as end slopes.
  CC_METHOD_SPLINE_CLAMPED = 1,
  CC_METHOD_SPLINE_NOT_A_KNOT = 2,
  CC_METHOD_COMPACT4 = 3,
  // Compact interpolant with five-point edges; uniform meshes only.
  CC_METHOD_COMPACT_C = 4,
} CcMethod;

// Which piece to use for a second derivative evaluated exactly at a node.
typedef enum CcSide {
  CC_SIDE_LEFT = 0,
  CC_SIDE_RIGHT = 1,
} CcSide;

// Opaque interpolant handle.
typedef struct CcInterpolant CcInterpolant;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Builds an interpolant through `(x[i], y[i])`, `i < len`.
//
// `method` is a `CcMethod` value; `dleft` and `dright` are read only for
// `CC_METHOD_SPLINE_CLAMPED`. On success `*out` owns a handle to be
// released with `cc_interpolant_free`.
//
// # Safety
// `x` and `y` must point to `len` doubles; `out` must be writable.
enum CcStatus cc_interpolant_new(const double *x,
                                 const double *y,
                                 size_t len,
                                 int32_t method,
                                 double dleft,
                                 double dright,
                                 struct CcInterpolant **out);

// Releases a handle. Null is ignored.
//
// # Safety
// `h` must be null or a handle from `cc_interpolant_new` not yet freed.
void cc_interpolant_free(struct CcInterpolant *h);

// Number of nodes, or 0 for a null handle.
//
// # Safety
// `h` must be null or a live handle.
size_t cc_interpolant_len(const struct CcInterpolant *h);

// 1-norm condition number of the slope system solved at construction.
//
// # Safety
// `h` must be a live handle; `out` writable.
enum CcStatus cc_interpolant_condition(const struct CcInterpolant *h, double *out);

// Value at `t`.
//
// # Safety
// `h` must be a live handle; `out` writable.
enum CcStatus cc_interpolant_eval(const struct CcInterpolant *h, double t, double *out);

// First derivative at `t`.
//
// # Safety
// `h` must be a live handle; `out` writable.
enum CcStatus cc_interpolant_eval_derivative(const struct CcInterpolant *h, double t, double *out);

// Second derivative at `t`; `side` (a `CcSide` value) picks the piece when
// `t` is a node.
//
// # Safety
// `h` must be a live handle; `out` writable.
enum CcStatus cc_interpolant_eval_second_derivative(const struct CcInterpolant *h,
                                                    double t,
                                                    int32_t side,
                                                    double *out);

// Copies the nodal slopes into `out` (`cap >= cc_interpolant_len(h)`).
//
// # Safety
// `h` must be a live handle; `out` must hold `cap` doubles.
enum CcStatus cc_interpolant_slopes(const struct CcInterpolant *h, double *out, size_t cap);

// Copies local-monomial coefficients, four per piece in increasing powers
// of `t - x[k]`, into `out` (`cap >= 4 * (len - 1)`).
//
// # Safety
// `h` must be a live handle; `out` must hold `cap` doubles.
enum CcStatus cc_interpolant_ppform_coefs(const struct CcInterpolant *h, double *out, size_t cap);

// Fourth-order compact derivatives at the nodes, written to `out[0..len]`.
// `method` must be `CC_METHOD_COMPACT4` or `CC_METHOD_COMPACT_C`.
//
// # Safety
// `x`, `y` must point to `len` doubles and `out` to `len` writable doubles.
enum CcStatus cc_compact_derivatives(const double *x,
                                     const double *y,
                                     size_t len,
                                     int32_t method,
                                     double *out);

// Static description of a status code.
const char *cc_status_message(enum CcStatus status);

// Message for the most recent failure on this thread. The pointer stays
// valid until the next failing call on the same thread.
const char *cc_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* COMPACT_CUBIC_H */
