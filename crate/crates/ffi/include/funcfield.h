#ifndef FUNCFIELD_H
#define FUNCFIELD_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stdint.h>

/**
 * Result code of every fallible call.
 */
typedef enum FfStatus {
  FF_STATUS_OK = 0,
  FF_STATUS_NULL_POINTER = 1,
  FF_STATUS_INVALID_UTF8 = 2,
  FF_STATUS_PARSE = 3,
  /**
   * Mismatched fields or a non-prime characteristic.
   */
  FF_STATUS_FIELD = 4,
  FF_STATUS_DIVISION_BY_ZERO = 5,
  /**
   * Input outside an operation's domain.
   */
  FF_STATUS_DOMAIN = 6,
  /**
   * Singular curve, point off the curve, torsion, or a fiber inconsistency.
   */
  FF_STATUS_CURVE = 7,
  /**
   * Work needed exceeds the supplied limit.
   */
  FF_STATUS_BUDGET = 8,
  /**
   * Internal failure; the library state is unaffected.
   */
  FF_STATUS_PANIC = 9,
} FfStatus;

typedef enum FfArithOp {
  FF_ARITH_OP_ADD = 0,
  FF_ARITH_OP_SUB = 1,
  FF_ARITH_OP_MUL = 2,
  FF_ARITH_OP_DIV = 3,
} FfArithOp;

/**
 * Opaque Weierstrass curve `y^2 = x^3 + A x + B` over Q(z).
 */
typedef struct FfCurve FfCurve;

/**
 * Opaque rational function over Q or F_p.
 */
typedef struct FfRatFun FfRatFun;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. The pointer is
 * valid until the next call into this library on the same thread.
 */
const char *ff_last_error(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and must not be used afterwards.
 */
void ff_string_free(char *s);

/**
 * Parses `text` over Q (`characteristic` 0) or F_p.
 *
 * # Safety
 * `text` must be a nul-terminated string; `out` must be writable.
 */
enum FfStatus ff_ratfun_parse(const char *text, uint64_t characteristic, struct FfRatFun **out);

/**
 * Releases a handle. NULL is ignored.
 *
 * # Safety
 * `f` must come from this library and must not be used afterwards.
 */
void ff_ratfun_free(struct FfRatFun *f);

/**
 * Canonical text form, re-parseable by [`ff_ratfun_parse`].
 *
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum FfStatus ff_ratfun_to_string(const struct FfRatFun *f, char **out);

/**
 * `a op b` as a new handle.
 *
 * # Safety
 * `a`, `b` must be live handles; `out` must be writable.
 */
enum FfStatus ff_ratfun_arith(enum FfArithOp op,
                              const struct FfRatFun *a,
                              const struct FfRatFun *b,
                              struct FfRatFun **out);

/**
 * Derivative in z as a new handle.
 *
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum FfStatus ff_ratfun_derivative(const struct FfRatFun *f, struct FfRatFun **out);

/**
 * Degree of `f` as a map P^1 -> P^1.
 *
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum FfStatus ff_ratfun_map_degree(const struct FfRatFun *f, uint64_t *out);

/**
 * `deg(numerator) - deg(denominator)`; fails for zero.
 *
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum FfStatus ff_ratfun_deg_star(const struct FfRatFun *f, int64_t *out);

/**
 * Order of vanishing at `at`, which is `"inf"` or an exact rational.
 *
 * # Safety
 * `f` must be a live handle; `at` a nul-terminated string; `out` writable.
 */
enum FfStatus ff_ratfun_valuation(const struct FfRatFun *f, const char *at, int64_t *out);

/**
 * Whether `f` is a square, over the constants (`geometric` false) or over
 * their algebraic closure (`geometric` true).
 *
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum FfStatus ff_ratfun_is_square(const struct FfRatFun *f, bool geometric, bool *out);

/**
 * Whether `f = g'` for some rational function `g`.
 *
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum FfStatus ff_ratfun_is_derivative(const struct FfRatFun *f, bool *out);

/**
 * Pole divisor as a JSON array of `{"place", "mult"}` entries.
 *
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum FfStatus ff_ratfun_pole_divisor_json(const struct FfRatFun *f, char **out);

/**
 * Curve with coefficients `a`, `b` given as rational functions over Q.
 *
 * # Safety
 * `a`, `b` must be nul-terminated strings; `out` must be writable.
 */
enum FfStatus ff_curve_new(const char *a, const char *b, struct FfCurve **out);

/**
 * The curve `y^2 = x^3 + z x + 1`.
 *
 * # Safety
 * `out` must be writable.
 */
enum FfStatus ff_curve_default(struct FfCurve **out);

/**
 * Releases a handle. NULL is ignored.
 *
 * # Safety
 * `c` must come from this library and must not be used afterwards.
 */
void ff_curve_free(struct FfCurve *c);

/**
 * `n * (x, y)` as JSON: `{"x": ..., "y": ...}`, or `"O"` for the identity.
 *
 * # Safety
 * `c` must be a live handle; `x`, `y` nul-terminated strings; `out` writable.
 */
enum FfStatus ff_curve_multiply_json(const struct FfCurve *c,
                                     const char *x,
                                     const char *y,
                                     int64_t n,
                                     char **out);

/**
 * Bad fibers as a JSON array of `{"place", "count", "v_c4", "v_c6",
 * "v_delta", "type"}` objects.
 *
 * # Safety
 * `c` must be a live handle; `out` must be writable.
 */
enum FfStatus ff_curve_fibers_json(const struct FfCurve *c, char **out);

/**
 * Mordell-Weil rank from the Shioda-Tate formula.
 *
 * # Safety
 * `c` must be a live handle; `out` must be writable.
 */
enum FfStatus ff_curve_rank(const struct FfCurve *c, uint32_t *out);

/**
 * Exact value of the transcendental entire function at the rational `a`,
 * summing at most `limit` series terms.
 *
 * # Safety
 * `a` must be a nul-terminated string; `out` must be writable.
 */
enum FfStatus ff_eval_f(const char *a, uint64_t limit, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FUNCFIELD_H */
