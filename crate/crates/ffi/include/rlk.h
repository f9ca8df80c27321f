#ifndef RLK_H
#define RLK_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum RlkStatus {
  /**
   * The call succeeded; for checks, the identities hold.
   */
  RLK_OK = 0,
  /**
   * Malformed JSON, bad field or scalar, or mismatched dimensions.
   */
  RLK_INPUT_ERROR = 1,
  /**
   * A check ran and found a violated identity.
   */
  RLK_VIOLATED = 2,
  /**
   * A required pointer argument was null.
   */
  RLK_NULL_POINTER = 3,
  /**
   * The inputs were well formed but a mathematical precondition failed.
   */
  RLK_PRECONDITION = 4,
  /**
   * A panic was caught at the boundary.
   */
  RLK_INTERNAL = 5,
} RlkStatus;

/**
 * A Leibniz algebra.
 */
typedef struct RlkAlgebra RlkAlgebra;

/**
 * A matrix over the field of the algebra it was read against.
 */
typedef struct RlkMatrix RlkMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message of the last failed call on this thread, or an empty string.
 * The pointer stays valid until the next `rlk_*` call on the same thread.
 */
const char *rlk_last_error(void);

/**
 * Library version as a static nul-terminated string.
 */
const char *rlk_version(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a pointer obtained from this library that has not
 * been freed.
 */
void rlk_string_free(char *s);

/**
 * Parses an algebra file.
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` a valid pointer.
 */
enum RlkStatus rlk_algebra_from_json(const char *json, struct RlkAlgebra **out);

/**
 * Builds one of the builtin two-dimensional algebras, `"A1"` or `"A2"`,
 * over `field` (`"Q"` or `"F<p>"`).
 *
 * # Safety
 * `name` and `field` must be nul-terminated strings and `out` a valid
 * pointer.
 */
enum RlkStatus rlk_algebra_builtin(const char *name, const char *field, struct RlkAlgebra **out);

/**
 * Releases an algebra. Null is ignored.
 *
 * # Safety
 * `alg` must be null or a live handle from this library.
 */
void rlk_algebra_free(struct RlkAlgebra *alg);

/**
 * Dimension of the algebra, or 0 for a null handle.
 *
 * # Safety
 * `alg` must be null or a live handle.
 */
size_t rlk_algebra_dim(const struct RlkAlgebra *alg);

/**
 * Writes the algebra file for `alg` into `*out`.
 *
 * # Safety
 * `alg` must be a live handle and `out` a valid pointer.
 */
enum RlkStatus rlk_algebra_to_json(const struct RlkAlgebra *alg, char **out);

/**
 * Parses a matrix file over the field of `alg`.
 *
 * # Safety
 * `alg` must be a live handle, `json` a nul-terminated string and `out`
 * a valid pointer.
 */
enum RlkStatus rlk_matrix_from_json(const struct RlkAlgebra *alg,
                                    const char *json,
                                    struct RlkMatrix **out);

/**
 * Releases a matrix. Null is ignored.
 *
 * # Safety
 * `m` must be null or a live handle from this library.
 */
void rlk_matrix_free(struct RlkMatrix *m);

/**
 * `RLK_OK` when the bracket satisfies the Leibniz identity, `RLK_VIOLATED`
 * otherwise.
 *
 * # Safety
 * `alg` must be a live handle.
 */
enum RlkStatus rlk_check_leibniz(const struct RlkAlgebra *alg);

/**
 * Like [`rlk_check_leibniz`] but on an unvalidated algebra file, so that
 * brackets failing the identity can be inspected. `rlk_algebra_from_json`
 * rejects those with `RLK_PRECONDITION`.
 *
 * # Safety
 * `json` must be a nul-terminated string.
 */
enum RlkStatus rlk_check_leibniz_json(const char *json);

/**
 * `RLK_OK` when `op` is a Reynolds operator of weight `lambda` (a scalar
 * such as `"1"` or `"-3/4"`), `RLK_VIOLATED` otherwise.
 *
 * # Safety
 * `alg` and `op` must be live handles and `lambda` a nul-terminated
 * string.
 */
enum RlkStatus rlk_check_reynolds(const struct RlkAlgebra *alg,
                                  const char *lambda,
                                  const struct RlkMatrix *op);

/**
 * Computes the cLYBe defect of `r` and writes it as a coproduct-style
 * file into `*out`. Returns `RLK_OK` when the defect vanishes and
 * `RLK_VIOLATED` otherwise; the defect is written in both cases.
 *
 * # Safety
 * `alg` and `r` must be live handles and `out` a valid pointer.
 */
enum RlkStatus rlk_clybe_defect(const struct RlkAlgebra *alg,
                                const struct RlkMatrix *r,
                                char **out);

/**
 * Writes the coboundary coproduct of `r` into `*out`.
 *
 * # Safety
 * `alg` and `r` must be live handles and `out` a valid pointer.
 */
enum RlkStatus rlk_coboundary(const struct RlkAlgebra *alg, const struct RlkMatrix *r, char **out);

/**
 * The bracket `[x,y]_R` induced by a Reynolds operator, as a new algebra.
 * Fails with `RLK_PRECONDITION` if `op` is not a Reynolds operator of
 * weight `lambda`.
 *
 * # Safety
 * `alg` and `op` must be live handles, `lambda` a nul-terminated string
 * and `out` a valid pointer.
 */
enum RlkStatus rlk_induced_bracket(const struct RlkAlgebra *alg,
                                   const char *lambda,
                                   const struct RlkMatrix *op,
                                   struct RlkAlgebra **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RLK_H */
