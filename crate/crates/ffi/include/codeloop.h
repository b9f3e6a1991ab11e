#ifndef CODELOOP_H
#define CODELOOP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum ClStatus {
  CL_STATUS_OK = 0,
  CL_STATUS_NULL_POINTER = 1,
  CL_STATUS_UTF8 = 2,
  CL_STATUS_PARSE = 3,
  CL_STATUS_INVALID = 4,
  CL_STATUS_DEGREE = 5,
  CL_STATUS_CAP_EXCEEDED = 6,
  CL_STATUS_FIELD_MISMATCH = 7,
  CL_STATUS_NOT_DOUBLY_EVEN = 8,
  CL_STATUS_VERIFICATION = 9,
  CL_STATUS_INTERNAL = 10,
  CL_STATUS_PANIC = 11,
} ClStatus;

/**
 * A code built from a GF(2) map together with its embedding.
 */
typedef struct ClCodeBuild ClCodeBuild;

/**
 * A finite field GF(p^e).
 */
typedef struct ClField ClField;

/**
 * A code loop with its Cayley table.
 */
typedef struct ClLoop ClLoop;

/**
 * A reduced polynomial map over a field.
 */
typedef struct ClPoly ClPoly;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failure on this thread. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *cl_last_error(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must be null or a pointer obtained from this library, freed once.
 */
void cl_string_free(char *s);

/**
 * Creates GF(p^e).
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum ClStatus cl_field_new(uint32_t p, uint32_t e, struct ClField **out);

/**
 * Creates a field from a spec such as "3^2" or "5".
 *
 * # Safety
 * `spec` must be a nul-terminated string and `out` a valid pointer.
 */
enum ClStatus cl_field_parse(const char *spec, struct ClField **out);

/**
 * Order q of the field, or 0 for a null handle.
 *
 * # Safety
 * `field` must be null or a live handle.
 */
uint32_t cl_field_order(const struct ClField *field);

/**
 * # Safety
 * `field` must be null or a live handle, freed once.
 */
void cl_field_free(struct ClField *field);

/**
 * Parses a polynomial such as "x1^3*x2^7 + x1*x2*x3^5". A negative `vars`
 * takes the number of variables from the largest index used.
 *
 * # Safety
 * `field` must be a live handle, `src` a nul-terminated string and `out` a
 * valid pointer.
 */
enum ClStatus cl_poly_parse(const struct ClField *field,
                            const char *src,
                            int32_t vars,
                            struct ClPoly **out);

/**
 * # Safety
 * `poly` must be null or a live handle, freed once.
 */
void cl_poly_free(struct ClPoly *poly);

/**
 * Number of variables, or 0 for a null handle.
 *
 * # Safety
 * `poly` must be null or a live handle.
 */
size_t cl_poly_arity(const struct ClPoly *poly);

/**
 * Canonical text of the reduced polynomial.
 *
 * # Safety
 * `poly` must be a live handle and `out` a valid pointer.
 */
enum ClStatus cl_poly_to_string(const struct ClPoly *poly, char **out);

/**
 * Combinatorial degree by the p-weight formula; -1 stands for infinity.
 *
 * # Safety
 * `poly` must be a live handle and `out` a valid pointer.
 */
enum ClStatus cl_poly_comb_degree(const struct ClPoly *poly, int64_t *out);

/**
 * Evaluates at a point given as `len` element encodings.
 *
 * # Safety
 * `poly` must be a live handle, `point` must hold `len` values, and `out`
 * must be a valid pointer.
 */
enum ClStatus cl_poly_eval(const struct ClPoly *poly,
                           const uint32_t *point,
                           size_t len,
                           uint32_t *out);

/**
 * Builds the code of level `cdeg P − 1`. `block_dim` 0 keeps the default;
 * `worked_example_simplex` selects the built-in dimension-3 simplex
 * generator; `order` is null or a family such as "1,2;2,3;1,2,3".
 *
 * # Safety
 * `poly` must be a live handle, `order` null or a nul-terminated string,
 * and `out` a valid pointer.
 */
enum ClStatus cl_build_code(const struct ClPoly *poly,
                            size_t block_dim,
                            bool worked_example_simplex,
                            const char *order,
                            struct ClCodeBuild **out);

/**
 * # Safety
 * `build` must be null or a live handle, freed once.
 */
void cl_code_build_free(struct ClCodeBuild *build);

/**
 * Dimension of the code, or 0 for a null handle.
 *
 * # Safety
 * `build` must be null or a live handle.
 */
size_t cl_code_build_dim(const struct ClCodeBuild *build);

/**
 * Ambient length of the code, or 0 for a null handle.
 *
 * # Safety
 * `build` must be null or a live handle.
 */
size_t cl_code_build_length(const struct ClCodeBuild *build);

/**
 * The `r` with `w(π(x))/2^r ≡ P(x)`, or 0 for a null handle.
 *
 * # Safety
 * `build` must be null or a live handle.
 */
uint32_t cl_code_build_level(const struct ClCodeBuild *build);

/**
 * Generator row `i` (the image of `e_{i+1}`) as comma-separated blocks.
 *
 * # Safety
 * `build` must be a live handle and `out` a valid pointer.
 */
enum ClStatus cl_code_build_row(const struct ClCodeBuild *build, size_t i, char **out);

/**
 * Runs the full verification; writes the JSON report to `report` (if not
 * null) and returns `CL_STATUS_VERIFICATION` when it lists violations.
 *
 * # Safety
 * `build` must be a live handle; `report` null or a valid pointer.
 */
enum ClStatus cl_code_build_verify(const struct ClCodeBuild *build, char **report);

/**
 * Solves a factor set for the built code and forms its loop.
 *
 * # Safety
 * `build` must be a live handle and `out` a valid pointer.
 */
enum ClStatus cl_loop_from_build(const struct ClCodeBuild *build, struct ClLoop **out);

/**
 * # Safety
 * `l` must be null or a live handle, freed once.
 */
void cl_loop_free(struct ClLoop *l);

/**
 * Number of elements, or 0 for a null handle.
 *
 * # Safety
 * `l` must be null or a live handle.
 */
size_t cl_loop_order(const struct ClLoop *l);

/**
 * Product of elements given by index (`2·x + a` for `(x, a)`).
 *
 * # Safety
 * `l` must be a live handle and `out` a valid pointer.
 */
enum ClStatus cl_loop_mul(const struct ClLoop *l, size_t u, size_t v, size_t *out);

/**
 * Checks the Latin-square, Moufang and code loop identities and that the
 * squaring map has combinatorial degree at most 3. Writes the JSON report
 * to `report` (if not null); returns `CL_STATUS_VERIFICATION` on violations.
 *
 * # Safety
 * `l` must be a live handle; `report` null or a valid pointer.
 */
enum ClStatus cl_loop_verify(const struct ClLoop *l, char **report);

/**
 * The loop as JSON: order, η bit matrix and Cayley table.
 *
 * # Safety
 * `l` must be a live handle and `out` a valid pointer.
 */
enum ClStatus cl_loop_export_json(const struct ClLoop *l, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CODELOOP_H */
