#ifndef LAMPLIGHTER_H
#define LAMPLIGHTER_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes of every fallible call.
 */
typedef enum LlStatus {
  LL_STATUS_OK = 0,
  LL_STATUS_NULL_POINTER = 1,
  LL_STATUS_INVALID_UTF8 = 2,
  LL_STATUS_PARSE = 3,
  LL_STATUS_NOT_INVERTIBLE = 4,
  LL_STATUS_MISMATCH = 5,
  LL_STATUS_UNSUPPORTED = 6,
  LL_STATUS_INVALID_INPUT = 7,
  LL_STATUS_CHECK_FAILED = 8,
  LL_STATUS_PANIC = 9,
} LlStatus;

/**
 * Opaque handle to a group element.
 */
typedef struct LlElement LlElement;

/**
 * Opaque handle to a group `Γ_n(R)`.
 */
typedef struct LlGroup LlGroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message of the last failed call on this thread, or `""`. Owned by
 * the library; valid until the next call on this thread.
 */
const char *ll_last_error_message(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void ll_string_free(char *s);

/**
 * Creates `Γ_n(R)` for a ring written `"Z"` or `"Z/m"`.
 *
 * # Safety
 * `ring` must be a nul-terminated string and `out` writable.
 */
enum LlStatus ll_group_new(size_t n, const char *ring, struct LlGroup **out);

/**
 * # Safety
 * `g` must be null or a handle from `ll_group_new`, not yet freed.
 */
void ll_group_free(struct LlGroup *g);

/**
 * The rank `n`, or 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live group handle.
 */
size_t ll_group_rank(const struct LlGroup *g);

/**
 * # Safety
 * `e` must be null or a handle returned by this library, not yet freed.
 */
void ll_element_free(struct LlElement *e);

/**
 * Evaluates a word such as `"t^-4 a t^4 a"`.
 *
 * # Safety
 * `g` must be a live group handle, `word` a nul-terminated string, `out` writable.
 */
enum LlStatus ll_eval_word(const struct LlGroup *g, const char *word, struct LlElement **out);

/**
 * # Safety
 * `a`, `b` must be live element handles and `out` writable.
 */
enum LlStatus ll_element_mul(const struct LlElement *a,
                             const struct LlElement *b,
                             struct LlElement **out);

/**
 * # Safety
 * `a` must be a live element handle and `out` writable.
 */
enum LlStatus ll_element_inv(const struct LlElement *a, struct LlElement **out);

/**
 * Writes 1 to `out` if the elements are equal, 0 otherwise.
 *
 * # Safety
 * `a`, `b` must be live element handles and `out` writable.
 */
enum LlStatus ll_element_equal(const struct LlElement *a, const struct LlElement *b, int32_t *out);

/**
 * # Safety
 * `g` must be a live group handle, `json_text` a nul-terminated string, `out` writable.
 */
enum LlStatus ll_element_from_json(const struct LlGroup *g,
                                   const char *json_text,
                                   struct LlElement **out);

/**
 * Compact JSON of an element.
 *
 * # Safety
 * `e` must be a live element handle and `out` writable.
 */
enum LlStatus ll_element_to_json(const struct LlElement *e, char **out);

/**
 * Normal-form word (ranks 1 and 2).
 *
 * # Safety
 * `e` must be a live element handle and `out` writable.
 */
enum LlStatus ll_normal_form(const struct LlElement *e, char **out);

/**
 * Compact JSON of the vertex `phi(e)`.
 *
 * # Safety
 * `e` must be a live element handle and `out` writable.
 */
enum LlStatus ll_phi_json(const struct LlElement *e, char **out);

/**
 * The element whose vertex is the given JSON.
 *
 * # Safety
 * `g` must be a live group handle, `vertex` a nul-terminated string, `out` writable.
 */
enum LlStatus ll_phi_inv_json(const struct LlGroup *g, const char *vertex, struct LlElement **out);

/**
 * Runs the isomorphism check; `LL_STATUS_CHECK_FAILED` on violations.
 * The JSON report is written to `report` unless it is null.
 *
 * # Safety
 * `g` must be a live group handle; `report` null or writable.
 */
enum LlStatus ll_verify_iso(const struct LlGroup *g,
                            uint32_t radius,
                            uint64_t coeff_bound,
                            char **report);

/**
 * Evaluates the relators of a presentation (`"i"`, `"g2-ii"`, `"complex"`, ...).
 *
 * # Safety
 * `g` must be a live group handle, `pres` a nul-terminated string; `report` null or writable.
 */
enum LlStatus ll_verify_relators(const struct LlGroup *g,
                                 const char *pres,
                                 uint64_t bound,
                                 char **report);

/**
 * Exports the Cayley ball as `"dot"`, `"graphml"`, `"edge-csv"` or `"json"`.
 *
 * # Safety
 * `g` must be a live group handle, `format` a nul-terminated string, `out` writable.
 */
enum LlStatus ll_export_ball(const struct LlGroup *g,
                             uint32_t radius,
                             uint64_t coeff_bound,
                             const char *format,
                             char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LAMPLIGHTER_H */
