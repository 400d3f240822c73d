#ifndef AURELLION_H
#define AURELLION_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum AurStatus {
  AUR_STATUS_OK = 0,
  AUR_STATUS_NULL_POINTER = 1,
  AUR_STATUS_INVALID_UTF8 = 2,
  AUR_STATUS_PARSE_ERROR = 3,
  AUR_STATUS_INVALID_TERM = 4,
  AUR_STATUS_INVALID_ARGUMENT = 5,
  /**
   * Evaluation ran out of budget; the out string holds the residual term.
   */
  AUR_STATUS_OVERFLOW = 6,
  /**
   * Evaluation reached a term no rule applies to; the out string holds it.
   */
  AUR_STATUS_STUCK = 7,
  /**
   * Comparison could not be decided.
   */
  AUR_STATUS_UNKNOWN = 8,
  AUR_STATUS_INVALID_CERTIFICATE = 9,
  AUR_STATUS_PANIC = 10,
} AurStatus;

typedef enum AurRelation {
  AUR_RELATION_LESS = -1,
  AUR_RELATION_EQUAL = 0,
  AUR_RELATION_GREATER = 1,
  AUR_RELATION_UNKNOWN = 2,
} AurRelation;

/**
 * A certificate in `cert_v1` form.
 */
typedef struct AurCertificate AurCertificate;

/**
 * A parsed, validated term.
 */
typedef struct AurTerm AurTerm;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses the ASCII surface syntax into `*out`.
 *
 * # Safety
 * `src` must be a NUL-terminated string and `out` a writable pointer.
 */
enum AurStatus aur_term_parse(const char *src, struct AurTerm **out);

/**
 * Reads a term from its JSON AST into `*out`.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a writable pointer.
 */
enum AurStatus aur_term_from_json(const char *json, struct AurTerm **out);

/**
 * Canonical text of a term, or NULL for a NULL handle.
 *
 * # Safety
 * `t` must be NULL or a live handle.
 */
char *aur_term_print(const struct AurTerm *t);

/**
 * JSON AST of a term, or NULL for a NULL handle.
 *
 * # Safety
 * `t` must be NULL or a live handle.
 */
char *aur_term_to_json(const struct AurTerm *t);

/**
 * # Safety
 * `t` must be NULL or a handle not yet freed.
 */
void aur_term_free(struct AurTerm *t);

/**
 * Evaluates `t`. On `Ok` `*out` is the decimal value; on `Overflow` or
 * `Stuck` it is the residual term.
 *
 * # Safety
 * `t` must be a live handle and `out` a writable pointer.
 */
enum AurStatus aur_eval(const struct AurTerm *t, uint64_t max_steps, uint64_t max_bits, char **out);

/**
 * Decides the order of `lhs` and `rhs`. Returns `Ok` with a decided
 * relation, or `Unknown`. When `cert_out` is non-NULL and the relation is
 * decided, it receives a certificate handle.
 *
 * # Safety
 * `lhs` and `rhs` must be live handles, `rel_out` writable, and `cert_out`
 * NULL or writable.
 */
enum AurStatus aur_compare(const struct AurTerm *lhs,
                           const struct AurTerm *rhs,
                           uint64_t max_steps,
                           uint64_t max_bits,
                           enum AurRelation *rel_out,
                           struct AurCertificate **cert_out);

/**
 * The certificate of `A[n] >= 10^[n+2]10`.
 *
 * # Safety
 * `out` must be a writable pointer.
 */
enum AurStatus aur_cert_lemma1(uint64_t n, struct AurCertificate **out);

/**
 * Reads a `cert_v1` document into `*out` without checking it.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a writable pointer.
 */
enum AurStatus aur_cert_from_json(const char *json, struct AurCertificate **out);

/**
 * The `cert_v1` JSON of a certificate, or NULL for a NULL handle.
 *
 * # Safety
 * `c` must be NULL or a live handle.
 */
char *aur_cert_to_json(const struct AurCertificate *c);

/**
 * Validates a certificate: `Ok` or `InvalidCertificate`.
 *
 * # Safety
 * `c` must be a live handle.
 */
enum AurStatus aur_cert_check(const struct AurCertificate *c,
                              uint64_t max_steps,
                              uint64_t max_bits);

/**
 * # Safety
 * `c` must be NULL or a handle not yet freed.
 */
void aur_cert_free(struct AurCertificate *c);

/**
 * The message of the most recent failure on this thread; empty if none.
 * Valid until the next failing call on the same thread.
 */
const char *aur_last_error(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library and not yet freed.
 */
void aur_string_free(char *s);

/**
 * The library version as a static string.
 */
const char *aur_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* AURELLION_H */
