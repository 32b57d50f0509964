#ifndef LLAB_H
#define LLAB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum LlabStatus {
  LLAB_STATUS_OK = 0,
  LLAB_STATUS_NULL_POINTER = 1,
  LLAB_STATUS_INVALID_UTF8 = 2,
  LLAB_STATUS_PARSE_ERROR = 3,
  LLAB_STATUS_INVALID_INPUT = 4,
  LLAB_STATUS_CERTIFICATION_FAILED = 5,
  LLAB_STATUS_BUFFER_TOO_SMALL = 6,
  LLAB_STATUS_PANIC = 7,
} LlabStatus;

typedef enum LlabIdealKind {
  LLAB_IDEAL_KIND_COLETTERPLACE = 0,
  LLAB_IDEAL_KIND_LETTERPLACE = 1,
  LLAB_IDEAL_KIND_DUAL = 2,
  LLAB_IDEAL_KIND_BPN = 3,
} LlabIdealKind;

typedef struct LlabPoset LlabPoset;

typedef struct LlabPosetIdeal LlabPosetIdeal;

typedef struct LlabResolution LlabResolution;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or null. Owned by the library.
 */
const char *llab_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void llab_string_free(char *s);

/**
 * Parses the `elements:` / `covers:` text format.
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` a valid pointer.
 */
enum LlabStatus llab_poset_parse(const char *text, struct LlabPoset **out);

/**
 * The chain `p1 < ... < pm`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum LlabStatus llab_poset_chain(uintptr_t m, struct LlabPoset **out);

/**
 * # Safety
 * `p` must be null or a handle from this library, freed at most once.
 */
void llab_poset_free(struct LlabPoset *p);

/**
 * # Safety
 * `p` must be a valid handle.
 */
uintptr_t llab_poset_size(const struct LlabPoset *p);

/**
 * A poset ideal of `Hom(P, [n])`; `spec` is `all` or maps such as `1,2;2,2`.
 *
 * # Safety
 * `poset` must be a valid handle, `spec` a nul-terminated string, `out` valid.
 */
enum LlabStatus llab_poset_ideal_new(const struct LlabPoset *poset,
                                     uint32_t n,
                                     const char *spec,
                                     struct LlabPosetIdeal **out);

/**
 * # Safety
 * `j` must be null or a handle from this library, freed at most once.
 */
void llab_poset_ideal_free(struct LlabPosetIdeal *j);

/**
 * Number of maps in the poset ideal.
 *
 * # Safety
 * `j` must be a valid handle.
 */
uintptr_t llab_poset_ideal_size(const struct LlabPosetIdeal *j);

/**
 * Generators of the requested ideal, one per line.
 *
 * # Safety
 * `j` must be a valid handle and `out` a valid pointer.
 */
enum LlabStatus llab_ideal_generators(const struct LlabPosetIdeal *j,
                                      enum LlabIdealKind kind,
                                      char **out);

/**
 * The linear resolution of `L(J)`.
 *
 * # Safety
 * `j` must be a valid handle and `out` a valid pointer.
 */
enum LlabStatus llab_resolution_new(const struct LlabPosetIdeal *j, struct LlabResolution **out);

/**
 * # Safety
 * `r` must be null or a handle from this library, freed at most once.
 */
void llab_resolution_free(struct LlabResolution *r);

/**
 * Copies the module ranks into `buf`. `len` receives the number of ranks;
 * if `capacity` is too small nothing is copied.
 *
 * # Safety
 * `r` and `len` must be valid; `buf` must hold `capacity` entries.
 */
enum LlabStatus llab_resolution_ranks(const struct LlabResolution *r,
                                      uintptr_t *buf,
                                      uintptr_t capacity,
                                      uintptr_t *len);

/**
 * Checks that the resolution resolves `L(J)` over `field` (`q`, `f2`, `gf3`, ...).
 * Returns `CertificationFailed` if it does not.
 *
 * # Safety
 * Handles must be valid and `field` a nul-terminated string.
 */
enum LlabStatus llab_resolution_verify(const struct LlabResolution *r,
                                       const struct LlabPosetIdeal *j,
                                       const char *field);

/**
 * The resolution as JSON.
 *
 * # Safety
 * `r` must be a valid handle and `out` a valid pointer.
 */
enum LlabStatus llab_resolution_json(const struct LlabResolution *r, char **out);

/**
 * Certifies `Delta(J)` and writes a one-line summary.
 *
 * # Safety
 * `j` must be a valid handle, `field` a nul-terminated string, `out` valid.
 */
enum LlabStatus llab_certify(const struct LlabPosetIdeal *j, const char *field, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LLAB_H */
