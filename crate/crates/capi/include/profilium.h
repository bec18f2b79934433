/* C interface for the profilium decision engine. */

#ifndef PROFILIUM_H
#define PROFILIUM_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes shared by every entry point.
 */
typedef enum PflStatus {
  /**
   * Success.
   */
  PflOk = 0,
  /**
   * A verification suite ran and reported at least one violation.
   */
  PflSuiteFailure = 1,
  /**
   * Unparseable input or an operation the ring family does not support.
   */
  PflInvalidInput = 2,
  /**
   * A required pointer argument was null.
   */
  PflNullPointer = 3,
  /**
   * Internal panic; the handle remains usable.
   */
  PflPanic = 4,
} PflStatus;

/**
 * Opaque handle to a parsed module, canonicalized against its ring.
 */
typedef struct PflModule PflModule;

/**
 * Opaque handle to a ring family plus its finite universe.
 */
typedef struct PflRing PflRing;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Last error message for this thread; empty string when no error has been
 * recorded. The pointer stays valid until the next failing call on the
 * same thread.
 */
const char *pfl_last_error(void);

/**
 * Builds a ring handle from a spec string (`Z`, `Zmod:<p>^<k>`, or
 * `A<n>:<orient>;q=<p>`). `primes`/`primes_len` may be null/0 to keep the
 * default {2, 3}; the bounds apply to the integer family only.
 *
 * # Safety
 * `spec` must be a NUL-terminated string; `primes` must point to
 * `primes_len` readable values when non-null; `out` must be writable.
 */
enum PflStatus pfl_ring_new(const char *spec,
                            const uint64_t *primes,
                            uintptr_t primes_len,
                            uint32_t maxexp,
                            uintptr_t maxrank,
                            struct PflRing **out);

/**
 * # Safety
 * `ring` must be a pointer returned by `pfl_ring_new` (or null).
 */
void pfl_ring_free(struct PflRing *ring);

/**
 * Parses a module literal against the ring and returns an opaque handle
 * holding its canonical form.
 *
 * # Safety
 * `ring` must be a live ring handle; `literal` a NUL-terminated string;
 * `out` writable.
 */
enum PflStatus pfl_module_parse(const struct PflRing *ring,
                                const char *literal,
                                struct PflModule **out);

/**
 * # Safety
 * `module` must be a pointer returned by `pfl_module_parse` (or null).
 */
void pfl_module_free(struct PflModule *module);

/**
 * Canonical literal of a parsed module; release with `pfl_string_free`.
 *
 * # Safety
 * `module` must be a live module handle; `out` writable.
 */
enum PflStatus pfl_module_literal(const struct PflModule *module, char **out);

/**
 * Decides whether `m` is `n`-subprojective.
 *
 * # Safety
 * All handles must be live and created against the same ring; `out`
 * writable.
 */
enum PflStatus pfl_is_subprojective(const struct PflRing *ring,
                                    const struct PflModule *m,
                                    const struct PflModule *n,
                                    bool *out);

/**
 * Decides whether `m` is `n`-subinjective.
 *
 * # Safety
 * As for `pfl_is_subprojective`.
 */
enum PflStatus pfl_is_subinjective(const struct PflRing *ring,
                                   const struct PflModule *m,
                                   const struct PflModule *n,
                                   bool *out);

/**
 * JSON domain report for the module literal held by `m`; `kind` is "sp" or
 * "si". Release the string with `pfl_string_free`.
 *
 * # Safety
 * `ring` and `m` must be live handles; `kind` NUL-terminated; `out`
 * writable.
 */
enum PflStatus pfl_domain_json(const struct PflRing *ring,
                               const struct PflModule *m,
                               const char *kind,
                               char **out);

/**
 * JSON profile report; `kind` is "sp" or "si".
 *
 * # Safety
 * `ring` must be a live handle; `kind` NUL-terminated; `out` writable.
 */
enum PflStatus pfl_profile_json(const struct PflRing *ring, const char *kind, char **out);

/**
 * Runs verification suites (`"all"` or a comma-separated list like
 * `"S9,S16"`) and returns the JSON report. Returns `PflSuiteFailure` when
 * any check fails; the report is still written to `out`.
 *
 * # Safety
 * `ring` must be a live handle; `suites` NUL-terminated; `out` writable.
 */
enum PflStatus pfl_verify_json(const struct PflRing *ring, const char *suites, char **out);

/**
 * Number of indecomposables in the ring's universe.
 *
 * # Safety
 * `ring` must be a live handle; `out` writable.
 */
enum PflStatus pfl_universe_size(const struct PflRing *ring, uintptr_t *out);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must have been returned by a `_json`/`_literal` function (or be
 * null), and must not be used afterwards.
 */
void pfl_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PROFILIUM_H */
