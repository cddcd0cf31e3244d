#ifndef QTWO_H
#define QTWO_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QtStatus {
  QT_STATUS_OK = 0,
  QT_STATUS_NULL_POINTER = 1,
  QT_STATUS_INVALID_UTF8 = 2,
  QT_STATUS_PARSE = 3,
  QT_STATUS_INVALID_PARAMETER = 4,
  QT_STATUS_NOT_CONNECTED = 5,
  QT_STATUS_NUMERIC = 6,
  /**
   * The search ran to budget without a verified matrix.
   */
  QT_STATUS_NOT_FOUND = 7,
  QT_STATUS_BUDGET_EXHAUSTED = 8,
  QT_STATUS_VACUOUS = 9,
  QT_STATUS_PANIC = 10,
} QtStatus;

/**
 * Opaque certificate handle.
 */
typedef struct QtCertificate QtCertificate;

/**
 * Opaque graph handle.
 */
typedef struct QtGraph QtGraph;

/**
 * Mirrors the search configuration; obtain defaults from
 * [`qt_search_params_default`].
 */
typedef struct QtSearchParams {
  size_t max_iterations;
  size_t restarts;
  double tolerance;
  uint64_t seed;
  bool polish;
  bool require_ssp;
} QtSearchParams;

/**
 * Outcome of the lower-bound sieve.
 */
typedef struct QtSieveResult {
  /**
   * Some rule proves more than two distinct eigenvalues.
   */
  bool excluded;
  /**
   * Largest lower bound among the rules that fired, 0 if none did.
   */
  size_t lower_bound;
  /**
   * Number of rules that fired.
   */
  size_t rules_fired;
} QtSieveResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *qt_last_error_message(void);

struct QtSearchParams qt_search_params_default(void);

/**
 * # Safety
 * `s` must be NUL-terminated; `out` must be writable.
 */
enum QtStatus qt_graph_from_graph6(const char *s, struct QtGraph **out);

/**
 * # Safety
 * `name` must be NUL-terminated; `out` must be writable.
 */
enum QtStatus qt_named_graph(const char *name, struct QtGraph **out);

/**
 * Double-ended candle on `2k` vertices.
 *
 * # Safety
 * `out` must be writable.
 */
enum QtStatus qt_double_candle(size_t k, struct QtGraph **out);

/**
 * Single-ended candle on `2k + 1` vertices.
 *
 * # Safety
 * `out` must be writable.
 */
enum QtStatus qt_single_candle(size_t k, struct QtGraph **out);

/**
 * # Safety
 * `g` must come from this library and not be used afterwards. NULL is ignored.
 */
void qt_graph_free(struct QtGraph *g);

/**
 * # Safety
 * `g` must be a live handle or NULL (returns 0).
 */
size_t qt_graph_vertex_count(const struct QtGraph *g);

/**
 * # Safety
 * `g` must be a live handle or NULL (returns 0).
 */
size_t qt_graph_edge_count(const struct QtGraph *g);

/**
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum QtStatus qt_graph_to_graph6(const struct QtGraph *g, char **out);

/**
 * graph6 of the canonical relabelling; equal strings mean isomorphic graphs.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum QtStatus qt_graph_canonical_graph6(const struct QtGraph *g, char **out);

/**
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum QtStatus qt_sieve(const struct QtGraph *g, struct QtSieveResult *out);

/**
 * Full sieve verdict, with witnesses, as JSON.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum QtStatus qt_sieve_json(const struct QtGraph *g, char **out);

/**
 * Closed-form certificate if one applies, else numerical search.
 * Returns `NotFound` when the search budget runs out. `params` may be NULL
 * for defaults.
 *
 * # Safety
 * `g` must be a live handle; `params` NULL or valid; `out` must be writable.
 */
enum QtStatus qt_certify(const struct QtGraph *g,
                         const struct QtSearchParams *params,
                         struct QtCertificate **out);

/**
 * Numerical search only. Returns `NotFound` on failure.
 *
 * # Safety
 * `g` must be a live handle; `params` NULL or valid; `out` must be writable.
 */
enum QtStatus qt_search(const struct QtGraph *g,
                        const struct QtSearchParams *params,
                        struct QtCertificate **out);

/**
 * Classification record (sieve, closed forms, search) as JSON.
 *
 * # Safety
 * `g` must be a live handle; `params` NULL or valid; `out` must be writable.
 */
enum QtStatus qt_classify_json(const struct QtGraph *g,
                               const struct QtSearchParams *params,
                               char **out);

/**
 * Census report over all connected graphs on `n` vertices as JSON, with
 * the default two-pass search budget.
 *
 * # Safety
 * `out` must be writable.
 */
enum QtStatus qt_census_json(size_t n, char **out);

/**
 * Parse a certificate and re-run its verification; the stored report is
 * replaced by the fresh one.
 *
 * # Safety
 * `json` must be NUL-terminated; `out` must be writable.
 */
enum QtStatus qt_certificate_from_json(const char *json, struct QtCertificate **out);

/**
 * # Safety
 * `c` must be a live handle; `out` must be writable.
 */
enum QtStatus qt_certificate_to_json(const struct QtCertificate *c, char **out);

/**
 * # Safety
 * `c` must be a live handle or NULL (returns false).
 */
bool qt_certificate_is_verified(const struct QtCertificate *c);

/**
 * Number of distinct eigenvalues, 0 for NULL.
 *
 * # Safety
 * `c` must be a live handle or NULL.
 */
size_t qt_certificate_distinct_count(const struct QtCertificate *c);

/**
 * 1 if the matrix has the Strong Spectral Property, 0 if not, -1 if unknown or NULL.
 *
 * # Safety
 * `c` must be a live handle or NULL.
 */
int32_t qt_certificate_ssp(const struct QtCertificate *c);

/**
 * # Safety
 * `c` must come from this library and not be used afterwards. NULL is ignored.
 */
void qt_certificate_free(struct QtCertificate *c);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards. NULL is ignored.
 */
void qt_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QTWO_H */
