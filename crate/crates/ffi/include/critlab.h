#ifndef CRITLAB_H
#define CRITLAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum CritlabStatus {
  CRITLAB_STATUS_OK = 0,
  CRITLAB_STATUS_NULL_POINTER = 1,
  CRITLAB_STATUS_INVALID_UTF8 = 2,
  CRITLAB_STATUS_PARSE = 3,
  CRITLAB_STATUS_INVALID_GRAPH = 4,
  CRITLAB_STATUS_NOT_PRIME = 5,
  CRITLAB_STATUS_INFEASIBLE = 6,
  CRITLAB_STATUS_CONTRADICTION = 7,
  CRITLAB_STATUS_UNSUPPORTED = 8,
  CRITLAB_STATUS_INTERNAL = 9,
} CritlabStatus;

/**
 * Opaque graph handle.
 */
typedef struct CritlabGraph CritlabGraph;

/**
 * Opaque integer matrix handle.
 */
typedef struct CritlabMatrix CritlabMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. The pointer
 * stays valid until the next library call on the same thread.
 */
const char *critlab_last_error(void);

/**
 * Releases a string returned by the library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void critlab_string_free(char *s);

/**
 * Builtin graph by name, e.g. "petersen", "hoffman-singleton", "cycle:5".
 *
 * # Safety
 * `name` must be a NUL-terminated string; `out` must be writable.
 */
enum CritlabStatus critlab_graph_builtin(const char *name, struct CritlabGraph **out);

/**
 * Parses an edge list: "n m" then m lines "u v".
 *
 * # Safety
 * `edges` must be a NUL-terminated string; `out` must be writable.
 */
enum CritlabStatus critlab_graph_parse(const char *edges, struct CritlabGraph **out);

/**
 * # Safety
 * `g` must come from this library and not have been freed; NULL is ignored.
 */
void critlab_graph_free(struct CritlabGraph *g);

/**
 * Number of vertices, or 0 for NULL.
 *
 * # Safety
 * `g` must be NULL or a live handle.
 */
size_t critlab_graph_vertex_count(const struct CritlabGraph *g);

/**
 * Number of edges, or 0 for NULL.
 *
 * # Safety
 * `g` must be NULL or a live handle.
 */
size_t critlab_graph_edge_count(const struct CritlabGraph *g);

/**
 * Parses a matrix: "rows cols" then the entries.
 *
 * # Safety
 * `s` must be a NUL-terminated string; `out` must be writable.
 */
enum CritlabStatus critlab_matrix_parse(const char *s, struct CritlabMatrix **out);

/**
 * The Laplacian of a graph as a new matrix handle.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum CritlabStatus critlab_graph_laplacian(const struct CritlabGraph *g,
                                           struct CritlabMatrix **out);

/**
 * # Safety
 * `m` must come from this library and not have been freed; NULL is ignored.
 */
void critlab_matrix_free(struct CritlabMatrix *m);

/**
 * Smith normal form diagonal as space-separated decimal integers.
 *
 * # Safety
 * `m` must be a live handle; `out` must be writable.
 */
enum CritlabStatus critlab_matrix_snf(const struct CritlabMatrix *m, char **out);

/**
 * Elementary divisor profile at `p` as a JSON report.
 *
 * # Safety
 * `m` must be a live handle; `out` must be writable.
 */
enum CritlabStatus critlab_matrix_profile_json(const struct CritlabMatrix *m,
                                               uint64_t p,
                                               char **out);

/**
 * Critical group of a graph as a JSON report.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum CritlabStatus critlab_critical_group_json(const struct CritlabGraph *g, char **out);

/**
 * Parameter analysis of a strongly regular graph as a JSON report.
 * With `prime_count == 0`, families are enumerated for every prime whose
 * higher powers are allowed.
 *
 * # Safety
 * `primes` must point to `prime_count` values (or be NULL when zero);
 * `out` must be writable.
 */
enum CritlabStatus critlab_moore_analyze_json(int64_t v,
                                              int64_t k,
                                              int64_t lambda,
                                              int64_t mu,
                                              const uint64_t *primes,
                                              size_t prime_count,
                                              char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CRITLAB_H */
