#ifndef TRISTRING_H
#define TRISTRING_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TsStatus {
  TS_STATUS_OK = 0,
  TS_STATUS_NULL_POINTER = 1,
  TS_STATUS_INVALID_UTF8 = 2,
  TS_STATUS_PARSE = 3,
  TS_STATUS_INVALID_INPUT = 4,
  TS_STATUS_DISCONNECTED = 5,
  TS_STATUS_LIMIT_EXCEEDED = 6,
  TS_STATUS_BUFFER_TOO_SMALL = 7,
  TS_STATUS_UNKNOWN_SURFACE = 8,
  TS_STATUS_PANIC = 9,
} TsStatus;

/**
 * Class counts of an enumeration.
 */
typedef struct TsEnumeration TsEnumeration;

/**
 * A simple graph.
 */
typedef struct TsGraph TsGraph;

/**
 * An embedded triangulation.
 */
typedef struct TsTriangulation TsTriangulation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread. Valid until the next
 * call on the same thread.
 */
const char *ts_last_error(void);

/**
 * Parses an embedding file (`V E orientable`, rotation lines, sign lines).
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out_t` a valid pointer.
 */
enum TsStatus ts_triangulation_parse(const char *text, struct TsTriangulation **out_t);

/**
 * # Safety
 * `t` must come from [`ts_triangulation_parse`] and not be used afterwards.
 */
void ts_triangulation_free(struct TsTriangulation *t);

/**
 * # Safety
 * `t` must be a live handle and the out pointers valid.
 */
enum TsStatus ts_triangulation_shape(const struct TsTriangulation *t,
                                     size_t *n_vertices,
                                     size_t *n_edges);

/**
 * Euler characteristic and orientability of the surface.
 *
 * # Safety
 * `t` must be a live handle and the out pointers valid.
 */
enum TsStatus ts_triangulation_surface(const struct TsTriangulation *t,
                                       int64_t *euler,
                                       bool *orientable);

/**
 * # Safety
 * `t` must be a live handle and `result` valid.
 */
enum TsStatus ts_triangulation_is_irreducible(const struct TsTriangulation *t, bool *result);

/**
 * Canonical code as a hex string; equal strings mean isomorphic
 * triangulations.
 *
 * # Safety
 * `t` must be a live handle, `buf` writable for `len` bytes, `needed` valid.
 */
enum TsStatus ts_triangulation_canonical_code(const struct TsTriangulation *t,
                                              char *buf,
                                              size_t len,
                                              size_t *needed);

/**
 * Spanning-tree count of the triangulation's graph, in decimal.
 *
 * # Safety
 * `t` must be a live handle, `buf` writable for `len` bytes, `needed` valid.
 */
enum TsStatus ts_triangulation_kappa(const struct TsTriangulation *t,
                                     char *buf,
                                     size_t len,
                                     size_t *needed);

/**
 * Parses a graph file: `n m` then one `u v` line per edge.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out_g` a valid pointer.
 */
enum TsStatus ts_graph_parse(const char *text, struct TsGraph **out_g);

/**
 * # Safety
 * `g` must come from [`ts_graph_parse`] and not be used afterwards.
 */
void ts_graph_free(struct TsGraph *g);

/**
 * Spanning-tree count in decimal. A disconnected graph gives
 * [`TsStatus::Disconnected`].
 *
 * # Safety
 * `g` must be a live handle, `buf` writable for `len` bytes, `needed` valid.
 */
enum TsStatus ts_graph_kappa(const struct TsGraph *g, char *buf, size_t len, size_t *needed);

/**
 * Tutte polynomial, e.g. `x^2+x+y`. Graphs with more than `edge_limit`
 * edges are refused.
 *
 * # Safety
 * `g` must be a live handle, `buf` writable for `len` bytes, `needed` valid.
 */
enum TsStatus ts_graph_tutte(const struct TsGraph *g,
                             size_t edge_limit,
                             char *buf,
                             size_t len,
                             size_t *needed);

/**
 * Enumerates the classes of `surface` (`sphere`, `torus` or
 * `projective-plane`) up to `max_vertices` from the bundled catalog.
 *
 * # Safety
 * `surface` must be a NUL-terminated string and `out_e` a valid pointer.
 */
enum TsStatus ts_enumerate(const char *surface, size_t max_vertices, struct TsEnumeration **out_e);

/**
 * Number of classes with `n_vertices` vertices; 0 outside the enumerated
 * range.
 *
 * # Safety
 * `e` must be a live handle and `count` valid.
 */
enum TsStatus ts_enumeration_count(const struct TsEnumeration *e, size_t n_vertices, size_t *count);

/**
 * # Safety
 * `e` must come from [`ts_enumerate`] and not be used afterwards.
 */
void ts_enumeration_free(struct TsEnumeration *e);

/**
 * Sphere lower-bound series at `mu` in dimension `dim`, stopped at relative
 * tolerance `eps` (`eps <= 0` uses the default).
 *
 * # Safety
 * `value` and `converged` must be valid.
 */
enum TsStatus ts_sphere_lower_bound(double mu,
                                    uint32_t dim,
                                    double eps,
                                    double *value,
                                    bool *converged);

/**
 * Smallest μ at which the sphere lower-bound series converges.
 */
double ts_mu_critical(uint32_t dim);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TRISTRING_H */
