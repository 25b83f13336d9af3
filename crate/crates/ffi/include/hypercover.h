#ifndef HYPERCOVER_H
#define HYPERCOVER_H

#pragma once

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum HcStatus {
  HC_OK = 0,
  HC_NULL_POINTER = 1,
  HC_INVALID_ARGUMENT = 2,
  HC_INVALID_UTF8 = 3,
  HC_PARSE_ERROR = 4,
  HC_LIMIT_EXCEEDED = 5,
  HC_BUDGET_EXCEEDED = 6,
  HC_IO_ERROR = 7,
  HC_BUFFER_TOO_SMALL = 8,
  HC_PANIC = 9,
} HcStatus;

/**
 * Opaque hypergraph handle.
 */
typedef struct HcGraph HcGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *hc_version(void);

/**
 * Message of the last failing call on this thread, or NULL.
 */
const char *hc_last_error(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void hc_string_free(char *s);

/**
 * Releases a graph handle. NULL is ignored.
 *
 * # Safety
 * `g` must come from this library and not have been freed.
 */
void hc_graph_free(struct HcGraph *g);

/**
 * Builds an r-graph on `n` vertices from `edge_count` edges stored
 * contiguously, `r` vertices each.
 *
 * # Safety
 * `edges` must point to `r * edge_count` readable values.
 */
enum HcStatus hc_graph_from_edges(size_t r,
                                  size_t n,
                                  const uint32_t *edges,
                                  size_t edge_count,
                                  struct HcGraph **out);

/**
 * Parses the text format (header `r n`, one ascending edge per line).
 *
 * # Safety
 * `text` must be a NUL-terminated string.
 */
enum HcStatus hc_graph_from_text(const char *text, struct HcGraph **out);

/**
 * # Safety
 * `path` must be a NUL-terminated string.
 */
enum HcStatus hc_graph_read_file(const char *path, struct HcGraph **out);

/**
 * # Safety
 * `g` must be a live handle and `path` a NUL-terminated string.
 */
enum HcStatus hc_graph_write_file(const struct HcGraph *g, const char *path);

/**
 * Text form of the graph; free with [`hc_string_free`].
 *
 * # Safety
 * `g` must be a live handle.
 */
enum HcStatus hc_graph_to_text(const struct HcGraph *g, char **out);

/**
 * # Safety
 * `g` must be a live handle.
 */
enum HcStatus hc_graph_uniformity(const struct HcGraph *g, size_t *out);

/**
 * # Safety
 * `g` must be a live handle.
 */
enum HcStatus hc_graph_vertex_count(const struct HcGraph *g, size_t *out);

/**
 * # Safety
 * `g` must be a live handle.
 */
enum HcStatus hc_graph_edge_count(const struct HcGraph *g, size_t *out);

/**
 * Copies the sorted edge list into `buf` (`r * edge_count` values).
 * `needed` receives the required length; `HC_BUFFER_TOO_SMALL` is returned
 * when `capacity` is short, in which case nothing is copied.
 *
 * # Safety
 * `buf` must have room for `capacity` values.
 */
enum HcStatus hc_graph_edges(const struct HcGraph *g,
                             uint32_t *buf,
                             size_t capacity,
                             size_t *needed);

/**
 * # Safety
 * `g` must be a live handle and `edge` point to `len` values.
 */
enum HcStatus hc_graph_contains(const struct HcGraph *g,
                                const uint32_t *edge,
                                size_t len,
                                bool *out);

/**
 * Number of edges containing the vertex set.
 *
 * # Safety
 * `g` must be a live handle and `set` point to `len` values.
 */
enum HcStatus hc_graph_degree(const struct HcGraph *g,
                              const uint32_t *set,
                              size_t len,
                              size_t *out);

/**
 * Minimum degree over all `i`-sets.
 *
 * # Safety
 * `g` must be a live handle.
 */
enum HcStatus hc_graph_min_degree(const struct HcGraph *g, size_t i, size_t *out);

/**
 * Maximum triangle-degree of a 2-graph.
 *
 * # Safety
 * `g` must be a live handle.
 */
enum HcStatus hc_graph_t_max(const struct HcGraph *g, size_t *out);

/**
 * Book number of a 2-graph.
 *
 * # Safety
 * `g` must be a live handle.
 */
enum HcStatus hc_graph_book_number(const struct HcGraph *g, size_t *out);

/**
 * Exact independence number; fails above `limit` vertices.
 *
 * # Safety
 * `g` must be a live handle.
 */
enum HcStatus hc_graph_independence_number(const struct HcGraph *g, size_t limit, size_t *out);

/**
 * Whether vertex `v` lies in a copy of the named motif (`k4`, `k4-`, `c5`,
 * `k<t>`, `clique<r>`).
 *
 * # Safety
 * `g` must be a live handle and `motif` a NUL-terminated string.
 */
enum HcStatus hc_graph_covers(const struct HcGraph *g, const char *motif, uint32_t v, bool *out);

/**
 * Number of vertices in no copy of the named motif.
 *
 * # Safety
 * `g` must be a live handle and `motif` a NUL-terminated string.
 */
enum HcStatus hc_graph_uncovered_count(const struct HcGraph *g, const char *motif, size_t *out);

/**
 * K₄⁽³⁾⁻ lower-bound construction on odd `n` with link degree `d`.
 *
 * # Safety
 * `out` must be writable.
 */
enum HcStatus hc_k4minus_lower(size_t n, size_t d, uint64_t seed, struct HcGraph **out);

/**
 * Balanced r-partite construction with inner degree from `rho` (`p/q` or a
 * terminating decimal).
 *
 * # Safety
 * `rho` must be a NUL-terminated string and `out` writable.
 */
enum HcStatus hc_tau_lower(size_t n,
                           const char *rho,
                           size_t r,
                           uint64_t seed,
                           struct HcGraph **out);

/**
 * Vectors over `[r₁] × … × [r_k] × [t]` adjacent when they differ in every
 * factor coordinate.
 *
 * # Safety
 * `factors` must point to `len` values and `out` be writable.
 */
enum HcStatus hc_efg_graph(const size_t *factors, size_t len, size_t t, struct HcGraph **out);

/**
 * Steiner triple system of order `t`.
 *
 * # Safety
 * `out` must be writable.
 */
enum HcStatus hc_sts(size_t t, struct HcGraph **out);

/**
 * Exact largest minimum degree of an `n`-vertex graph with a vertex in no
 * copy of the motif. `budget_ms = 0` means unlimited. `witness` may be NULL.
 *
 * # Safety
 * `motif` must be a NUL-terminated string and `value` writable.
 */
enum HcStatus hc_max_delta1_no_cover(size_t n,
                                     const char *motif,
                                     uint64_t budget_ms,
                                     size_t *value,
                                     struct HcGraph **witness);

/**
 * Decimal expansion of d⋆(n) to `digits` significant digits; free with
 * [`hc_string_free`].
 *
 * # Safety
 * `out` must be writable.
 */
enum HcStatus hc_d_star(uint64_t n, uint64_t digits, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HYPERCOVER_H */
