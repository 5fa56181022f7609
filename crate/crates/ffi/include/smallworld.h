#ifndef SMALLWORLD_H
#define SMALLWORLD_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SwStatus {
  SW_STATUS_OK = 0,
  SW_STATUS_NULL_POINTER = 1,
  SW_STATUS_INVALID_UTF8 = 2,
  SW_STATUS_INVALID_ARGUMENT = 3,
  /**
   * Malformed input, I/O failure or out-of-range parameter.
   */
  SW_STATUS_INPUT = 4,
  /**
   * The graph is too small or disconnected for the requested metric.
   */
  SW_STATUS_DEGENERATE = 5,
  SW_STATUS_PANIC = 6,
} SwStatus;

typedef enum SwFormat {
  SW_FORMAT_EDGELIST = 0,
  SW_FORMAT_TABLE = 1,
} SwFormat;

typedef enum SwScope {
  SW_SCOPE_LCC = 0,
  SW_SCOPE_WHOLE = 1,
} SwScope;

typedef enum SwPolicy {
  SW_POLICY_INCLUDE = 0,
  SW_POLICY_EXCLUDE = 1,
} SwPolicy;

typedef enum SwDensityMode {
  SW_DENSITY_MODE_UNIPARTITE = 0,
  SW_DENSITY_MODE_BIPARTITE = 1,
} SwDensityMode;

typedef enum SwStrategy {
  SW_STRATEGY_RANDOM = 0,
  SW_STRATEGY_HUB = 1,
} SwStrategy;

/**
 * Opaque graph handle.
 */
typedef struct SwGraph SwGraph;

typedef struct SwPathStats {
  uint32_t diameter;
  double average_path_length;
  uint64_t reachable_pairs;
} SwPathStats;

typedef struct SwSmallWorld {
  double sigma;
  double c_observed;
  double c_random;
  double l_observed;
  double l_random;
  bool is_small_world;
} SwSmallWorld;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. Valid until the
 * next library call on the same thread.
 */
const char *sw_last_error(void);

/**
 * Reads and cleans a file. `format` is an `SwFormat` value.
 *
 * # Safety
 * `path` must be a NUL-terminated string; `out` must be writable.
 */
enum SwStatus sw_graph_from_path(const char *path,
                                 int format,
                                 bool case_fold,
                                 struct SwGraph **out);

/**
 * Like [`sw_graph_from_path`] but reads CSV text from memory.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum SwStatus sw_graph_from_str(const char *text, int format, bool case_fold, struct SwGraph **out);

/**
 * Builds a graph from `len` (startup, investor) label pairs.
 *
 * # Safety
 * `startups` and `investors` must each point to `len` NUL-terminated strings.
 */
enum SwStatus sw_graph_from_pairs(const char *const *startups,
                                  const char *const *investors,
                                  size_t len,
                                  struct SwGraph **out);

/**
 * Erdős–Rényi graph with exactly `m` edges.
 *
 * # Safety
 * `out` must be writable.
 */
enum SwStatus sw_generate_er(size_t n, size_t m, uint64_t seed, struct SwGraph **out);

/**
 * Watts–Strogatz ring of even degree `k` rewired with probability `p`.
 *
 * # Safety
 * `out` must be writable.
 */
enum SwStatus sw_generate_ws(size_t n, size_t k, double p, uint64_t seed, struct SwGraph **out);

/**
 * Barabási–Albert graph, `m_attach` edges per arriving node.
 *
 * # Safety
 * `out` must be writable.
 */
enum SwStatus sw_generate_ba(size_t n, size_t m_attach, uint64_t seed, struct SwGraph **out);

/**
 * Releases a handle. NULL is ignored.
 *
 * # Safety
 * `g` must come from this library and not be used afterwards.
 */
void sw_graph_free(struct SwGraph *g);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void sw_string_free(char *s);

/**
 * Node count, or 0 for a NULL handle.
 *
 * # Safety
 * `g` must be a live handle or NULL.
 */
size_t sw_graph_node_count(const struct SwGraph *g);

/**
 * Edge count, or 0 for a NULL handle.
 *
 * # Safety
 * `g` must be a live handle or NULL.
 */
size_t sw_graph_edge_count(const struct SwGraph *g);

/**
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum SwStatus sw_graph_degree(const struct SwGraph *g, uint32_t node, size_t *out);

/**
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum SwStatus sw_graph_density(const struct SwGraph *g, int mode, double *out);

/**
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum SwStatus sw_graph_average_clustering(const struct SwGraph *g, int policy, double *out);

/**
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum SwStatus sw_graph_triangle_count(const struct SwGraph *g, uint64_t *out);

/**
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum SwStatus sw_graph_path_stats(const struct SwGraph *g, int scope, struct SwPathStats *out);

/**
 * Full report as JSON with default options, named `name`.
 *
 * # Safety
 * `g` must be a live handle, `name` a NUL-terminated string and `out`
 * writable. The returned string is freed with [`sw_string_free`].
 */
enum SwStatus sw_graph_report_json(const struct SwGraph *g, const char *name, char **out);

/**
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum SwStatus sw_graph_small_world(const struct SwGraph *g,
                                   size_t samples,
                                   uint64_t seed,
                                   struct SwSmallWorld *out);

/**
 * Node-removal probe result as JSON.
 *
 * # Safety
 * `g` must be a live handle and `out` writable. The returned string is
 * freed with [`sw_string_free`].
 */
enum SwStatus sw_graph_robustness_json(const struct SwGraph *g,
                                       int strategy,
                                       double fraction,
                                       size_t trials,
                                       uint64_t seed,
                                       char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SMALLWORLD_H */
