#ifndef FUM_H
#define FUM_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/* Pass as both outer-dart ends to request the default outer face. */
#define FUM_DEFAULT_OUTER SIZE_MAX



typedef enum FumStatus {
  FUM_STATUS_OK = 0,
  FUM_STATUS_NULL_POINTER = 1,
  FUM_STATUS_INVALID_ARGUMENT = 2,
  FUM_STATUS_INVALID_EMBEDDING = 3,
  FUM_STATUS_INVALID_FORMAT = 4,
  FUM_STATUS_NOT_APPLICABLE = 5,
  FUM_STATUS_EXCEEDED = 6,
  FUM_STATUS_TIMED_OUT = 7,
  FUM_STATUS_BUFFER_TOO_SMALL = 8,
  FUM_STATUS_INTERNAL = 9,
} FumStatus;

/**
 * Class selector for `fum_color`.
 */
typedef enum FumClass {
  /**
   * Subcubic or outerplane.
   */
  FUM_CLASS_SUBCUBIC_OR_OUTERPLANE = 0,
  FUM_CLASS_QUADRANGULATION = 1,
} FumClass;

/**
 * Opaque plane graph handle.
 */
typedef struct FumGraph FumGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds a graph from CSR adjacency: the rotation of vertex `v` (clockwise)
 * is `neighbors[offsets[v]..offsets[v+1]]`. `offsets` has `n + 1` entries.
 *
 * # Safety
 * `offsets` must point to `n + 1` values, `neighbors` to `offsets[n]` values
 * (it may be null when that is 0) and `out` must be writable.
 */
enum FumStatus fum_graph_new(size_t n,
                             const size_t *offsets,
                             const size_t *neighbors,
                             size_t outer_tail,
                             size_t outer_head,
                             struct FumGraph **out);

/**
 * Decodes record `index` of a planar-code stream.
 *
 * # Safety
 * `bytes` must point to `len` readable bytes and `out` must be writable.
 */
enum FumStatus fum_graph_from_planar_code(const uint8_t *bytes,
                                          size_t len,
                                          size_t index,
                                          struct FumGraph **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `g` must come from this library and not be used afterwards.
 */
void fum_graph_free(struct FumGraph *g);

/**
 * # Safety
 * `g` must be null or a live handle.
 */
size_t fum_graph_vertex_count(const struct FumGraph *g);

/**
 * # Safety
 * `g` must be null or a live handle.
 */
size_t fum_graph_edge_count(const struct FumGraph *g);

/**
 * # Safety
 * `g` must be null or a live handle.
 */
size_t fum_graph_face_count(const struct FumGraph *g);

/**
 * Endpoints (smaller first) of edge `i` in the canonical edge order.
 *
 * # Safety
 * `g` must be a live handle; `u` and `v` must be writable.
 */
enum FumStatus fum_graph_edge(const struct FumGraph *g, size_t i, size_t *u, size_t *v);

/**
 * Exact FUM chromatic number with at most `max_k` colours. A zero timeout
 * means no limit.
 *
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum FumStatus fum_chi(const struct FumGraph *g,
                       uint32_t max_k,
                       uint64_t timeout_ms,
                       uint32_t *out);

/**
 * Exact FUM chromatic index with at most `max_k` colours.
 *
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum FumStatus fum_chi_edge(const struct FumGraph *g,
                            uint32_t max_k,
                            uint64_t timeout_ms,
                            uint32_t *out);

/**
 * Constructive FUM colouring with colours in `1..=4`, one per vertex.
 *
 * # Safety
 * `g` must be a live handle and `colors` must hold `len` values.
 */
enum FumStatus fum_color(const struct FumGraph *g,
                         enum FumClass class_,
                         uint32_t *colors,
                         size_t len);

/**
 * Constructive FUM edge colouring of a 2-connected graph, in edge order.
 *
 * # Safety
 * `g` must be a live handle and `colors` must hold `len` values.
 */
enum FumStatus fum_color_edge(const struct FumGraph *g, uint32_t *colors, size_t len);

/**
 * Sets `*valid` to 1 if `colors` is a FUM colouring, else 0.
 *
 * # Safety
 * `g` must be a live handle, `colors` must hold `len` values, `valid` writable.
 */
enum FumStatus fum_check_vertex(const struct FumGraph *g,
                                const uint32_t *colors,
                                size_t len,
                                int32_t *valid);

/**
 * Sets `*valid` to 1 if `colors` (in edge order) is a FUM edge colouring.
 *
 * # Safety
 * `g` must be a live handle, `colors` must hold `len` values, `valid` writable.
 */
enum FumStatus fum_check_edge(const struct FumGraph *g,
                              const uint32_t *colors,
                              size_t len,
                              int32_t *valid);

/**
 * Sets `*out` to 1 if the graph is subcubic, 2 if outerplane, 4 if a
 * quadrangulation, 8 if 2-connected (bitwise or).
 *
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum FumStatus fum_classify(const struct FumGraph *g, uint32_t *out);

/**
 * Copies the last error message of this thread, NUL-terminated and
 * truncated to `len` bytes, into `buf`. Returns the full message length
 * without the terminator. `buf` may be null to query the length.
 *
 * # Safety
 * `buf` must be null or hold `len` writable bytes.
 */
size_t fum_last_error(char *buf, size_t len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FUM_H */
