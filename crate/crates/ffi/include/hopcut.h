#ifndef HOPCUT_H
#define HOPCUT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Distance reported for vertices the source cannot reach.
 */
#define HC_UNREACHED 18446744073709551615ull

typedef enum HcStatus {
  HC_STATUS_OK = 0,
  HC_STATUS_INVALID_ARGUMENT = 1,
  HC_STATUS_NULL_POINTER = 2,
  HC_STATUS_IO = 3,
  HC_STATUS_PARSE = 4,
  HC_STATUS_CYCLIC = 5,
  HC_STATUS_ORACLE_CAP = 6,
  HC_STATUS_WEIGHT_BOUND = 7,
  HC_STATUS_PANIC = 8,
} HcStatus;

typedef enum HcPreset {
  HC_PRESET_DESK = 0,
  HC_PRESET_PAPER = 1,
} HcPreset;

/**
 * A shortcut set or hopset: a list of added edges.
 */
typedef struct HcAugment HcAugment;

/**
 * A directed graph, weighted or not.
 */
typedef struct HcGraph HcGraph;

/**
 * Oracle verdicts. Checks that do not apply to the augmentation kind
 * (distances for a shortcut set) are reported as `true`.
 */
typedef struct HcVerifyResult {
  bool ok;
  bool edges_valid;
  bool reach_preserved;
  bool dist_preserved;
  bool approx_holds;
  uint32_t beta_meas;
  size_t size_h;
} HcVerifyResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the calling thread's last error message into `buf` (NUL-terminated,
 * truncated to fit) and returns the full message length in bytes, excluding
 * the terminator. Pass a null `buf` to query the length.
 *
 * # Safety
 * `buf` must be null or point to `len` writable bytes.
 */
size_t hc_last_error_message(char *buf, size_t len);

/**
 * Builds a graph from parallel arrays `src[i] → dst[i]`. With a null
 * `weights` the graph is unweighted. Parallel edges collapse (keeping the
 * lightest), self-loops are dropped.
 *
 * # Safety
 * `src`, `dst` and (if non-null) `weights` must point to `m` elements; `out`
 * must be a valid pointer to write the handle to.
 */
enum HcStatus hc_graph_from_edges(size_t n,
                                  const uint32_t *src,
                                  const uint32_t *dst,
                                  const uint64_t *weights,
                                  size_t m,
                                  struct HcGraph **out);

/**
 * Reads an edge-list file; weighted if its header carries the `weighted` flag.
 *
 * # Safety
 * `path` must be a NUL-terminated string; `out` a valid pointer.
 */
enum HcStatus hc_graph_read(const char *path, struct HcGraph **out);

/**
 * # Safety
 * `g` must be null or a handle from this library not yet freed.
 */
void hc_graph_free(struct HcGraph *g);

/**
 * # Safety
 * `g` must be a live handle.
 */
size_t hc_graph_vertex_count(const struct HcGraph *g);

/**
 * # Safety
 * `g` must be a live handle.
 */
size_t hc_graph_edge_count(const struct HcGraph *g);

/**
 * # Safety
 * `g` must be a live handle.
 */
bool hc_graph_is_weighted(const struct HcGraph *g);

/**
 * Shortcut set for the graph's reachability (weights are ignored).
 *
 * # Safety
 * `g` must be a live handle; `out` a valid pointer.
 */
enum HcStatus hc_build_shortcut(const struct HcGraph *g,
                                enum HcPreset preset,
                                uint64_t seed,
                                bool tc_prune,
                                struct HcAugment **out);

/**
 * `(β, ε)`-hopset with `ε = eps_num / eps_den`. Unweighted graphs are
 * treated as unit-weight.
 *
 * # Safety
 * `g` must be a live handle; `out` a valid pointer.
 */
enum HcStatus hc_build_hopset(const struct HcGraph *g,
                              enum HcPreset preset,
                              uint64_t eps_num,
                              uint64_t eps_den,
                              uint64_t seed,
                              bool trunc_prune,
                              struct HcAugment **out);

/**
 * # Safety
 * `h` must be null or a handle from this library not yet freed.
 */
void hc_augment_free(struct HcAugment *h);

/**
 * # Safety
 * `h` must be a live handle.
 */
size_t hc_augment_len(const struct HcAugment *h);

/**
 * Edge `i` in ascending `(u, v)` order. `w` receives the weight, or 1 for a
 * shortcut set; it may be null.
 *
 * # Safety
 * `h` must be a live handle; `u` and `v` valid pointers; `w` null or valid.
 */
enum HcStatus hc_augment_edge(const struct HcAugment *h,
                              size_t i,
                              uint32_t *u,
                              uint32_t *v,
                              uint64_t *w);

/**
 * Marks `mask[t] = 1` for every vertex reachable from `s` in `g ∪ h` (`h`
 * may be null) and 0 otherwise. `count` receives the number reached and may
 * be null.
 *
 * # Safety
 * `g` live; `h` null or live; `mask` points to `mask_len` bytes.
 */
enum HcStatus hc_reach(const struct HcGraph *g,
                       const struct HcAugment *h,
                       uint32_t s,
                       uint8_t *mask,
                       size_t mask_len,
                       size_t *count);

/**
 * Approximate distances from `s`, each within `(1 + ε)` of the truth;
 * [`HC_UNREACHED`] for unreachable vertices.
 *
 * # Safety
 * `g` live; `dist` points to `dist_len` elements.
 */
enum HcStatus hc_sssp(const struct HcGraph *g,
                      uint32_t s,
                      enum HcPreset preset,
                      uint64_t eps_num,
                      uint64_t eps_den,
                      uint64_t seed,
                      uint64_t *dist,
                      size_t dist_len);

/**
 * Exact oracle check of a shortcut set. Refuses graphs over the default
 * oracle cap with [`HcStatus::OracleCap`].
 *
 * # Safety
 * `g`, `h` live; `out` valid.
 */
enum HcStatus hc_verify_shortcut(const struct HcGraph *g,
                                 const struct HcAugment *h,
                                 struct HcVerifyResult *out);

/**
 * Exact oracle check of a hopset at `ε = eps_num / eps_den`.
 *
 * # Safety
 * `g`, `h` live; `out` valid.
 */
enum HcStatus hc_verify_hopset(const struct HcGraph *g,
                               const struct HcAugment *h,
                               uint64_t eps_num,
                               uint64_t eps_den,
                               struct HcVerifyResult *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HOPCUT_H */
