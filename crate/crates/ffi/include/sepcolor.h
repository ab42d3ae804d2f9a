/* C interface for the sepcolor edge-coloring library. Generated by cbindgen; do not edit. */

#ifndef SEPCOLOR_H
#define SEPCOLOR_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible entry point.
 */
typedef enum SepStatus {
  SEP_STATUS_OK = 0,
  /**
   * Null pointer, undersized buffer, or otherwise unusable argument.
   */
  SEP_STATUS_INVALID_ARGUMENT = 1,
  /**
   * Input text is not a valid document.
   */
  SEP_STATUS_PARSE = 2,
  /**
   * The graph is not bipartite (an odd cycle exists).
   */
  SEP_STATUS_NOT_BIPARTITE = 3,
  /**
   * The witness block is missing for an operation that needs one.
   */
  SEP_STATUS_MISSING_WITNESS = 4,
  /**
   * The witness does not validate against the graph.
   */
  SEP_STATUS_INVALID_WITNESS = 5,
  /**
   * A produced coloring failed verification.
   */
  SEP_STATUS_VERIFY_FAILED = 6,
  /**
   * Internal invariant failure; indicates a bug, not bad input.
   */
  SEP_STATUS_INTERNAL = 7,
} SepStatus;

/**
 * Coloring algorithm selector for [`sep_color`].
 */
typedef enum SepColorMode {
  /**
   * Barrier/matching pipeline; requires a witness block.
   */
  SEP_COLOR_MODE_PIPELINE = 0,
  /**
   * Seeded greedy baseline (at most 2*delta - 1 colors).
   */
  SEP_COLOR_MODE_GREEDY = 1,
  /**
   * Plain König coloring with delta colors.
   */
  SEP_COLOR_MODE_KONIG = 2,
} SepColorMode;

/**
 * Opaque handle: a coloring document produced by [`sep_color`] or parsed
 * from JSON.
 */
typedef struct SepColoring SepColoring;

/**
 * Opaque handle: a loaded graph document (graph, optional bipartition,
 * optional witness, provenance).
 */
typedef struct SepInstance SepInstance;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the most recent failure on this thread, or null if
 * nothing failed yet. The pointer stays valid until the next failure on the
 * same thread; do not free it.
 */
const char *sep_last_error_message(void);

/**
 * Parses a graph document (JSON, format_version 1) into an instance handle.
 */
enum SepStatus sep_instance_from_json(const char *json, struct SepInstance **out);

/**
 * Even cycle C_{2*n_half} with an s = 1 witness of alternating arcs.
 */
enum SepStatus sep_instance_generate_even_cycle(size_t n_half,
                                                size_t arc_length,
                                                size_t r,
                                                struct SepInstance **out);

/**
 * 4-regular torus grid with an s = 1 witness of alternating slabs.
 */
enum SepStatus sep_instance_generate_even_torus(size_t width,
                                                size_t height,
                                                size_t slab_thickness,
                                                size_t r,
                                                struct SepInstance **out);

/**
 * Ladder window of a two-ended graph. `rung_pattern`: 0 = every column,
 * 1 = even columns only.
 */
enum SepStatus sep_instance_generate_ladder(size_t length,
                                            uint32_t rung_pattern,
                                            size_t r,
                                            struct SepInstance **out);

/**
 * Seeded random bipartite graph with a trivial (s = 0) witness.
 */
enum SepStatus sep_instance_generate_random_bipartite(size_t n_left,
                                                      size_t n_right,
                                                      size_t max_degree,
                                                      uint64_t seed,
                                                      struct SepInstance **out);

/**
 * Serializes the instance back to its JSON document. The returned string
 * is byte-identical to what the CLI writes for the same instance.
 */
enum SepStatus sep_instance_to_json(const struct SepInstance *instance, char **out);

size_t sep_instance_vertex_count(const struct SepInstance *instance);

size_t sep_instance_edge_count(const struct SepInstance *instance);

size_t sep_instance_max_degree(const struct SepInstance *instance);

/**
 * Witness size s, or an error if the document has no witness block.
 */
enum SepStatus sep_instance_witness_size(const struct SepInstance *instance, size_t *out);

/**
 * Colors the instance. `radius_override` may be null for the paper-faithful
 * mode (witness radius must equal 10*delta + 1); `seed` only affects greedy
 * mode. The produced coloring has already passed `verify_coloring` (and,
 * for pipeline mode, `verify_bound`) when this returns `SEP_STATUS_OK`.
 */
enum SepStatus sep_color(const struct SepInstance *instance,
                         enum SepColorMode mode,
                         uint64_t seed,
                         const size_t *radius_override,
                         struct SepColoring **out);

/**
 * Parses a coloring document (JSON, format_version 1).
 */
enum SepStatus sep_coloring_from_json(const char *json, struct SepColoring **out);

enum SepStatus sep_coloring_to_json(const struct SepColoring *coloring, char **out);

size_t sep_coloring_palette_size(const struct SepColoring *coloring);

size_t sep_coloring_colors_used(const struct SepColoring *coloring);

/**
 * Number of per-edge color entries (aligned with the instance's canonical
 * edge order).
 */
size_t sep_coloring_edge_count(const struct SepColoring *coloring);

/**
 * Copies the per-edge colors into `buffer`. `buffer_len` must be at least
 * [`sep_coloring_edge_count`].
 */
enum SepStatus sep_coloring_colors(const struct SepColoring *coloring,
                                   size_t *buffer,
                                   size_t buffer_len);

/**
 * Verifies the coloring against the instance: properness always, plus the
 * delta + s bound when `check_bound` is set (requires a witness). On
 * success writes whether the checks passed to `out_pass`.
 */
enum SepStatus sep_verify(const struct SepInstance *instance,
                          const struct SepColoring *coloring,
                          bool check_bound,
                          bool *out_pass);

/**
 * Renders the colored instance as DOT text.
 */
enum SepStatus sep_export_dot(const struct SepInstance *instance,
                              const struct SepColoring *coloring,
                              char **out);

/**
 * Releases an instance handle. Null is a no-op.
 */
void sep_instance_free(struct SepInstance *instance);

/**
 * Releases a coloring handle. Null is a no-op.
 */
void sep_coloring_free(struct SepColoring *coloring);

/**
 * Releases a string returned by this library. Null is a no-op.
 */
void sep_string_free(char *text);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SEPCOLOR_H */
