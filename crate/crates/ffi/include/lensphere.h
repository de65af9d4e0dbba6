#ifndef LENSPHERE_H
#define LENSPHERE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Complexes that need nothing beyond a census; dual trees have their own call.
 */
typedef enum LsComplexKind {
  LS_COMPLEX_KIND_DISK = 0,
  LS_COMPLEX_KIND_PRIMITIVE = 1,
  LS_COMPLEX_KIND_P_PRIME = 2,
  LS_COMPLEX_KIND_SPHERE = 3,
} LsComplexKind;

typedef enum LsSide {
  LS_SIDE_V = 0,
  LS_SIDE_W = 1,
} LsSide;

typedef enum LsStatus {
  LS_STATUS_OK = 0,
  LS_STATUS_NULL_POINTER = 1,
  LS_STATUS_INVALID_ARGUMENT = 2,
  LS_STATUS_INVALID_LENS = 3,
  LS_STATUS_PRECONDITION = 4,
  LS_STATUS_CACHE_MISMATCH = 5,
  LS_STATUS_INTERNAL = 6,
} LsStatus;

/**
 * Disk sets of both handlebodies at one budget.
 */
typedef struct LsCensus LsCensus;

/**
 * Seed Heegaard diagram of a lens space.
 */
typedef struct LsDiagram LsDiagram;

/**
 * An explored complex.
 */
typedef struct LsGraph LsGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next call on the same thread.
 */
const char *ls_last_error(void);

/**
 * Version tag of the surface model stamped on every artifact.
 */
const char *ls_model_version(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void ls_string_free(char *s);

/**
 * Builds the seed diagram of L(p, q).
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum LsStatus ls_diagram_new(int64_t p, int64_t q, struct LsDiagram **out);

/**
 * # Safety
 * `d` must be null or a handle from `ls_diagram_new`, not yet freed.
 */
void ls_diagram_free(struct LsDiagram *d);

/**
 * Writes the six seed intersection numbers (α1α2, β1β2, α2β2, α1β2, α2β1, α1β1).
 *
 * # Safety
 * `d` must be a live diagram; `out` must be valid for six writes.
 */
enum LsStatus ls_diagram_seed_intersections(const struct LsDiagram *d, uint32_t *out);

/**
 * The diagram's preset document as JSON.
 *
 * # Safety
 * `d` must be a live diagram; `out` must be valid for writes.
 */
enum LsStatus ls_diagram_preset_json(const struct LsDiagram *d, char **out);

/**
 * Enumerates both disk sets at a per-edge budget.
 *
 * # Safety
 * `d` must be a live diagram; `out` must be valid for writes.
 */
enum LsStatus ls_census_new(const struct LsDiagram *d, uint32_t max_weight, struct LsCensus **out);

/**
 * # Safety
 * `c` must be null or a handle from `ls_census_new`, not yet freed.
 */
void ls_census_free(struct LsCensus *c);

/**
 * Number of primitive disks on one side.
 *
 * # Safety
 * `c` must be a live census; `out` must be valid for writes.
 */
enum LsStatus ls_census_primitive_count(const struct LsCensus *c, enum LsSide side, size_t *out);

/**
 * Builds one complex of the V side (or the sphere complex) from a census.
 *
 * # Safety
 * `c` must be a live census; `out` must be valid for writes.
 */
enum LsStatus ls_graph_build(const struct LsCensus *c,
                             enum LsComplexKind kind,
                             struct LsGraph **out);

/**
 * Dual complex of the primitive V-disk with key `base`.
 *
 * # Safety
 * `c` must be a live census, `base` a NUL-terminated string; `out` must be
 * valid for writes.
 */
enum LsStatus ls_graph_dual_tree(const struct LsCensus *c, const char *base, struct LsGraph **out);

/**
 * Parses a graph document.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be valid for writes.
 */
enum LsStatus ls_graph_from_json(const char *json, struct LsGraph **out);

/**
 * # Safety
 * `g` must be null or a graph handle from this library, not yet freed.
 */
void ls_graph_free(struct LsGraph *g);

/**
 * Vertex count; zero for a null handle.
 *
 * # Safety
 * `g` must be null or a live graph.
 */
size_t ls_graph_vertex_count(const struct LsGraph *g);

/**
 * Edge count; zero for a null handle.
 *
 * # Safety
 * `g` must be null or a live graph.
 */
size_t ls_graph_edge_count(const struct LsGraph *g);

/**
 * Connected component count; zero for a null handle.
 *
 * # Safety
 * `g` must be null or a live graph.
 */
size_t ls_graph_component_count(const struct LsGraph *g);

/**
 * # Safety
 * `g` must be a live graph; `out` must be valid for writes.
 */
enum LsStatus ls_graph_is_forest(const struct LsGraph *g, bool *out);

/**
 * # Safety
 * `g` must be a live graph; `out` must be valid for writes.
 */
enum LsStatus ls_graph_to_json(const struct LsGraph *g, char **out);

/**
 * # Safety
 * `g` must be a live graph; `out` must be valid for writes.
 */
enum LsStatus ls_graph_to_dot(const struct LsGraph *g, char **out);

/**
 * Runs a named suite at `max_weight`; the census budget must cover what the
 * suite needs. `passed` receives the overall verdict and `report`, when not
 * null, the JSON report.
 *
 * # Safety
 * `c` must be a live census, `suite` a NUL-terminated string; `passed` must
 * be valid for writes; `report` may be null.
 */
enum LsStatus ls_verify(const struct LsCensus *c,
                        const char *suite,
                        uint32_t max_weight,
                        bool *passed,
                        char **report);

/**
 * Primitivity of a cyclic word in x, y (inverses X, Y).
 *
 * # Safety
 * `word` must be a NUL-terminated string; `out` must be valid for writes.
 */
enum LsStatus ls_is_primitive_word(const char *word, bool *out);

/**
 * Geometric intersection number of the free homotopy classes of two surface
 * words in a, b, c, d (inverses A, B, C, D).
 *
 * # Safety
 * `a` and `b` must be NUL-terminated strings; `out` must be valid for writes.
 */
enum LsStatus ls_intersection_number(const char *a, const char *b, uint32_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LENSPHERE_H */
