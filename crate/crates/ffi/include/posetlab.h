#ifndef POSETLAB_H
#define POSETLAB_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every call.
 */
typedef enum {
  PL_STATUS_OK = 0,
  PL_STATUS_NULL_POINTER = 1,
  PL_STATUS_INVALID_UTF8 = 2,
  PL_STATUS_PARSE = 3,
  PL_STATUS_PRECONDITION = 4,
  PL_STATUS_UNSUPPORTED = 5,
  /**
   * A Rust panic was caught at the boundary.
   */
  PL_STATUS_INTERNAL = 6,
} PlStatus;

/**
 * Which subgraph poset to build.
 */
typedef enum {
  PL_POSET_KIND_SUB = 0,
  PL_POSET_KIND_FOR = 1,
  PL_POSET_KIND_X = 2,
  PL_POSET_KIND_C = 3,
  PL_POSET_KIND_CX = 4,
  PL_POSET_KIND_CC = 5,
} PlPosetKind;

/**
 * Outcome of a verifier or suite.
 */
typedef enum {
  PL_VERDICT_PASS = 0,
  PL_VERDICT_HOMOLOGY_ONLY = 1,
  PL_VERDICT_FAIL = 2,
} PlVerdict;

/**
 * Opaque multigraph.
 */
typedef struct PlGraph PlGraph;

/**
 * Opaque reduced homology of an order complex.
 */
typedef struct PlHomology PlHomology;

/**
 * Opaque finite poset.
 */
typedef struct PlPoset PlPoset;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *pl_last_error(void);

/**
 * Library version as a static string.
 */
const char *pl_version(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void pl_string_free(char *s);

/**
 * Parses a graph alias (`theta`, `rose3`, ...), a canonical key such as
 * `2|0-1,0-1,0-1`, or a path to a JSON graph.
 *
 * # Safety
 * `spec` must be a NUL-terminated string; `out` a writable pointer.
 */
PlStatus pl_graph_parse(const char *spec, PlGraph **out);

/**
 * # Safety
 * `g` must be a live handle or null.
 */
void pl_graph_free(PlGraph *g);

/**
 * # Safety
 * `g` must be a live handle; `out` writable.
 */
PlStatus pl_graph_rank(const PlGraph *g, size_t *out);

/**
 * # Safety
 * `g` must be a live handle; `out` writable.
 */
PlStatus pl_graph_edge_count(const PlGraph *g, size_t *out);

/**
 * # Safety
 * `g` must be a live handle; `out` writable.
 */
PlStatus pl_graph_has_separating_edge(const PlGraph *g, bool *out);

/**
 * Isomorphism-invariant key; free with `pl_string_free`.
 *
 * # Safety
 * `g` must be a live handle; `out` writable.
 */
PlStatus pl_graph_canonical_key(const PlGraph *g, char **out);

/**
 * Number of spine graphs of `rank` (2 to 4) up to isomorphism.
 *
 * # Safety
 * `out` must be writable.
 */
PlStatus pl_enumerate_count(size_t rank, size_t *out);

/**
 * Spine graphs of `rank` as a JSON array of `{key, graph}`.
 *
 * # Safety
 * `out` must be writable.
 */
PlStatus pl_enumerate_json(size_t rank, char **out);

/**
 * # Safety
 * `g` must be a live handle; `out` writable.
 */
PlStatus pl_poset_build(const PlGraph *g, PlPosetKind kind, PlPoset **out);

/**
 * Reads a poset from `{"labels": [...], "covers": [[i, j], ...]}`.
 *
 * # Safety
 * `json` must be NUL-terminated; `out` writable.
 */
PlStatus pl_poset_from_json(const char *json, PlPoset **out);

/**
 * # Safety
 * `p` must be a live handle or null.
 */
void pl_poset_free(PlPoset *p);

/**
 * # Safety
 * `p` must be a live handle; `out` writable.
 */
PlStatus pl_poset_len(const PlPoset *p, size_t *out);

/**
 * # Safety
 * `p` must be a live handle; `out` writable.
 */
PlStatus pl_poset_to_json(const PlPoset *p, char **out);

/**
 * # Safety
 * `p` must be a live handle; `out` writable.
 */
PlStatus pl_poset_to_dot(const PlPoset *p, char **out);

/**
 * Reduced integral homology of the order complex.
 *
 * # Safety
 * `p` must be a live handle; `out` writable.
 */
PlStatus pl_homology_compute(const PlPoset *p, PlHomology **out);

/**
 * # Safety
 * `h` must be a live handle or null.
 */
void pl_homology_free(PlHomology *h);

/**
 * Reduced Betti number in `degree` (0 outside the computed range).
 *
 * # Safety
 * `h` must be a live handle; `out` writable.
 */
PlStatus pl_homology_betti(const PlHomology *h, ptrdiff_t degree, size_t *out);

/**
 * Number of torsion factors in `degree`.
 *
 * # Safety
 * `h` must be a live handle; `out` writable.
 */
PlStatus pl_homology_torsion_count(const PlHomology *h, ptrdiff_t degree, size_t *out);

/**
 * # Safety
 * `h` must be a live handle; `out` writable.
 */
PlStatus pl_homology_is_trivial(const PlHomology *h, bool *out);

/**
 * # Safety
 * `h` must be a live handle; `out` writable.
 */
PlStatus pl_homology_to_json(const PlHomology *h, char **out);

/**
 * Runs one verifier (`x`, `cx`, `retraction`, `generators`, `sub`, `for`,
 * `duality`, `relations`, `fiber`, `fiber-connected`). The record is
 * written as JSON to `out_json` when that is non-null.
 *
 * # Safety
 * `g` must be a live handle, `check` NUL-terminated, `verdict` writable and
 * `out_json` writable or null.
 */
PlStatus pl_verify(const PlGraph *g, const char *check, PlVerdict *verdict, char **out_json);

/**
 * Runs a named suite (`rank2`, `rank3`, `duality`, ...). `verdict` is
 * `Fail` if any record failed; the report JSON goes to `out_json` when
 * non-null. Thread count follows `POSETLAB_THREADS`.
 *
 * # Safety
 * `suite` must be NUL-terminated, `verdict` writable and `out_json`
 * writable or null.
 */
PlStatus pl_suite_run(const char *suite, PlVerdict *verdict, char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* POSETLAB_H */
