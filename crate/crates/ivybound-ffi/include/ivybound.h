#ifndef IVYBOUND_H
#define IVYBOUND_H

/* Generated by cbindgen — do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code of every fallible call.
 */
typedef enum IvyStatus {
  IvyStatus_Ok = 0,
  /**
   * Malformed edge-list or intervention text.
   */
  IvyStatus_ParseError = 1,
  /**
   * A parameter violates the documented preconditions.
   */
  IvyStatus_InvalidParameter = 2,
  /**
   * An enumeration budget was exhausted.
   */
  IvyStatus_BudgetExceeded = 3,
  /**
   * A required pointer argument was NULL.
   */
  IvyStatus_NullPointer = 4,
  /**
   * A string argument was not valid UTF-8.
   */
  IvyStatus_InvalidUtf8 = 5,
  /**
   * An internal invariant failed; see `ivy_last_error_message`.
   */
  IvyStatus_InternalError = 6,
} IvyStatus;

/**
 * Which intervention-set construction `ivy_design` runs.
 */
typedef enum IvyDesignMode {
  /**
   * Atomic interventions on every non-sink vertex.
   */
  IvyDesignMode_Atomic = 0,
  /**
   * A single multi-node intervention.
   */
  IvyDesignMode_MultiNode = 1,
  /**
   * The multi-node intervention split into chunks of at most k targets.
   */
  IvyDesignMode_Chunked = 2,
} IvyDesignMode;

/**
 * Opaque DAG handle.
 */
typedef struct IvyDag IvyDag;

/**
 * Opaque intervention-set handle.
 */
typedef struct IvyInterventions IvyInterventions;

/**
 * Lower-bound report of one DAG.
 */
typedef struct IvyBoundsReport {
  size_t n;
  size_t r;
  size_t r_star;
  size_t omega;
  size_t our_bound;
  size_t prior_bound;
} IvyBoundsReport;

/**
 * Size and certificate of a constructed intervention set.
 */
typedef struct IvyDesignReport {
  /**
   * Number of interventions, the empty one not counted.
   */
  size_t size;
  /**
   * Re-verified full-orientation verdict.
   */
  bool certified;
} IvyDesignReport;

/**
 * Outcome of the exact atomic-intervention search.
 */
typedef struct IvyOracleReport {
  size_t optimal_size;
  uint64_t subsets_checked;
  bool budget_hit;
} IvyOracleReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failing call on this thread. The pointer stays valid
 * until the next failing call; do not free it.
 */
const char *ivy_last_error_message(void);

/**
 * Parse an edge list (`u -> v` per line, `#` comments) describing a DAG.
 *
 * # Safety
 * `edge_list` must point to a NUL-terminated string and `out` must be a
 * valid pointer.
 */
enum IvyStatus ivy_dag_parse(const char *edge_list, struct IvyDag **out);

/**
 * Release a DAG handle. NULL is accepted.
 *
 * # Safety
 * `dag` must be NULL or a pointer returned by [`ivy_dag_parse`] that has
 * not been freed yet.
 */
void ivy_dag_free(struct IvyDag *dag);

/**
 * Number of vertices of a DAG handle.
 *
 * # Safety
 * `dag` must be a live handle.
 */
size_t ivy_dag_vertex_count(const struct IvyDag *dag);

/**
 * Serialize a DAG handle back to the edge-list format.
 *
 * # Safety
 * `dag` must be a live handle; `out` must be valid. The returned string is
 * freed with [`ivy_string_free`].
 */
enum IvyStatus ivy_dag_to_edge_list(const struct IvyDag *dag, char **out);

/**
 * Parse an intervention-set file (one comma-separated intervention per
 * line, `#` comments, empty intervention implicit) against a DAG's vertex
 * names.
 *
 * # Safety
 * `dag` must be a live handle, `text` a NUL-terminated string, `out` valid.
 */
enum IvyStatus ivy_interventions_parse(const struct IvyDag *dag,
                                       const char *text,
                                       struct IvyInterventions **out);

/**
 * Release an intervention-set handle. NULL is accepted.
 *
 * # Safety
 * `iv` must be NULL or a live handle from [`ivy_interventions_parse`].
 */
void ivy_interventions_free(struct IvyInterventions *iv);

/**
 * Fill `report` with the lower-bound statistics of a DAG.
 *
 * # Safety
 * `dag` must be a live handle and `report` a valid pointer.
 */
enum IvyStatus ivy_lower_bounds(const struct IvyDag *dag, struct IvyBoundsReport *report);

/**
 * Construct an intervention set. `k` is only read in chunked mode. The
 * intervention-set text goes to `text_out` (freed with
 * [`ivy_string_free`]); size and certificate land in `report`.
 *
 * # Safety
 * `dag` must be a live handle; `report` and `text_out` must be valid.
 */
enum IvyStatus ivy_design(const struct IvyDag *dag,
                          enum IvyDesignMode mode,
                          size_t k,
                          struct IvyDesignReport *report,
                          char **text_out);

/**
 * Does the intervention set fully orient the DAG's equivalence class?
 *
 * # Safety
 * `dag` and `iv` must be live handles; `out` must be valid.
 */
enum IvyStatus ivy_verify(const struct IvyDag *dag, const struct IvyInterventions *iv, bool *out);

/**
 * Serialize the interventional essential graph as an edge list.
 *
 * # Safety
 * `dag` and `iv` must be live handles; `out` must be valid. The string is
 * freed with [`ivy_string_free`].
 */
enum IvyStatus ivy_essential_edge_list(const struct IvyDag *dag,
                                       const struct IvyInterventions *iv,
                                       char **out);

/**
 * Exact smallest atomic intervention set, spending at most `budget`
 * orientation checks. The witness targets are written as a comma-separated
 * name list to `witness_out` (freed with [`ivy_string_free`]). When the
 * budget runs out the call still returns `Ok` with `budget_hit` set and
 * partial fields.
 *
 * # Safety
 * `dag` must be a live handle; `report` and `witness_out` must be valid.
 */
enum IvyStatus ivy_optimal_atomic(const struct IvyDag *dag,
                                  uint64_t budget,
                                  struct IvyOracleReport *report,
                                  char **witness_out);

/**
 * Release a string returned by this library. NULL is accepted.
 *
 * # Safety
 * `s` must be NULL or a string pointer produced by this library that has
 * not been freed yet.
 */
void ivy_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* IVYBOUND_H */
