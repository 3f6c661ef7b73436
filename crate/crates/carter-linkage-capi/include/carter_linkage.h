#ifndef CARTER_LINKAGE_H
#define CARTER_LINKAGE_H

/* Generated by cbindgen from the carter-linkage-capi sources. Do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call in this interface.
 */
typedef enum {
  /**
   * The call succeeded.
   */
  ClkStatus_Ok = 0,
  /**
   * A required pointer argument was null.
   */
  ClkStatus_NullArgument = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  ClkStatus_InvalidUtf8 = 2,
  /**
   * A diagram or root system name is outside the supported catalog.
   */
  ClkStatus_UnknownName = 3,
  /**
   * The input was understood but rejected, for example a matrix that
   * is not a unit form or a transition between mismatched orders.
   */
  ClkStatus_InvalidInput = 4,
  /**
   * No set of roots in the requested ambient system realizes the diagram.
   */
  ClkStatus_NoEmbedding = 5,
  /**
   * No single root exchange connects the two diagrams.
   */
  ClkStatus_NoTransition = 6,
  /**
   * An internal invariant failed; this indicates a library bug.
   */
  ClkStatus_Internal = 7,
} ClkStatus;

/**
 * Opaque handle to a parsed Carter diagram.
 */
typedef struct ClkDiagram ClkDiagram;

/**
 * Opaque handle to an enumerated linkage system.
 */
typedef struct ClkSystem ClkSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on the calling thread.
 *
 * The returned pointer is owned by the library and stays valid until the
 * next failing call on the same thread.  Before any failure it points at
 * an empty string.
 */
const char *clk_last_error_message(void);

/**
 * Release a string returned through a `char **` out parameter.
 *
 * Passing null is a no-op.
 */
void clk_string_free(char *s);

/**
 * Parse a diagram name such as `"D5(a1)"` or `"E8"` into a handle.
 *
 * On success `*out` owns the new handle; release it with
 * [`clk_diagram_free`].
 */
ClkStatus clk_diagram_parse(const char *name, ClkDiagram **out);

/**
 * Release a diagram handle.  Passing null is a no-op.
 */
void clk_diagram_free(ClkDiagram *d);

/**
 * Number of vertices of the diagram, or 0 if the handle is null.
 */
size_t clk_diagram_order(const ClkDiagram *d);

/**
 * Canonical name of the diagram, for example `"D6(a2)"`.
 */
ClkStatus clk_diagram_name(const ClkDiagram *d, char **out);

/**
 * JSON description of the diagram: vertices, signed edges, cycle count.
 */
ClkStatus clk_diagram_json(const ClkDiagram *d, char **out);

/**
 * Graphviz rendering of the diagram, solid edges for sign -1 and dotted
 * edges for sign +1.
 */
ClkStatus clk_diagram_dot(const ClkDiagram *d, char **out);

/**
 * JSON document with the partial Cartan matrix, its inverse and its
 * determinant.
 */
ClkStatus clk_gram_json(const ClkDiagram *d, char **out);

/**
 * Size of the criterion set of the diagram, written to `*out`.
 */
ClkStatus clk_criterion_total(const ClkDiagram *d, size_t *out);

/**
 * Enumerate the full linkage system of the diagram.
 *
 * On success `*out` owns the new handle; release it with
 * [`clk_system_free`].
 */
ClkStatus clk_linkage_enumerate(const ClkDiagram *d, ClkSystem **out);

/**
 * Release a linkage system handle.  Passing null is a no-op.
 */
void clk_system_free(ClkSystem *s);

/**
 * Number of label vectors in the criterion set, or 0 if the handle is
 * null.
 */
size_t clk_system_total(const ClkSystem *s);

/**
 * JSON description of the linkage system: base diagram, realized
 * partials per ambient type and the criterion total.
 */
ClkStatus clk_system_json(const ClkSystem *s, char **out);

/**
 * JSON document partitioning the criterion set into dual Weyl orbits,
 * grouped by the common value p of the inverse form on each class.
 */
ClkStatus clk_orbits_json(const ClkDiagram *d, char **out);

/**
 * Reduce the unit form of the diagram to a disjoint union of simply
 * laced Dynkin forms and return the certificate as JSON.
 */
ClkStatus clk_reduce_diagram_json(const ClkDiagram *d, char **out);

/**
 * Reduce a unit form given as matrix text, rows separated by `;` and
 * entries by whitespace, for example `"2 -1; -1 2"`.  Returns the same
 * certificate document as [`clk_reduce_diagram_json`].
 */
ClkStatus clk_reduce_matrix_json(const char *matrix, char **out);

/**
 * Smallest and largest eigenvalue of the partial Cartan matrix, written
 * to `*min` and `*max`.
 */
ClkStatus clk_spectrum_bounds(const ClkDiagram *d, double *min, double *max);

/**
 * Find the single root exchange carrying one diagram to another of the
 * same order and return the certificate as JSON.
 *
 * The source diagram is realized inside the root system of its own type
 * and rank.  The document records the moved vertex, the replacement
 * root, the exchange matrix and whether the full verification passed.
 */
ClkStatus clk_transition_json(const char *from, const char *to, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CARTER_LINKAGE_H */
