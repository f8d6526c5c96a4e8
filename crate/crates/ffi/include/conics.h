#ifndef CONICS_H
#define CONICS_H

/* Generated by cbindgen from the conics-ffi crate. Do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code for every fallible call in this library.
 */
typedef enum {
  /**
   * The call succeeded and all out parameters are valid.
   */
  CONICS_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  CONICS_STATUS_NULL_ARGUMENT = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  CONICS_STATUS_INVALID_UTF8 = 2,
  /**
   * An expression could not be parsed; the message names the column.
   */
  CONICS_STATUS_PARSE_ERROR = 3,
  /**
   * The inputs were well formed but the operation is undefined for them,
   * for example pairing classes whose codimensions do not sum to 5.
   */
  CONICS_STATUS_DOMAIN_ERROR = 4,
  /**
   * The library caught an internal panic instead of unwinding into C.
   */
  CONICS_STATUS_PANIC = 5,
} ConicsStatus;

/**
 * Opaque handle to a homogeneous class in the ring.
 */
typedef struct ConicsClass ConicsClass;

/**
 * Opaque handle to the ambient ring with its intersection tables.
 */
typedef struct ConicsRing ConicsRing;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Create a ring handle with the standard intersection tables.
 *
 * The returned handle is never null and is released with
 * [`conics_ring_free`].
 */
ConicsRing *conics_ring_new(void);

/**
 * Release a ring handle. Passing null is a no-op.
 *
 * # Safety
 *
 * `ring` must be null or a pointer returned by [`conics_ring_new`] that has
 * not been freed already.
 */
void conics_ring_free(ConicsRing *ring);

/**
 * Parse an expression such as `"(H1+H2)*E1*E2"` into a class handle.
 *
 * On success writes a new handle to `out_class`; release it with
 * [`conics_class_free`]. On failure returns [`ConicsStatus::ParseError`]
 * for malformed input (the message reports the 1-based column) or
 * [`ConicsStatus::DomainError`] for well-formed input that mixes
 * codimensions.
 *
 * # Safety
 *
 * `ring` must be a live ring handle, `expr` a NUL-terminated string, and
 * `out_class` a valid pointer to writable memory.
 */
ConicsStatus conics_class_parse(const ConicsRing *ring, const char *expr, ConicsClass **out_class);

/**
 * Release a class handle. Passing null is a no-op.
 *
 * # Safety
 *
 * `class` must be null or a pointer produced by this library that has not
 * been freed already.
 */
void conics_class_free(ConicsClass *class_);

/**
 * Write the codimension of a class (0 through 5) to `out_codim`.
 *
 * # Safety
 *
 * `class` must be a live class handle and `out_codim` a valid pointer.
 */
ConicsStatus conics_class_codim(const ConicsClass *class_, size_t *out_codim);

/**
 * Write the canonical expression for a class, for example
 * `"2*H1^2 - H1*H2"`, to `out_str`. Free the string with
 * [`conics_string_free`].
 *
 * # Safety
 *
 * `class` must be a live class handle and `out_str` a valid pointer.
 */
ConicsStatus conics_class_to_string(const ConicsClass *class_, char **out_str);

/**
 * Evaluate a codimension-5 class against the fundamental class and write
 * the exact rational result, such as `"51"`, to `out_str`. Classes of any
 * other codimension are a [`ConicsStatus::DomainError`].
 *
 * # Safety
 *
 * `ring` and `class` must be live handles and `out_str` a valid pointer.
 */
ConicsStatus conics_intersection_number(const ConicsRing *ring,
                                        const ConicsClass *class_,
                                        char **out_str);

/**
 * Pair two classes of complementary codimension and write the exact
 * rational result to `out_str`. Codimensions that do not sum to 5 are a
 * [`ConicsStatus::DomainError`].
 *
 * # Safety
 *
 * `ring`, `left`, and `right` must be live handles and `out_str` a valid
 * pointer.
 */
ConicsStatus conics_pair(const ConicsRing *ring,
                         const ConicsClass *left,
                         const ConicsClass *right,
                         char **out_str);

/**
 * Write the fixed-point cell table for one space as a JSON document to
 * `out_str`. `space` is `"p5"`, `"m"`, or `"e1"`; anything else is a
 * [`ConicsStatus::DomainError`]. The document has the keys `space`, `rows`
 * (objects with `label` and `dimension`), and `betti` (cell counts by
 * dimension), matching the command-line tool's JSON output.
 *
 * # Safety
 *
 * `space` must be a NUL-terminated string and `out_str` a valid pointer.
 */
ConicsStatus conics_bb_cells_json(const char *space, char **out_str);

/**
 * Run the full verification suite and write the JSON report to `out_str`.
 * The document matches the command-line tool's `verify --format json`
 * output, minus its trailing newline, including the two expected benign
 * discrepancies.
 *
 * # Safety
 *
 * `out_str` must be a valid pointer.
 */
ConicsStatus conics_verify_json(char **out_str);

/**
 * Run the full verification suite and write its exit code to `out_code`:
 * 0 when every check matches, 3 when the only discrepancies are the known
 * benign ones, 1 when any check fails outright.
 *
 * # Safety
 *
 * `out_code` must be a valid pointer.
 */
ConicsStatus conics_verify_exit_code(int *out_code);

/**
 * Release a string returned by this library. Passing null is a no-op.
 *
 * # Safety
 *
 * `s` must be null or a pointer returned by this library that has not been
 * freed already.
 */
void conics_string_free(char *s);

/**
 * Return a copy of the message for the most recent failure on the calling
 * thread, or an empty string if the last call succeeded. Free the result
 * with [`conics_string_free`].
 */
char *conics_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CONICS_H */
