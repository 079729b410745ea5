#ifndef ENTCOUNT_H
#define ENTCOUNT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum EcStatus {
  EC_OK = 0,
  EC_NULL_POINTER = 1,
  EC_INVALID_UTF8 = 2,
  EC_INVALID_INPUT = 3,
  EC_CAP_EXCEEDED = 4,
  EC_PARSE = 5,
  EC_IO = 6,
  EC_INFEASIBLE = 7,
  EC_UNKNOWN_CHECK = 8,
  EC_PANIC = 9,
} EcStatus;

/**
 * A graph handle.
 */
typedef struct EcGraph EcGraph;

/**
 * A square 0-1 matrix handle.
 */
typedef struct EcMatrix EcMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a
 * success. Valid until the next call on the same thread.
 */
const char *ec_last_error(void);

/**
 * Library version as a static string.
 */
const char *ec_version(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void ec_string_free(char *s);

/**
 * Parses a graph in the text format.
 *
 * # Safety
 * `src` must be a valid C string and `out` a writable pointer.
 */
enum EcStatus ec_graph_parse(const char *src, struct EcGraph **out);

/**
 * Builds a named graph such as `k_dd:3`, `knd:12,3`, `cycle:5` or `h_wr`.
 *
 * # Safety
 * `spec` must be a valid C string and `out` a writable pointer.
 */
enum EcStatus ec_graph_named(const char *spec, struct EcGraph **out);

/**
 * # Safety
 * `g` must be null or a handle from this library, freed at most once.
 */
void ec_graph_free(struct EcGraph *g);

/**
 * # Safety
 * `g` must be a live handle and `out` a writable pointer.
 */
enum EcStatus ec_graph_order(const struct EcGraph *g, size_t *out);

/**
 * # Safety
 * `g` must be a live handle and `out` a writable pointer.
 */
enum EcStatus ec_graph_edge_count(const struct EcGraph *g, size_t *out);

/**
 * Parses a matrix in the text format (`matrix n` then `n` rows of 0/1).
 *
 * # Safety
 * `src` must be a valid C string and `out` a writable pointer.
 */
enum EcStatus ec_matrix_parse(const char *src, struct EcMatrix **out);

/**
 * # Safety
 * `m` must be null or a handle from this library, freed at most once.
 */
void ec_matrix_free(struct EcMatrix *m);

/**
 * Permanent, as a decimal string.
 *
 * # Safety
 * `m` must be a live handle and `out` a writable pointer.
 */
enum EcStatus ec_permanent(const struct EcMatrix *m, char **out);

/**
 * # Safety
 * `g` must be a live handle and `out` a writable pointer.
 */
enum EcStatus ec_perfect_matchings(const struct EcGraph *g, char **out);

/**
 * Matchings with exactly `t` edges.
 *
 * # Safety
 * `g` must be a live handle and `out` a writable pointer.
 */
enum EcStatus ec_matchings(const struct EcGraph *g, size_t t, char **out);

/**
 * All independent sets, the empty set included.
 *
 * # Safety
 * `g` must be a live handle and `out` a writable pointer.
 */
enum EcStatus ec_independent_sets(const struct EcGraph *g, char **out);

/**
 * Proper colourings with `q` colours.
 *
 * # Safety
 * `g` must be a live handle and `out` a writable pointer.
 */
enum EcStatus ec_colorings(const struct EcGraph *g, size_t q, char **out);

/**
 * Homomorphisms from `g` to `h`.
 *
 * # Safety
 * `g` and `h` must be live handles and `out` a writable pointer.
 */
enum EcStatus ec_hom(const struct EcGraph *g, const struct EcGraph *h, char **out);

/**
 * Runs a registered check. `params_json` may be null for defaults. The
 * JSON report list is written to `report_out` and `pass_out` gets 1 or 0.
 *
 * # Safety
 * String arguments must be valid C strings (or null where allowed) and
 * the output pointers writable.
 */
enum EcStatus ec_check_run(const char *name,
                           const char *params_json,
                           uint64_t seed,
                           char **report_out,
                           int32_t *pass_out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ENTCOUNT_H */
