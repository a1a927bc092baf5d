#ifndef HYPERDECOMP_H
#define HYPERDECOMP_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HdStatus {
  HD_STATUS_OK = 0,
  /**
   * The computation ran but its answer is negative.
   */
  HD_STATUS_FAILED = 1,
  HD_STATUS_INVALID_ARGUMENT = 2,
  HD_STATUS_SIZE_CAP = 3,
  HD_STATUS_NULL_POINTER = 4,
  HD_STATUS_INTERNAL = 5,
} HdStatus;

typedef enum HdOutcome {
  HD_OUTCOME_POSITIVE = 0,
  HD_OUTCOME_POSITIVE_WITH_ZEROS = 1,
  HD_OUTCOME_HAS_NEGATIVE = 2,
  HD_OUTCOME_SINGULAR = 3,
  HD_OUTCOME_NO_COVER = 4,
} HdOutcome;

/**
 * Opaque decomposition certificate handle.
 */
typedef struct HdCertificate HdCertificate;

/**
 * Opaque t-graph handle.
 */
typedef struct HdGraph HdGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread. Empty after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *hd_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void hd_string_free(char *s);

/**
 * Parse a graph in `.tg` text form.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum HdStatus hd_graph_from_tg(const char *text, struct HdGraph **out);

/**
 * # Safety
 * `out` must be a valid pointer.
 */
enum HdStatus hd_graph_complete(size_t t, size_t v, struct HdGraph **out);

/**
 * Seeded random graph with every codegree at least `(1 - eps_num/eps_den)(v - t + 1)`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum HdStatus hd_graph_generate(size_t v,
                                size_t t,
                                uint64_t eps_num,
                                uint64_t eps_den,
                                uint64_t seed,
                                struct HdGraph **out);

/**
 * # Safety
 * `g` must be null or a handle from this library not yet freed.
 */
void hd_graph_free(struct HdGraph *g);

/**
 * Returns 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t hd_graph_t(const struct HdGraph *g);

/**
 * # Safety
 * `g` must be null or a live handle.
 */
size_t hd_graph_v(const struct HdGraph *g);

/**
 * # Safety
 * `g` must be null or a live handle.
 */
size_t hd_graph_edge_count(const struct HdGraph *g);

/**
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum HdStatus hd_graph_to_tg(const struct HdGraph *g, char **out);

/**
 * Density parameter epsilon as a `p/q` string.
 *
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum HdStatus hd_graph_density_epsilon(const struct HdGraph *g, char **out);

/**
 * Solve for a clique decomposition. `outcome` always receives the solver
 * status. On a positive outcome `cert` receives a verified certificate and the
 * call returns `Ok`; otherwise `*cert` is set to null and the call returns
 * `Failed`.
 *
 * # Safety
 * `g` must be a live handle; `outcome` and `cert` valid pointers.
 */
enum HdStatus hd_decompose(const struct HdGraph *g,
                           size_t k,
                           enum HdOutcome *outcome,
                           struct HdCertificate **cert);

/**
 * # Safety
 * `c` must be null or a live certificate handle.
 */
void hd_certificate_free(struct HdCertificate *c);

/**
 * Number of weighted cliques; 0 for a null handle.
 *
 * # Safety
 * `c` must be null or a live certificate handle.
 */
size_t hd_certificate_len(const struct HdCertificate *c);

/**
 * # Safety
 * `c` must be a live handle and `out` a valid pointer.
 */
enum HdStatus hd_certificate_to_json(const struct HdCertificate *c, char **out);

/**
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum HdStatus hd_certificate_from_json(const char *text, struct HdCertificate **out);

/**
 * Returns `Ok` for a valid certificate and `Failed` (with the reason in
 * [`hd_last_error`]) otherwise.
 *
 * # Safety
 * Both handles must be live.
 */
enum HdStatus hd_verify(const struct HdGraph *g, const struct HdCertificate *c);

/**
 * Johnson-scheme spectrum for `(t, k, v)` as JSON.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum HdStatus hd_spectrum_json(size_t t, size_t k, size_t v, char **out);

/**
 * Density threshold for `(t, k)` as a `p/q` string.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum HdStatus hd_epsilon_threshold(size_t t, size_t k, char **out);

/**
 * Perturbation bound report as JSON.
 *
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum HdStatus hd_bound_report_json(const struct HdGraph *g, size_t k, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HYPERDECOMP_H */
