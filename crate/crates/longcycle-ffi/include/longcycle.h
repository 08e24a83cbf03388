/* C interface to the longcycle solver.
 *
 * For a graph G and a threshold ell >= 3, the solver produces a verifiable
 * certificate: either two vertex-disjoint cycles of length >= ell, or a set
 * of at most floor((3*ell + 7) / 2) vertices meeting every such cycle.
 * Certificates travel as JSON strings; see the crate documentation for the
 * schema.
 *
 * Maintained by hand; must mirror the #[no_mangle] signatures in src/lib.rs.
 */

#ifndef LONGCYCLE_H
#define LONGCYCLE_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes returned by every entry point. */
enum {
    LC_OK = 0,                  /* success / certificate valid */
    LC_INVALID_CERTIFICATE = 1, /* certificate parsed but does not verify */
    LC_PARSE_ERROR = 2,         /* malformed graph or certificate text */
    LC_BAD_ARGUMENT = 3,        /* e.g. ell < 3, vertex out of range */
    LC_NULL_POINTER = 4         /* required pointer null or not UTF-8 */
};

/* Opaque graph handle; immutable after creation, safe to share across
 * threads. Release with lc_graph_free. */
typedef struct LcGraph LcGraph;

/* Parse edge-list text: lines "u v" (0-indexed), '#' comments, optional
 * "n=<k>" header. On success *out receives a new handle. */
int32_t lc_graph_parse_edge_list(const char *text, LcGraph **out);

/* Parse DIMACS edge format: "p edge n m" then m lines "e u v", 1-indexed. */
int32_t lc_graph_parse_dimacs(const char *text, LcGraph **out);

/* Build a graph on n vertices from m edges given as 2m endpoint ids
 * (u0, v0, u1, v1, ...), 0-indexed. endpoints may be NULL when m == 0. */
int32_t lc_graph_from_edges(uint32_t n, const uint32_t *endpoints, size_t m,
                            LcGraph **out);

/* Release a graph handle (NULL is a no-op). */
void lc_graph_free(LcGraph *g);

/* Vertex / edge counts; 0 for a NULL handle. */
uint32_t lc_graph_n(const LcGraph *g);
uint32_t lc_graph_edge_count(const LcGraph *g);

/* Solve the instance; *out_json receives the certificate as a JSON string
 * (release with lc_string_free). with_trace != 0 attaches the solver trace.
 * Deterministic: identical inputs yield identical strings. */
int32_t lc_solve_to_json(const LcGraph *g, uint32_t ell, int32_t with_trace,
                         char **out_json);

/* Verify a JSON certificate against the graph from scratch.
 * Returns LC_OK, LC_INVALID_CERTIFICATE or LC_PARSE_ERROR. */
int32_t lc_verify_json(const LcGraph *g, const char *cert_json);

/* Release a string returned by this library (NULL is a no-op). */
void lc_string_free(char *s);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* LONGCYCLE_H */
