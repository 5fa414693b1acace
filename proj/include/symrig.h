/* symrig: symmetry-forced rigidity of frameworks on the sphere, cylinder
 * and cone. C interface to the shared library.
 *
 * Conventions:
 *   - All results and errors are JSON strings allocated by the library;
 *     release them with symrig_string_free().
 *   - Every function returns a status code. On failure the output string
 *     (when the parameter is non-NULL) holds {"error": {"code", "message"}}.
 *   - Gain graphs are opaque handles created from their JSON file format:
 *       {"group": {"kind": "Cm", "m": 3, "angle": 0.0},
 *        "vertices": 4,
 *        "edges": [{"tail": 0, "head": 1, "gain": 0}, ...]}
 */
#ifndef SYMRIG_H
#define SYMRIG_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#ifndef SYMRIG_API
#if defined(_WIN32)
#define SYMRIG_API
#else
#define SYMRIG_API __attribute__((visibility("default")))
#endif
#endif

typedef enum {
  SYMRIG_OK = 0,
  SYMRIG_ERR_PARSE = 1,       /* malformed JSON or file contents */
  SYMRIG_ERR_INVALID = 2,     /* invariant violation or bad arguments */
  SYMRIG_ERR_UNSUPPORTED = 3, /* (surface, group) pair or count out of scope */
  SYMRIG_ERR_SCALE = 4,       /* exact oracle budget exceeded */
  SYMRIG_ERR_INTERNAL = 5
} symrig_status;

typedef struct symrig_graph symrig_graph;

SYMRIG_API const char* symrig_version(void);

SYMRIG_API void symrig_string_free(char* s);

/* ---- gain graphs ------------------------------------------------------ */

SYMRIG_API symrig_status symrig_graph_parse(const char* json_text, symrig_graph** out_graph,
                                            char** out_error);
SYMRIG_API void symrig_graph_free(symrig_graph* graph);
SYMRIG_API symrig_status symrig_graph_to_json(const symrig_graph* graph, char** out_json);

/* Lifted covering graph as an edge list. */
SYMRIG_API symrig_status symrig_cover(const symrig_graph* graph, char** out_json);

/* ---- combinatorics ----------------------------------------------------- */

/* count: "k,l,m", "auto", "2,3,1i", "2,2,1r" or "subgroup".
 * surface: "sphere" | "cylinder" | "cone"; may be NULL unless the count
 * needs it ("auto" and the variant counts). Emits
 * {"sparse": bool, "tight": bool, "count": "...", "violation": {...}|null}. */
SYMRIG_API symrig_status symrig_check_sparsity(const symrig_graph* graph, const char* count,
                                               const char* surface, char** out_json);

/* Reduction certificate for a gain-tight graph, or the stuck graph. Emits
 * {"certified": bool, "script": {...}} or {"certified": false, "stuck": {...}}. */
SYMRIG_API symrig_status symrig_certify(const symrig_graph* graph, const char* count,
                                        const char* surface, char** out_json);

/* ---- numerics ---------------------------------------------------------- */

/* config_json: optional {"surface": "...", "points": [[x,y,z],...]} pinning
 * the quotient configuration; pass NULL to sample generically. Emits a rank
 * report for the orbit-surface matrix. */
SYMRIG_API symrig_status symrig_rank(const symrig_graph* graph, const char* surface,
                                     const char* config_json, int trials, double tol_rel,
                                     uint64_t seed, char** out_json);

/* Exact-rational rank of the orbit-surface matrix at random rational
 * configurations. Only available for groups with rational matrices
 * (Ci, C2, C4, S4, C2h, axis-aligned mirrors and half-turns); emits
 * {"available": bool, "rank": int?}. */
SYMRIG_API symrig_status symrig_exact_rank(const symrig_graph* graph, const char* surface,
                                           uint64_t seed, int trials, char** out_json);

/* CSV dump of an assembled matrix for external audit. kind is one of
 * "orbit", "orbit-surface", "cover". config_json as in symrig_rank. */
SYMRIG_API symrig_status symrig_matrix_csv(const symrig_graph* graph, const char* surface,
                                           const char* kind, const char* config_json,
                                           uint64_t seed, char** out_csv);

/* Symmetric motion or stress basis with cover lift residuals.
 * stresses = 0 for motions, 1 for stresses. */
SYMRIG_API symrig_status symrig_motions(const symrig_graph* graph, const char* surface,
                                        const char* config_json, uint64_t seed, int stresses,
                                        char** out_json);

/* ---- suites ------------------------------------------------------------ */

/* experiment_json: {"surface": "...", "group": {...}, "count": "auto",
 *                   "instances": 100, "seed": 7, "trials": 5,
 *                   "tol_rel": 1e-10, "max_vertices": 7,
 *                   "policy": "forward_moves"|"random_edges",
 *                   "gating": true}. */
SYMRIG_API symrig_status symrig_cross_validate(const char* experiment_json, char** out_json);

SYMRIG_API symrig_status symrig_cover_equivalence(int instances, uint64_t seed, char** out_json);

SYMRIG_API symrig_status symrig_paper_suite(char** out_json);

SYMRIG_API symrig_status symrig_conjecture(const char* surface, const char* group_json,
                                           int instances, uint64_t seed, char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* SYMRIG_H */
