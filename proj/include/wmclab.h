#ifndef WMCLAB_H
#define WMCLAB_H

/* C interface to the weighted-model-counting laboratory.  Every object is an
 * opaque handle owned by the caller and released with the matching _free
 * function; every fallible call returns a status code and leaves a message
 * for wmclab_last_error().  Strings returned through char** out-parameters
 * are heap-allocated and must be released with wmclab_string_free. */

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wmclab_status {
    WMCLAB_OK = 0,
    WMCLAB_PARSE_ERROR,
    WMCLAB_INVALID_ASSIGNMENT,
    WMCLAB_CONSTANT_FORMULA,
    WMCLAB_TOO_LARGE,
    WMCLAB_EMPTY_DOMAIN,
    WMCLAB_UNBOUND_VARIABLE,
    WMCLAB_INVALID_DIAGRAM,
    WMCLAB_UNSUPPORTED,
    WMCLAB_BUDGET_EXHAUSTED,
    WMCLAB_NOT_TRANSVERSAL_FREE,
    WMCLAB_NOT_FULLY_DEPENDENT,
    WMCLAB_WRONG_FUNCTION,
    WMCLAB_REFUSED,
    WMCLAB_NOT_MONOTONE,
    WMCLAB_UNSAFE_QUERY,
    WMCLAB_INTERNAL_SAFETY_VIOLATION
} wmclab_status;

typedef struct wmclab_query wmclab_query;     /* parsed query specification */
typedef struct wmclab_dnf wmclab_dnf;         /* monotone DNF lineage */
typedef struct wmclab_diagram wmclab_diagram; /* decision diagram */
typedef struct wmclab_weights wmclab_weights; /* variable probabilities */

typedef struct wmclab_compile_stats {
    uint64_t nodes_created;
    uint64_t cache_hits;
    uint64_t cache_misses;
    uint64_t decisions;
    uint64_t component_splits;
} wmclab_compile_stats;

const char* wmclab_version(void);
/* Message from the most recent failing call on this thread ("" if none). */
const char* wmclab_last_error(void);
void wmclab_string_free(char* s);

/* ---- parsing and construction ------------------------------------- */

wmclab_status wmclab_query_parse(const char* text, wmclab_query** out);
void wmclab_query_free(wmclab_query* q);
int wmclab_query_k(const wmclab_query* q);
int wmclab_query_arity(const wmclab_query* q);
/* Default domain size from the spec text, or -1 when absent. */
int wmclab_query_default_n(const wmclab_query* q);
int wmclab_query_is_dichotomy(const wmclab_query* q);

wmclab_status wmclab_dnf_parse(const char* text, wmclab_dnf** out);
void wmclab_dnf_free(wmclab_dnf* f);

/* Grounds the query over domain [n] and prints the flattened monotone DNF
 * (dichotomy specs included); the text parses back with wmclab_dnf_parse. */
wmclab_status wmclab_query_ground(const wmclab_query* q, int n, char** out_dnf);

wmclab_status wmclab_weights_parse(const char* text, wmclab_weights** out);
void wmclab_weights_free(wmclab_weights* w);

/* ---- compilation ---------------------------------------------------- */

/* heuristic: "first-unset" | "max-occurrence"; negation_mode: "direct-dnf" |
 * "negate-to-cnf"; budget 0 means the library default.  stats may be NULL. */
wmclab_status wmclab_compile_query(const wmclab_query* q, int n, const char* heuristic,
                                   const char* negation_mode, uint64_t budget,
                                   wmclab_diagram** out, wmclab_compile_stats* stats);
wmclab_status wmclab_compile_dnf(const wmclab_dnf* f, const char* heuristic,
                                 const char* negation_mode, uint64_t budget,
                                 wmclab_diagram** out, wmclab_compile_stats* stats);

/* ---- diagrams ------------------------------------------------------- */

void wmclab_diagram_free(wmclab_diagram* d);
uint64_t wmclab_diagram_size(const wmclab_diagram* d);
/* Strictest class the diagram validates in: "FBDD", "dec-DNNF", "DLDD", or
 * "invalid" (returned with status WMCLAB_OK either way). */
wmclab_status wmclab_diagram_validate(const wmclab_diagram* d, char** out_class);
/* format: "mdd" (parseable text form) or "dot" (Graphviz). */
wmclab_status wmclab_diagram_print(const wmclab_diagram* d, const char* format, char** out);
wmclab_status wmclab_diagram_parse(const char* mdd_text, wmclab_diagram** out);
/* Exact probability of output 0, as a rational string like "3/8". */
wmclab_status wmclab_diagram_wmc(const wmclab_diagram* d, const wmclab_weights* w,
                                 char** out_probability);

/* ---- transformations ------------------------------------------------ */

wmclab_status wmclab_follows_unit_rule(const wmclab_diagram* d, const wmclab_dnf* phi,
                                       int* out_follows);
wmclab_status wmclab_to_unit_rule(const wmclab_diagram* d, const wmclab_dnf* phi,
                                  wmclab_diagram** out);
wmclab_status wmclab_dldd_to_fbdd(const wmclab_diagram* d, uint64_t budget,
                                  wmclab_diagram** out);

/* Surviving chain pairs under a partial assignment (text as parsed by the
 * assignment format, "" for empty).  CSV columns: i,j. */
wmclab_status wmclab_transversals(int k, int n, const char* assignment_text, char** out_csv);

/* ---- counting ------------------------------------------------------- */

wmclab_status wmclab_oracle_dnf(const wmclab_dnf* f, const wmclab_weights* w,
                                char** out_probability);
wmclab_status wmclab_oracle_query(const wmclab_query* q, int n, const wmclab_weights* w,
                                  char** out_probability);

/* Lattice-based evaluation for safe queries.  Outputs: exact rational,
 * decimal rendering, per-term CSV (element,mobius,probability), and the
 * total node count of the member OBDDs.  Any output pointer may be NULL. */
wmclab_status wmclab_lifted(const wmclab_query* q, int n, const wmclab_weights* w,
                            char** out_probability, char** out_decimal, char** out_terms_csv,
                            uint64_t* out_nodes);

/* ---- dichotomy ------------------------------------------------------ */

/* out_hard: 1 when counting is intractable for the query's combinator;
 * out_witness: ignored-argument index when easy, -1 when hard. */
wmclab_status wmclab_classify(const wmclab_query* q, int* out_hard, int* out_witness);
wmclab_status wmclab_dichotomy_build(const wmclab_query* q, int n, wmclab_diagram** out);

/* ---- experiment ------------------------------------------------------ */

/* Grounded / lifted / oracle measurement rows as CSV.  weights may be NULL
 * for the uniform default; heuristic and negation_mode as in compile. */
wmclab_status wmclab_experiment(const wmclab_query* q, const int* ns, int ns_len,
                                const char* heuristic, const char* negation_mode,
                                uint64_t budget, const wmclab_weights* w, int oracle_cap,
                                char** out_csv);

#ifdef __cplusplus
}
#endif

#endif /* WMCLAB_H */
