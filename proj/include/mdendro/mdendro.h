#ifndef MDENDRO_H
#define MDENDRO_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(MDENDRO_BUILDING)
#define MDENDRO_API __declspec(dllexport)
#else
#define MDENDRO_API __declspec(dllimport)
#endif
#else
#define MDENDRO_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mdendro_status {
  MDENDRO_OK = 0,
  MDENDRO_E_PARSE,
  MDENDRO_E_ASYMMETRIC_INPUT,
  MDENDRO_E_MISSING_PAIR,
  MDENDRO_E_DUPLICATE_PAIR,
  MDENDRO_E_NEGATIVE_VALUE,
  MDENDRO_E_DUPLICATE_LABEL,
  MDENDRO_E_OUT_OF_RANGE,
  MDENDRO_E_MISSING_DISTANCE,
  MDENDRO_E_INVALID_ALPHA,
  MDENDRO_E_UNSUPPORTED_METHOD,
  MDENDRO_E_DIMENSION_MISMATCH,
  MDENDRO_E_EMPTY_INPUT,
  MDENDRO_E_POLICY_UNAVAILABLE,
  MDENDRO_E_TOO_MANY_SOLUTIONS,
  MDENDRO_E_UNRESOLVED_HEIGHTS,
  MDENDRO_E_INVALID_ARGUMENT,
  MDENDRO_E_IO,
  MDENDRO_E_INTERNAL
} mdendro_status;

typedef struct mdendro_matrix mdendro_matrix;
typedef struct mdendro_result mdendro_result;
typedef struct mdendro_tree_set mdendro_tree_set;

/* Name such as "TooManySolutions". Never NULL. */
MDENDRO_API const char* mdendro_status_name(mdendro_status status);

/* Message of the last failure on this thread, "" if none. */
MDENDRO_API const char* mdendro_last_error(void);

/* Frees strings returned through char** out parameters. */
MDENDRO_API void mdendro_string_free(char* s);

/* format: "square", "lower", "pairs" or "labeled-pairs". */
MDENDRO_API mdendro_status mdendro_matrix_parse(const char* text, const char* format,
                                                mdendro_matrix** out);
MDENDRO_API mdendro_status mdendro_matrix_similarity(const mdendro_matrix* m,
                                                     mdendro_matrix** out);
MDENDRO_API mdendro_status mdendro_matrix_round(const mdendro_matrix* m, int places,
                                                mdendro_matrix** out);
MDENDRO_API mdendro_status mdendro_matrix_serialize(const mdendro_matrix* m, const char* format,
                                                    char** out);
MDENDRO_API size_t mdendro_matrix_size(const mdendro_matrix* m);
/* -1 when the matrix carries no precision. */
MDENDRO_API int mdendro_matrix_precision(const mdendro_matrix* m);
MDENDRO_API void mdendro_matrix_free(mdendro_matrix* m);

/* alpha 0 or NaN means unset; joint between-within then uses 1.
   policy: "interval", "natural" or "shortest". */
MDENDRO_API mdendro_status mdendro_cluster(const mdendro_matrix* m, const char* method,
                                           double alpha, const char* policy,
                                           mdendro_result** out);

/* tiebreak: "first", "last" or "random". */
MDENDRO_API mdendro_status mdendro_cluster_pair_group(const mdendro_matrix* m, const char* method,
                                                      double alpha, const char* tiebreak,
                                                      uint64_t seed, mdendro_result** out);

/* kind: "newick", "records", "text" or "svg". */
MDENDRO_API mdendro_status mdendro_result_render(const mdendro_result* r, const char* kind,
                                                 char** out);
MDENDRO_API int mdendro_result_has_reversals(const mdendro_result* r);
MDENDRO_API size_t mdendro_result_warning_count(const mdendro_result* r);
MDENDRO_API const char* mdendro_result_warning(const mdendro_result* r, size_t i);
MDENDRO_API void mdendro_result_free(mdendro_result* r);

MDENDRO_API mdendro_status mdendro_enumerate(const mdendro_matrix* m, const char* method,
                                             double alpha, size_t limit, mdendro_tree_set** out);
MDENDRO_API size_t mdendro_tree_set_count(const mdendro_tree_set* s);
MDENDRO_API mdendro_status mdendro_tree_set_newick(const mdendro_tree_set* s, size_t i,
                                                   char** out);
MDENDRO_API void mdendro_tree_set_free(mdendro_tree_set* s);

#ifdef __cplusplus
}
#endif

#endif
