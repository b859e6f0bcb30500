/* C interface to libsaffine. Handles are opaque; strings returned through
 * char** are heap-allocated and released with saffine_string_free. On a
 * status other than SAFFINE_OK the output handles are left untouched (except
 * report strings, which are still produced for SAFFINE_CHECK_FAILED) and
 * saffine_last_error() describes the failure for the calling thread. */
#ifndef SAFFINE_SAFFINE_H
#define SAFFINE_SAFFINE_H

#include <stddef.h>
#include <stdint.h>

#if defined(SAFFINE_BUILDING_LIBRARY)
#define SAFFINE_API __attribute__((visibility("default")))
#else
#define SAFFINE_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum saffine_status {
  SAFFINE_OK = 0,
  SAFFINE_CHECK_FAILED = 1, /* computed fine, an asserted identity does not hold */
  SAFFINE_INPUT_ERROR = 2,
  SAFFINE_INTERNAL = 3
} saffine_status;

typedef enum saffine_format { SAFFINE_FORMAT_TEXT = 0, SAFFINE_FORMAT_CSV = 1 } saffine_format;

typedef struct saffine_ifs saffine_ifs;
typedef struct saffine_cloud saffine_cloud;
typedef struct saffine_poly saffine_poly;

SAFFINE_API const char* saffine_last_error(void);
SAFFINE_API const char* saffine_version(void);
SAFFINE_API void saffine_string_free(char* s);

/* IFS in the JSON interchange format. */
SAFFINE_API saffine_status saffine_ifs_from_json(const char* text, saffine_ifs** out);
SAFFINE_API saffine_status saffine_ifs_to_json(const saffine_ifs* ifs, char** out);
SAFFINE_API size_t saffine_ifs_dim(const saffine_ifs* ifs);
SAFFINE_API size_t saffine_ifs_size(const saffine_ifs* ifs);
SAFFINE_API void saffine_ifs_free(saffine_ifs* ifs);

/* Moment-curve IFS on [c, d]. lambda and anchors ("t1,t2,...") may be NULL
 * for the defaults. The IFS carries its recipe in "meta". */
SAFFINE_API saffine_status saffine_build_moment(unsigned n, const char* c, const char* d, const char* lambda,
                                                const char* anchors, saffine_format format, saffine_ifs** out,
                                                char** report);

/* Paraboloid IFS in R^n over [a, b]^(n-1); maps is "c1:d1,c2:d2,...". */
SAFFINE_API saffine_status saffine_build_paraboloid(unsigned n, const char* a, const char* b, const char* maps,
                                                    saffine_format format, saffine_ifs** out, char** report);

/* Re-checks the identity recorded in the document's meta (moment or
 * paraboloid) against the stored maps. Moment documents are checked at
 * `samples` rationals drawn with `seed`. SAFFINE_CHECK_FAILED on any
 * counterexample. */
SAFFINE_API saffine_status saffine_verify(const char* json, size_t samples, uint64_t seed, saffine_format format,
                                          char** report);

SAFFINE_API saffine_status saffine_chaos_game(const saffine_ifs* ifs, size_t iterations, size_t burn_in,
                                              uint64_t seed, saffine_cloud** out);
SAFFINE_API saffine_status saffine_hutchinson(const saffine_ifs* ifs, size_t depth, saffine_cloud** out);
SAFFINE_API size_t saffine_cloud_size(const saffine_cloud* cloud);
SAFFINE_API size_t saffine_cloud_dim(const saffine_cloud* cloud);
/* Row-major, size * dim doubles. */
SAFFINE_API const double* saffine_cloud_data(const saffine_cloud* cloud);
SAFFINE_API saffine_status saffine_cloud_to_csv(const saffine_cloud* cloud, char** out);
SAFFINE_API saffine_status saffine_cloud_to_svg(const saffine_cloud* cloud, size_t axis_x, size_t axis_y, char** out);
/* Max over points of |x_k - x_1^k|, k = 2..dim. */
SAFFINE_API double saffine_cloud_graph_residual(const saffine_cloud* cloud);
/* Residual against the curve or surface named by the IFS meta: the graph
 * residual for moment documents, |P| for paraboloid documents.
 * SAFFINE_INPUT_ERROR when the meta names neither. */
SAFFINE_API saffine_status saffine_cloud_meta_residual(const saffine_ifs* ifs, const saffine_cloud* cloud,
                                                       double* out);
SAFFINE_API void saffine_cloud_free(saffine_cloud* cloud);

/* Polynomial text "c * x1^a x2^b + ...". dim = 0 infers it. */
SAFFINE_API saffine_status saffine_poly_parse(const char* text, size_t dim, saffine_poly** out);
SAFFINE_API saffine_status saffine_poly_to_string(const saffine_poly* p, char** out);
SAFFINE_API saffine_status saffine_poly_residual(const saffine_poly* p, const saffine_cloud* cloud, double* out);
SAFFINE_API void saffine_poly_free(saffine_poly* p);

/* P o f = C P for the single map of `map`. constant may be NULL.
 * SAFFINE_CHECK_FAILED when no such C exists. */
SAFFINE_API saffine_status saffine_scaling(const saffine_poly* p, const saffine_ifs* map, char** report,
                                           char** constant);

/* germ_json: {"t0", "order", "coords"}; map_json: {"M": matrix, "J": matrix}.
 * order = 0 keeps the germ's order, otherwise the germ is truncated to it.
 * t1 may be NULL (t1 = 1). verdict receives the verdict string. Always
 * SAFFINE_OK once classified. */
SAFFINE_API saffine_status saffine_classify(const char* germ_json, const char* map_json, const char* t1,
                                            unsigned order, char** report, char** verdict);

/* Pullback sequence of length m + 1; zero-set samples are taken along
 * `samples` lines through the origin. */
SAFFINE_API saffine_status saffine_compactness_demo(const saffine_poly* p, const saffine_ifs* map, size_t m,
                                                    size_t samples, uint64_t seed, saffine_format format,
                                                    char** report);

#ifdef __cplusplus
}
#endif

#endif
