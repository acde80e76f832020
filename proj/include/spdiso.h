/* SPDX-License-Identifier: Apache-2.0 */
#ifndef SPDISO_H
#define SPDISO_H

/*
 * C interface to the spdiso library: classification of the elliptic
 * isometries of the manifold of symmetric positive definite matrices with
 * the trace metric, explicit fixed-locus descriptions, verified sampling,
 * and the trace-metric geometry primitives used by the command line tool.
 *
 * All handles are opaque and must be released with the matching *_free
 * function. Functions return SPDISO_OK on success; on failure the returned
 * code identifies the error class and spdiso_last_error() carries a
 * human-readable message for the calling thread.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SPDISO_API __declspec(dllexport)
#else
#define SPDISO_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum spdiso_status {
  SPDISO_OK = 0,
  SPDISO_ERR_INVALID_ARGUMENT = 1,
  SPDISO_ERR_PARSE = 2,
  SPDISO_ERR_DIMENSION_MISMATCH = 3,
  SPDISO_ERR_NON_SYMMETRIC = 4,
  SPDISO_ERR_NOT_POSITIVE_DEFINITE = 5,
  SPDISO_ERR_SINGULAR = 6,
  SPDISO_ERR_CONVERGENCE_FAILURE = 7,
  SPDISO_ERR_NOT_IN_IMAGE = 8,
  SPDISO_ERR_NOT_ORTHOGONAL = 9,
  SPDISO_ERR_NOT_SEMISIMPLE = 10,
  SPDISO_ERR_NON_CONSTANT_MODULUS = 11,
  SPDISO_ERR_BASE_POINT_MISMATCH = 12,
  SPDISO_ERR_NOT_ELLIPTIC = 13,
  SPDISO_ERR_NOT_A_FIXED_POINT = 14,
  SPDISO_ERR_BLOCK_EXTRACTION = 15,
  SPDISO_ERR_INTERNAL = 16
} spdiso_status;

typedef struct spdiso_matrix spdiso_matrix;
typedef struct spdiso_isometry spdiso_isometry;
typedef struct spdiso_report spdiso_report;

SPDISO_API const char* spdiso_version(void);
SPDISO_API const char* spdiso_status_name(spdiso_status status);
SPDISO_API const char* spdiso_last_error(void);
SPDISO_API void spdiso_string_free(char* text);

/* Matrices are dense, square, row-major. */
SPDISO_API spdiso_status spdiso_matrix_create(int n, const double* row_major,
                                              spdiso_matrix** out);
SPDISO_API spdiso_status spdiso_matrix_parse(const char* json_text, spdiso_matrix** out);
SPDISO_API void spdiso_matrix_free(spdiso_matrix* m);
SPDISO_API int spdiso_matrix_order(const spdiso_matrix* m);
SPDISO_API spdiso_status spdiso_matrix_copy_data(const spdiso_matrix* m, double* out,
                                                 size_t capacity);
SPDISO_API spdiso_status spdiso_matrix_to_json(const spdiso_matrix* m, char** out);

/* An isometry of the SPD manifold: X -> M X M^T composed with the optional
 * inversion (use_j) and determinant normalization (use_delta). */
SPDISO_API spdiso_status spdiso_isometry_create(const spdiso_matrix* m, int use_j,
                                                int use_delta, spdiso_isometry** out);
SPDISO_API spdiso_status spdiso_isometry_parse(const char* json_text, spdiso_isometry** out);
SPDISO_API void spdiso_isometry_free(spdiso_isometry* iso);
SPDISO_API int spdiso_isometry_order(const spdiso_isometry* iso);

SPDISO_API spdiso_status spdiso_apply(const spdiso_isometry* iso, const spdiso_matrix* point,
                                      spdiso_matrix** out);

/* Ellipticity classification. reason receives a static string. */
SPDISO_API spdiso_status spdiso_classify(const spdiso_isometry* iso, double tol_eig,
                                         int* elliptic, const char** reason);
SPDISO_API spdiso_status spdiso_classify_to_json(const spdiso_isometry* iso, double tol_eig,
                                                 char** out);
SPDISO_API spdiso_status spdiso_classify_to_text(const spdiso_isometry* iso, double tol_eig,
                                                 char** out);

SPDISO_API spdiso_status spdiso_membership(const spdiso_isometry* iso,
                                           const spdiso_matrix* point, double tol,
                                           int* member);

/* Draws a verified fixed point of an elliptic isometry; deterministic in
 * (seed, scale). Fails with SPDISO_ERR_NOT_ELLIPTIC otherwise. */
SPDISO_API spdiso_status spdiso_sample(const spdiso_isometry* iso, uint64_t seed, double scale,
                                       spdiso_matrix** out);

/* Full locus report: classification, fixed-locus descriptor, De Rham
 * factors, sample verification table and the tangent-space dimension
 * cross-check. tol_residual <= 0 and tol_eig <= 0 select the defaults. */
SPDISO_API spdiso_status spdiso_report_create(const spdiso_isometry* iso, int samples,
                                              uint64_t seed, double tol_residual,
                                              double tol_eig, spdiso_report** out);
SPDISO_API void spdiso_report_free(spdiso_report* report);
SPDISO_API int spdiso_report_elliptic(const spdiso_report* report);
SPDISO_API int spdiso_report_dimension(const spdiso_report* report); /* -1 if not elliptic */
SPDISO_API int spdiso_report_residuals_ok(const spdiso_report* report);
SPDISO_API spdiso_status spdiso_report_sample_point(const spdiso_report* report, int index,
                                                    spdiso_matrix** out);
SPDISO_API spdiso_status spdiso_report_to_json(const spdiso_report* report, char** out);
SPDISO_API spdiso_status spdiso_report_to_text(const spdiso_report* report, char** out);

/* Trace-metric geometry on SPD matrices. */
SPDISO_API spdiso_status spdiso_distance(const spdiso_matrix* a, const spdiso_matrix* b,
                                         double* out);
SPDISO_API spdiso_status spdiso_geodesic(const spdiso_matrix* a, const spdiso_matrix* b,
                                         double t, spdiso_matrix** out);

#ifdef __cplusplus
}
#endif

#endif /* SPDISO_H */
