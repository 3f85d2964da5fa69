/* Copyright 2026 The holobundle Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to holobundle. Families and contexts are opaque handles; every
 * call returns an hb_status and writes results through out-parameters. After
 * a failure, hb_last_error() describes it (per thread). Strings returned
 * through char** are owned by the caller and released with hb_string_free.
 *
 * Real chart points are passed as arrays of 2k doubles, complex vectors as
 * interleaved (re, im) pairs.
 */
#ifndef HOLOBUNDLE_H_
#define HOLOBUNDLE_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(HOLOBUNDLE_BUILDING_LIBRARY)
#define HB_API __declspec(dllexport)
#else
#define HB_API __declspec(dllimport)
#endif
#else
#define HB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hb_status {
  HB_OK = 0,
  HB_ERR_DIMENSION_MISMATCH,
  HB_ERR_ZERO_NORM,
  HB_ERR_DOMAIN_BOUNDARY,
  HB_ERR_TRUNCATION_TOO_SMALL,
  HB_ERR_DEGENERATE_METRIC,
  HB_ERR_AMPLITUDE_VANISHES,
  HB_ERR_AMPLITUDE_VANISHES_ON_PATH,
  HB_ERR_NON_CONVERGENT,
  HB_ERR_NOT_RAY_SPACE_FAMILY,
  HB_ERR_NOT_NORMALIZED,
  HB_ERR_ANTIPODAL_RAYS,
  HB_ERR_IDENTICAL_RAYS,
  HB_ERR_SINGULAR_POINT,
  HB_ERR_STEP_TOO_LARGE,
  HB_ERR_CHART_ESCAPE,
  HB_ERR_OPEN_PATH,
  HB_ERR_CONFIG_INVALID,
  HB_ERR_INVALID_ARGUMENT,
  HB_ERR_INTERNAL,
  /* A command ran but at least one of its checks failed. */
  HB_CHECK_FAILED = 100
} hb_status;

typedef struct hb_family hb_family;
typedef struct hb_context hb_context;

HB_API const char* hb_version(void);
HB_API const char* hb_last_error(void);
HB_API const char* hb_status_name(hb_status status);
HB_API void hb_string_free(char* s);

/* "bloch", "coherent", "cp<n>" */
HB_API hb_status hb_family_create_builtin(const char* name, hb_family** out);
HB_API hb_status hb_family_from_json(const char* descriptor, hb_family** out);
HB_API void hb_family_destroy(hb_family* family);
HB_API int hb_family_dim(const hb_family* family);
HB_API int hb_family_k(const hb_family* family);
HB_API int hb_family_is_ray_space(const hb_family* family);

/* Cartesian coordinates, zero gauge, finite differences. */
HB_API hb_status hb_context_create(const hb_family* family, double q, hb_context** out);
HB_API void hb_context_destroy(hb_context* ctx);
/* "cartesian" or "polar" */
HB_API hb_status hb_context_set_coordinates(hb_context* ctx, const char* name);
/* analytic != 0 uses the family's holomorphic derivative. */
HB_API hb_status hb_context_set_scheme(hb_context* ctx, int analytic, double h, int order);
/* gamma = Re sum_a c_a z^a; coefficients has 2k doubles. NULL restores the zero gauge. */
HB_API hb_status hb_context_set_linear_gauge(hb_context* ctx, const double* coefficients);

/* psi_out: 2N doubles. */
HB_API hb_status hb_evaluate_section(const hb_context* ctx, const double* xi, double* psi_out);
/* a_out: 2k doubles. */
HB_API hb_status hb_berry_connection(const hb_context* ctx, const double* xi, double* a_out);
/* Row-major (2k x 2k) arrays; any output may be NULL. */
HB_API hb_status hb_geometric_data(const hb_context* ctx, const double* xi, double* g_out, double* omega_out,
                                   double* j_out);
/* psi_f: 2N doubles. v_out and grad_log_sqrt_p_out: 2k doubles, may be NULL. */
HB_API hb_status hb_polar_amplitude(const hb_context* ctx, const double* psi_f, const double* xi, double* sqrt_p,
                                    double* eta, double* v_out, double* grad_log_sqrt_p_out);
HB_API hb_status hb_cr_residual(const hb_context* ctx, const double* psi_f, const double* xi, double* r1,
                                double* r2);
HB_API hb_status hb_fs_distance(const double* a, const double* b, int n, double q, double* out);
HB_API hb_status hb_ray_sample_mean_p(const double* psi_f, int n, long samples, uint64_t seed, double* mean_p,
                                      double* stderr_p);

/* Command front ends. config_json is a run configuration, request_json the
 * command's request (may be NULL for verify). summary receives the JSON
 * summary and csv the trace (empty string when the command has none); either
 * may be NULL. Returns HB_CHECK_FAILED when verify ran but failed. */
HB_API hb_status hb_run_command(const char* command, const char* config_json, const char* request_json,
                                char** summary, char** csv);

#ifdef __cplusplus
}
#endif

#endif /* HOLOBUNDLE_H_ */
