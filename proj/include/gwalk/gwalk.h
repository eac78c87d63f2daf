/*
 * C interface to the gwalk library: the three-state Grover walk on the
 * integer line with a phase defect at the origin, its closed-form
 * eigenvectors and stationary measures, and the verification harness.
 *
 * Every function returns a gw_status. On failure, gw_last_error() returns a
 * message for the calling thread; it stays valid until the next call on that
 * thread. Objects returned through out-pointers are owned by the caller and
 * released with the matching *_destroy function.
 */
#ifndef GWALK_H
#define GWALK_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(GWALK_BUILDING)
#    define GW_API __declspec(dllexport)
#  else
#    define GW_API __declspec(dllimport)
#  endif
#else
#  define GW_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gw_status {
  GW_OK = 0,
  GW_ERR_INVALID_ARGUMENT = 1,
  GW_ERR_WINDOW_EXHAUSTED = 2,
  GW_ERR_DOMAIN = 3,
  GW_ERR_DEGENERATE_DEFECT = 4,
  GW_ERR_RATIO_MISMATCH = 5,
  GW_ERR_TAIL_DIVERGENT = 6,
  GW_ERR_NO_CONVERGENCE = 7,
  GW_ERR_PARAMETER = 8,
  GW_ERR_BUFFER_TOO_SMALL = 9,
  GW_ERR_INTERNAL = 100
} gw_status;

typedef struct gw_complex {
  double re;
  double im;
} gw_complex;

/* Amplitudes at one site: left, stay, right. */
typedef struct gw_amplitude {
  gw_complex l;
  gw_complex o;
  gw_complex r;
} gw_amplitude;

typedef enum gw_sign { GW_PLUS = 0, GW_MINUS = 1 } gw_sign;

typedef enum gw_family {
  GW_FAMILY_THM1_PLUS = 0,
  GW_FAMILY_THM1_MINUS = 1,
  GW_FAMILY_MINUS1_I = 2,
  GW_FAMILY_MINUS1_IIA = 3,
  GW_FAMILY_MINUS1_IIB = 4
} gw_family;

typedef struct gw_window gw_window;
typedef struct gw_measure gw_measure;

typedef struct gw_thm1_params {
  gw_sign formula_sign;
  double theta_s_abs2;
  double m[3];
  int n_bits[3];
  double coefficient;
} gw_thm1_params;

typedef struct gw_verify_report {
  double residual_inf;
  int64_t steps_checked;
  double max_measure_drift;
} gw_verify_report;

typedef void (*gw_criterion_cb)(void* user, int id, const char* name, int passed,
                                const char* detail);

GW_API const char* gw_last_error(void);
GW_API const char* gw_status_name(gw_status status);

/* --- lattice ---------------------------------------------------------- */

GW_API gw_status gw_window_create(int64_t x_min, int64_t x_max, gw_window** out);
GW_API gw_status gw_window_clone(const gw_window* w, gw_window** out);
GW_API void gw_window_destroy(gw_window* w);
GW_API gw_status gw_window_bounds(const gw_window* w, int64_t* x_min, int64_t* x_max,
                                  int64_t* valid_lo, int64_t* valid_hi);
GW_API gw_status gw_window_set(gw_window* w, int64_t x, gw_amplitude amp);
GW_API gw_status gw_window_get(const gw_window* w, int64_t x, gw_amplitude* amp);

/* Row-major 3x3 coin at site x. */
GW_API gw_status gw_coin_at(int64_t x, double theta, gw_complex out[9]);
GW_API gw_status gw_step(const gw_window* w, double theta, gw_window** out);
GW_API gw_status gw_evolve(const gw_window* w, int64_t n, double theta, gw_window** out);
GW_API gw_status gw_phi(const gw_window* w, gw_measure** out);

GW_API void gw_measure_destroy(gw_measure* m);
GW_API gw_status gw_measure_bounds(const gw_measure* m, int64_t* x_min, int64_t* x_max);
/* Copies x_max - x_min + 1 values; GW_ERR_BUFFER_TOO_SMALL if len is short. */
GW_API gw_status gw_measure_values(const gw_measure* m, double* buf, size_t len);

/* --- spectral --------------------------------------------------------- */

GW_API gw_status gw_det_a(gw_complex lambda, gw_complex z, gw_complex* out);
GW_API gw_status gw_theta_roots(gw_complex lambda, gw_complex* theta_s, gw_complex* theta_l);
/* Six decay ratios L+, O+, R+, L-, O-, R-; defined[i] = 0 marks a singular one. */
GW_API gw_status gw_lemma2_ratios(gw_complex lambda, gw_complex alpha, gw_complex beta,
                                  gw_complex gamma, double theta, gw_complex ratios[6],
                                  int defined[6]);
GW_API gw_status gw_lemma3_residuals(gw_complex lambda, gw_complex alpha, gw_complex beta,
                                     gw_complex gamma, double theta, gw_complex out[4]);
GW_API gw_status gw_lambda_case_iia(double theta, gw_complex* plus, gw_complex* minus);
/* Five roots, -1 first. */
GW_API gw_status gw_case_ia_roots(double theta, gw_complex out[5]);
GW_API gw_status gw_build_eigenvector(gw_complex lambda, gw_complex alpha, gw_complex beta,
                                      gw_complex gamma, double theta, int64_t half_width,
                                      gw_window** out);

/* --- closed forms ----------------------------------------------------- */

GW_API gw_status gw_theta_s_abs2(double theta, gw_sign formula_sign, double* value,
                                 int* in_range);
GW_API gw_status gw_thm1_eigenvector(double theta, gw_sign sign, gw_complex alpha,
                                     int64_t half_width, gw_window** out, gw_complex* lambda,
                                     gw_complex* theta_s, int* decaying);
GW_API gw_status gw_thm1_measure(double theta, gw_sign sign, gw_complex alpha,
                                 int64_t half_width, gw_measure** out, gw_thm1_params* params);
/* family must be one of the GW_FAMILY_MINUS1_* values; gamma is used by IIB only. */
GW_API gw_status gw_lambda_minus1_family(gw_family family, double theta, gw_complex alpha,
                                         gw_complex gamma, int64_t half_width,
                                         gw_window** psi, gw_measure** measure);
GW_API gw_status gw_homogeneous_limit_measure(gw_complex a, gw_complex b, gw_complex c,
                                              int64_t half_width, gw_measure** out);

/* --- verification ----------------------------------------------------- */

GW_API gw_status gw_eigen_residual(const gw_window* w, gw_complex lambda, double theta,
                                   double* out);
GW_API gw_status gw_stationarity_deviation(const gw_window* w, int64_t n, double theta,
                                           double* out);
/* band may be NULL. */
GW_API gw_status gw_time_averaged_measure(const gw_window* w, int64_t big_n, double theta,
                                          gw_measure** average, gw_measure** band);
GW_API gw_status gw_scaling_relation_check(gw_verify_report* out);
/* Runs every acceptance criterion, reporting each through cb (may be NULL). */
GW_API gw_status gw_run_acceptance(gw_criterion_cb cb, void* user, int* all_passed);

#ifdef __cplusplus
}
#endif

#endif /* GWALK_H */
