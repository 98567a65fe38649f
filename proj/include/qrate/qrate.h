/* C interface to the qrate library.
 *
 * Every function returns a qr_status. On failure, qr_last_error() returns
 * a message for the calling thread that stays valid until that thread's
 * next failing call. Objects behind opaque handles are released with the
 * matching *_free function; passing NULL to a *_free function is a no-op.
 */
#ifndef QRATE_QRATE_H
#define QRATE_QRATE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define QR_API __declspec(dllexport)
#else
#define QR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qr_status {
  QR_OK = 0,
  QR_ERR_VALIDATION = 1, /* input violates a precondition */
  QR_ERR_NUMERIC = 2,    /* non-finite or inaccurate result */
  QR_ERR_NULL = 3,       /* required pointer argument was NULL */
  QR_ERR_BUFFER = 4,     /* caller buffer too small; *needed is set */
  QR_ERR_RANGE = 5,      /* index out of range */
  QR_ERR_INTERNAL = 6
} qr_status;

typedef enum qr_sign { QR_SIGN_PAPER_LITERAL_PLUS = 0, QR_SIGN_STANDARD_MINUS = 1 } qr_sign;

typedef enum qr_moneyness {
  QR_DEEP_IN_THE_MONEY = 0,
  QR_AT_THE_MONEY = 1,
  QR_DEEP_OUT_OF_THE_MONEY = 2
} qr_moneyness;

typedef enum qr_root_case {
  QR_ROOTS_COMPLEX_CONJUGATE = 0,
  QR_ROOTS_DISTINCT_REAL = 1,
  QR_ROOTS_REPEATED_REAL = 2
} qr_root_case;

typedef enum qr_form { QR_FORM_FULL = 0, QR_FORM_HEDGED = 1 } qr_form;

typedef enum qr_verdict {
  QR_CONSISTENT_WITH_MARTINGALE = 0,
  QR_SUPERMARTINGALE_STRICT = 1,
  QR_VIOLATES_SUPERMARTINGALE = 2
} qr_verdict;

QR_API const char* qr_version(void);
QR_API const char* qr_last_error(void);
/* Name of the offending parameter for the last validation error, or "". */
QR_API const char* qr_last_error_field(void);

/* ---- model ------------------------------------------------------------ */

typedef struct qr_model_params {
  double x0;
  double drift;
  double r;
  double sigma;
  int no_arbitrage; /* nonzero: drift must equal r */
} qr_model_params;

/* Fills *out with drift = r and no_arbitrage = 1. */
QR_API qr_status qr_params_risk_neutral(double x0, double r, double sigma, qr_model_params* out);
QR_API qr_status qr_validate_params(const qr_model_params* p);
QR_API qr_status qr_exact_marginal(const qr_model_params* p, double t, double* mean, double* variance);

typedef struct qr_paths qr_paths;

/* times[0] must be 0 and times strictly increasing. workers == 0 uses all
 * hardware threads; the result does not depend on it. */
QR_API qr_status qr_paths_simulate(const qr_model_params* p, const double* times, size_t n_times,
                                   size_t n_paths, uint64_t seed, unsigned workers, qr_paths** out);
QR_API qr_status qr_paths_simulate_uniform(const qr_model_params* p, double horizon, double step,
                                           size_t n_paths, uint64_t seed, unsigned workers,
                                           qr_paths** out);
QR_API void qr_paths_free(qr_paths* paths);
QR_API size_t qr_paths_count(const qr_paths* paths);
QR_API size_t qr_paths_times(const qr_paths* paths);
QR_API qr_status qr_paths_time(const qr_paths* paths, size_t step, double* t);
QR_API qr_status qr_paths_value(const qr_paths* paths, size_t path, size_t step, double* value);
/* *hit is 0 when the level is never reached on the grid. */
QR_API qr_status qr_paths_first_hitting_time(const qr_paths* paths, size_t path, double level, int* hit,
                                             double* tau);
/* Writes the CSV export (NUL-terminated) into buf. When capacity is too
 * small, returns QR_ERR_BUFFER with *needed set (including the NUL). */
QR_API qr_status qr_paths_to_csv(const qr_paths* paths, int precision, char* buf, size_t capacity,
                                 size_t* needed);

QR_API qr_status qr_hitting_probability(const qr_model_params* p, double level, double t, double* prob);

typedef struct qr_hitting_frequency {
  size_t n_paths;
  size_t hits;
  double frequency;
  double standard_error;
} qr_hitting_frequency;

/* Grid-monitored Monte Carlo frequency of hitting `level` by `horizon`. */
QR_API qr_status qr_hitting_frequency_mc(const qr_model_params* p, double level, double horizon,
                                         double step, size_t n_paths, uint64_t seed, unsigned workers,
                                         qr_hitting_frequency* out);

/* ---- payoff ----------------------------------------------------------- */

QR_API qr_status qr_call_payoff(double x, double strike, double* out);
QR_API qr_status qr_put_payoff(double x, double strike, double* out);
QR_API qr_status qr_moneyness_of(double x, double strike, double tol, qr_moneyness* out);
QR_API qr_status qr_discounted_value(double v, double r, double t, qr_sign sign, double* out);

/* ---- ode -------------------------------------------------------------- */

typedef struct qr_roots {
  qr_root_case kind;
  double root1_re, root1_im;
  double root2_re, root2_im;
} qr_roots;

QR_API qr_status qr_characteristic_roots(qr_form form, double r, double sigma, qr_roots* out);

typedef struct qr_solution qr_solution;

QR_API qr_status qr_solution_sine(double amplitude, double r, double sigma, qr_solution** out);
QR_API qr_status qr_solution_general(const qr_roots* roots, double a_re, double a_im, double b_re,
                                     double b_im, qr_solution** out);
/* Wraps a caller-provided function; `fn` must stay callable while the
 * handle lives. Intended for test evaluators. */
QR_API qr_status qr_solution_callback(double (*fn)(double x, void* user), void* user,
                                      qr_solution** out);
QR_API void qr_solution_free(qr_solution* v);
QR_API qr_status qr_solution_eval(const qr_solution* v, double x, double* out);
QR_API qr_status qr_delta_gamma(const qr_solution* v, double x, double h, double* delta, double* gamma);
QR_API qr_status qr_residual(const qr_solution* v, qr_form form, double r, double sigma, double x,
                             double h, double* out);

/* ---- spectrum --------------------------------------------------------- */

typedef struct qr_mode {
  int64_t n;
  double sigma;
  double strike;
  double rate;
  double diffusion;
  double wavenumber;
  int degenerate;
} qr_mode;

QR_API qr_status qr_quantized_rate(int64_t n, double sigma, double strike, double* rate, int* degenerate);
QR_API qr_status qr_mode_make(int64_t n, double sigma, double strike, qr_mode* out);
QR_API qr_status qr_mode_index(double r, double sigma, double strike, double rel_tol, int64_t* n,
                               int* admissible);
QR_API qr_status qr_boundary_residual(int64_t n, double sigma, double strike, double* out);

typedef struct qr_normalization {
  double amplitude;
  double integral;
  int method; /* 0 closed form, 1 quadrature */
  double estimated_error;
  double closed_form;
  double quadrature;
} qr_normalization;

QR_API qr_status qr_normalization_constant(double r, double sigma, double strike, qr_normalization* out);

/* Fills values[ix * n_t + it] = A sin(a_n x) e^{+-r_n t}; outside[ix] is
 * set to 1 for x outside [0, K]. `outside` may be NULL. */
QR_API qr_status qr_payoff_surface(const qr_mode* mode, double amplitude, const double* x, size_t n_x,
                                   const double* t, size_t n_t, qr_sign sign, double* values,
                                   int* outside);

/* ---- verify ----------------------------------------------------------- */

typedef struct qr_drift_report {
  double x0;
  double t;
  double dt;
  size_t n_samples;
  double estimated_drift;
  double standard_error;
  double analytic_drift;
  double z_score;
  qr_sign sign;
  uint64_t seed;
  double r;
  double sigma;
} qr_drift_report;

QR_API qr_status qr_analytic_drift(const qr_solution* v, double r, double sigma, double x, double t,
                                   qr_sign sign, double* out);
QR_API qr_status qr_drift_estimate(const qr_solution* v, const qr_model_params* p, double x0, double t,
                                   double dt, size_t n_samples, uint64_t seed, qr_sign sign,
                                   unsigned workers, qr_drift_report* out);
QR_API qr_status qr_classify(const qr_drift_report* report, double z_threshold, qr_verdict* out);

typedef struct qr_integrability {
  size_t n_samples;
  double mean_abs;
  double mean;
  double standard_error;
  int has_analytic_bound;
  double analytic_bound;
} qr_integrability;

QR_API qr_status qr_integrability_check(const qr_solution* v, const qr_model_params* p, double t,
                                        size_t n_samples, uint64_t seed, qr_sign sign, unsigned workers,
                                        qr_integrability* out);

#ifdef __cplusplus
}
#endif

#endif /* QRATE_QRATE_H */
