/* SPDX-License-Identifier: Apache-2.0 */

/*
 * C interface to the qwalk library: biased discrete-time quantum walks on
 * the integer line and the classical biased random walk baseline.
 *
 * Conventions:
 *  - Every fallible call returns a qw_status. On failure a one-line message
 *    is available from qw_last_error() on the calling thread.
 *  - Objects returned through an out-pointer are owned by the caller and
 *    must be released with the matching *_free function. Passing NULL to a
 *    *_free function is a no-op.
 *  - Handles are immutable after creation and may be shared across threads.
 */

#ifndef QWALK_QWALK_H
#define QWALK_QWALK_H

#include <stddef.h>
#include <stdint.h>

#if defined(QWALK_BUILDING_LIBRARY)
#define QWALK_API __attribute__((visibility("default")))
#else
#define QWALK_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qw_status {
  QW_OK = 0,
  QW_ERR_INTERNAL = 1,
  QW_ERR_DOMAIN = 2,     /* parameter outside its domain, or bad argument */
  QW_ERR_IO = 3,
  QW_ERR_INVARIANT = 4,  /* a computed object violated an invariant */
  QW_ERR_DEGENERATE = 5  /* input lacks the required structure */
} qw_status;

QWALK_API const char* qw_version(void);

/* Message for the last failed call on this thread; "" if none. */
QWALK_API const char* qw_last_error(void);

/* Right-step length r >= 1 and coin parameter rho in [0, 1]. */
typedef struct qw_walk_params {
  int r;
  double rho;
} qw_walk_params;

/* Initial coin state (sqrt(a), sqrt(1-a) e^{i phi}), a in [0,1], phi in [0, 2 pi). */
typedef struct qw_coin_state {
  double a;
  double phi;
} qw_coin_state;

typedef struct qw_tolerances {
  double probability; /* default 1e-10 */
  double algebraic;   /* default 1e-12 */
} qw_tolerances;

QWALK_API qw_tolerances qw_default_tolerances(void);

/* ---- position-space evolution ---------------------------------------- */

typedef struct qw_wavefunction qw_wavefunction;

typedef struct qw_amplitude_row {
  int64_t m;
  double prob;
  double amp_r_re;
  double amp_r_im;
  double amp_l_re;
  double amp_l_im;
} qw_amplitude_row;

/* Evolves a point source at the origin for t >= 0 steps. */
QWALK_API qw_status qw_evolve(const qw_walk_params* params, const qw_coin_state* state,
                              int64_t t, qw_wavefunction** out);

/* Same state obtained by the exact inverse Fourier sum over momenta. */
QWALK_API qw_status qw_reconstruct(const qw_walk_params* params, const qw_coin_state* state,
                                   int64_t t, qw_wavefunction** out);

QWALK_API void qw_wavefunction_free(qw_wavefunction* psi);
QWALK_API int64_t qw_wavefunction_time(const qw_wavefunction* psi);
/* Number of stored positions; rows are sorted by m. */
QWALK_API size_t qw_wavefunction_size(const qw_wavefunction* psi);
QWALK_API qw_status qw_wavefunction_row(const qw_wavefunction* psi, size_t index,
                                        qw_amplitude_row* row);
QWALK_API double qw_wavefunction_norm(const qw_wavefunction* psi);

/* Norm, light-cone support and residue-class checks. */
QWALK_API qw_status qw_wavefunction_check(const qw_wavefunction* psi,
                                          const qw_walk_params* params,
                                          const qw_tolerances* tol);

QWALK_API qw_status qw_empirical_mean(const qw_wavefunction* psi, double* mean);

/* Outermost local maxima of P(m); QW_ERR_DEGENERATE if fewer than two. */
QWALK_API qw_status qw_detect_peaks(const qw_wavefunction* psi, int64_t* m_left,
                                    int64_t* m_right);

/* ---- origin series and Polya estimate -------------------------------- */

typedef struct qw_origin_series qw_origin_series;

/* P0(t) for t = 0 .. t_max, unoccupied times included as exact zeros. */
QWALK_API qw_status qw_origin_series_compute(const qw_walk_params* params,
                                             const qw_coin_state* state, int64_t t_max,
                                             qw_origin_series** out);
QWALK_API void qw_origin_series_free(qw_origin_series* series);
QWALK_API size_t qw_origin_series_size(const qw_origin_series* series);
QWALK_API qw_status qw_origin_series_entry(const qw_origin_series* series, size_t index,
                                           int64_t* t, double* p0, int* occupied);

typedef struct qw_line_fit {
  double slope;
  double intercept;
  double r_squared;
  size_t points;
} qw_line_fit;

typedef struct qw_polya_report {
  int64_t t_max;
  double estimate;        /* 1 - partial_product */
  double partial_product; /* prod over occupied t of (1 - P0(t)) */
  qw_line_fit loglog;     /* log P0 vs log t, last decade of occupied t */
  qw_line_fit loglinear;  /* log P0 vs t, same window */
  int recurrent;          /* closed-form verdict */
  int boundary;
} qw_polya_report;

QWALK_API qw_status qw_polya(const qw_walk_params* params, const qw_coin_state* state,
                             int64_t t_max, qw_polya_report* out);

/* ---- classification --------------------------------------------------- */

enum { QW_MAX_SADDLES = 4 };

typedef enum qw_region {
  QW_REGION_TRANSIENT_GENUINE = 0,
  QW_REGION_RECURRENT_GENUINE = 1,
  QW_REGION_RECURRENT_UNBIASABLE = 2
} qw_region;

QWALK_API const char* qw_region_name(int region);

typedef struct qw_classification {
  int r;
  double rho;
  double rho_r;      /* recurrence threshold ((r-1)/(r+1))^2 */
  int recurrent;
  double v_left;
  double v_right;
  double rho_0;      /* genuine-bias threshold ((r^2-1)/(r^2+1))^2 */
  int genuine_biased;
  int saddle_exists;
  int saddle_degenerate;
  double saddle_argument;
  size_t saddle_count;
  double saddles[QW_MAX_SADDLES];
  int boundary;
  int region;        /* qw_region */
} qw_classification;

QWALK_API qw_status qw_classify(const qw_walk_params* params, const qw_tolerances* tol,
                                qw_classification* out);

/* ---- mean value ------------------------------------------------------- */

typedef struct qw_mean_report {
  double closed_form;
  double integral;
  double difference;   /* closed_form - integral */
  int analytic_limit;  /* rho in {0, 1} */
  int has_empirical;
  int64_t empirical_t;
  double empirical;    /* <x>/t from simulation at empirical_t */
} qw_mean_report;

/* empirical_t <= 0 skips the simulation. */
QWALK_API qw_status qw_mean(const qw_walk_params* params, const qw_coin_state* state,
                            int64_t empirical_t, qw_mean_report* out);

QWALK_API qw_status qw_minimizing_state(double rho, qw_coin_state* out);

/* ---- phase diagram ---------------------------------------------------- */

typedef struct qw_phase_diagram qw_phase_diagram;

typedef struct qw_threshold_row {
  int r;
  double rho_r;
  double rho_0;
} qw_threshold_row;

typedef struct qw_grid_point {
  int r;
  double rho;
  int region;
} qw_grid_point;

QWALK_API qw_status qw_phase_diagram_compute(int r_max, int rho_steps, int with_grid,
                                             qw_phase_diagram** out);
QWALK_API void qw_phase_diagram_free(qw_phase_diagram* table);
QWALK_API size_t qw_phase_diagram_rows(const qw_phase_diagram* table);
QWALK_API qw_status qw_phase_diagram_row(const qw_phase_diagram* table, size_t index,
                                         qw_threshold_row* row);
QWALK_API size_t qw_phase_diagram_grid_size(const qw_phase_diagram* table);
QWALK_API qw_status qw_phase_diagram_grid_point(const qw_phase_diagram* table, size_t index,
                                                qw_grid_point* point);

/* ---- classical baseline ----------------------------------------------- */

/* p_den > 0 supplies p exactly as p_num / p_den and p is ignored. */
typedef struct qw_classical_params {
  int r;
  double p;
  int64_t p_num;
  int64_t p_den;
} qw_classical_params;

typedef struct qw_classical_report {
  int64_t t;
  double p0;
  double q;
  int has_stirling;  /* (r+1) | t and t >= r+1 */
  double stirling;
  int recurrent;
  double mean;
  int has_monte_carlo;
  int64_t trials;
  uint64_t seed;
  double mc_mean;
  double mc_mean_stderr;
  double mc_origin_frequency;
  double mc_origin_stderr;
} qw_classical_report;

QWALK_API const char* qw_classical_generator(void);

/* trials <= 0 skips the Monte Carlo estimate. threads = 0 uses all cores. */
QWALK_API qw_status qw_classical(const qw_classical_params* params, int64_t t,
                                 int64_t trials, uint64_t seed, unsigned threads,
                                 qw_classical_report* out);

#ifdef __cplusplus
}
#endif

#endif /* QWALK_QWALK_H */
