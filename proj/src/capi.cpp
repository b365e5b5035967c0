// SPDX-License-Identifier: Apache-2.0

#include "qwalk/qwalk.h"

#include <exception>
#include <new>
#include <string>
#include <vector>

#include "qwalk/analysis.hpp"
#include "qwalk/classical.hpp"
#include "qwalk/evolution.hpp"
#include "qwalk/spectral.hpp"
#include "qwalk/walk.hpp"

struct qw_wavefunction {
  qwalk::WaveFunction psi;
  std::vector<qwalk::Position> positions;  // index -> m
};

struct qw_origin_series {
  qwalk::OriginSeries series;
};

struct qw_phase_diagram {
  qwalk::PhaseDiagramTable table;
};

namespace {

thread_local std::string g_last_error;

qw_status fail(qw_status code, const char* what) {
  g_last_error = what;
  return code;
}

template <typename F>
qw_status guarded(F&& body) {
  try {
    g_last_error.clear();
    body();
    return QW_OK;
  } catch (const qwalk::DomainError& e) {
    return fail(QW_ERR_DOMAIN, e.what());
  } catch (const qwalk::DegenerateError& e) {
    return fail(QW_ERR_DEGENERATE, e.what());
  } catch (const qwalk::InvariantError& e) {
    return fail(QW_ERR_INVARIANT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(QW_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(QW_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(QW_ERR_INTERNAL, "unknown error");
  }
}

void require(const void* p, const char* name) {
  if (p == nullptr) throw qwalk::DomainError(std::string(name) + " must not be null");
}

qwalk::WalkParams walk(const qw_walk_params* p) {
  require(p, "params");
  return qwalk::WalkParams(p->r, p->rho);
}

qwalk::CoinVector coin(const qw_coin_state* s) {
  require(s, "state");
  return qwalk::make_initial_state(s->a, s->phi);
}

qwalk::Tolerances tolerances(const qw_tolerances* t) {
  qwalk::Tolerances out;
  if (t != nullptr) {
    out.probability = t->probability;
    out.algebraic = t->algebraic;
  }
  return out;
}

qw_wavefunction* wrap(qwalk::WaveFunction psi) {
  auto* h = new qw_wavefunction{std::move(psi), {}};
  h->positions.reserve(h->psi.amplitudes.size());
  for (const auto& [m, s] : h->psi.amplitudes) h->positions.push_back(m);
  return h;
}

qw_line_fit to_c(const qwalk::LineFit& f) {
  return {f.slope, f.intercept, f.r_squared, f.points};
}

}  // namespace

extern "C" {

const char* qw_version(void) { return "0.1.0"; }

const char* qw_last_error(void) { return g_last_error.c_str(); }

qw_tolerances qw_default_tolerances(void) {
  const qwalk::Tolerances t;
  return {t.probability, t.algebraic};
}

qw_status qw_evolve(const qw_walk_params* params, const qw_coin_state* state, int64_t t,
                    qw_wavefunction** out) {
  return guarded([&] {
    require(out, "out");
    *out = wrap(qwalk::evolve(coin(state), walk(params), t));
  });
}

qw_status qw_reconstruct(const qw_walk_params* params, const qw_coin_state* state,
                         int64_t t, qw_wavefunction** out) {
  return guarded([&] {
    require(out, "out");
    *out = wrap(qwalk::reconstruct_wavefunction(coin(state), walk(params), t));
  });
}

void qw_wavefunction_free(qw_wavefunction* psi) { delete psi; }

int64_t qw_wavefunction_time(const qw_wavefunction* psi) {
  return psi == nullptr ? -1 : psi->psi.t;
}

size_t qw_wavefunction_size(const qw_wavefunction* psi) {
  return psi == nullptr ? 0 : psi->positions.size();
}

qw_status qw_wavefunction_row(const qw_wavefunction* psi, size_t index,
                              qw_amplitude_row* row) {
  return guarded([&] {
    require(psi, "psi");
    require(row, "row");
    if (index >= psi->positions.size()) throw qwalk::DomainError("row index out of range");
    const qwalk::Position m = psi->positions[index];
    const qwalk::Spinor& s = psi->psi.amplitudes.at(m);
    *row = {m, s.norm_squared(), s.right.real(), s.right.imag(), s.left.real(), s.left.imag()};
  });
}

double qw_wavefunction_norm(const qw_wavefunction* psi) {
  return psi == nullptr ? 0.0 : psi->psi.norm_squared();
}

qw_status qw_wavefunction_check(const qw_wavefunction* psi, const qw_walk_params* params,
                                const qw_tolerances* tol) {
  return guarded([&] {
    require(psi, "psi");
    qwalk::check_invariants(psi->psi, walk(params), tolerances(tol));
  });
}

qw_status qw_empirical_mean(const qw_wavefunction* psi, double* mean) {
  return guarded([&] {
    require(psi, "psi");
    require(mean, "mean");
    *mean = qwalk::empirical_mean(qwalk::distribution(psi->psi));
  });
}

qw_status qw_detect_peaks(const qw_wavefunction* psi, int64_t* m_left, int64_t* m_right) {
  return guarded([&] {
    require(psi, "psi");
    require(m_left, "m_left");
    require(m_right, "m_right");
    const qwalk::PeakPair peaks = qwalk::detect_peaks(qwalk::distribution(psi->psi));
    *m_left = peaks.left;
    *m_right = peaks.right;
  });
}

qw_status qw_origin_series_compute(const qw_walk_params* params, const qw_coin_state* state,
                                   int64_t t_max, qw_origin_series** out) {
  return guarded([&] {
    require(out, "out");
    *out = new qw_origin_series{qwalk::origin_series(coin(state), walk(params), t_max)};
  });
}

void qw_origin_series_free(qw_origin_series* series) { delete series; }

size_t qw_origin_series_size(const qw_origin_series* series) {
  return series == nullptr ? 0 : series->series.samples.size();
}

qw_status qw_origin_series_entry(const qw_origin_series* series, size_t index, int64_t* t,
                                 double* p0, int* occupied) {
  return guarded([&] {
    require(series, "series");
    if (index >= series->series.samples.size()) {
      throw qwalk::DomainError("series index out of range");
    }
    const qwalk::OriginSample& s = series->series.samples[index];
    if (t != nullptr) *t = s.t;
    if (p0 != nullptr) *p0 = s.p0;
    if (occupied != nullptr) *occupied = series->series.occupied(s.t) ? 1 : 0;
  });
}

qw_status qw_polya(const qw_walk_params* params, const qw_coin_state* state, int64_t t_max,
                   qw_polya_report* out) {
  return guarded([&] {
    require(out, "out");
    const qwalk::PolyaReport rep = qwalk::polya_report(coin(state), walk(params), t_max);
    *out = {rep.t_max, rep.estimate, rep.partial_product, to_c(rep.loglog),
            to_c(rep.loglinear), rep.recurrent ? 1 : 0, rep.boundary ? 1 : 0};
  });
}

const char* qw_region_name(int region) {
  switch (region) {
    case QW_REGION_TRANSIENT_GENUINE:
    case QW_REGION_RECURRENT_GENUINE:
    case QW_REGION_RECURRENT_UNBIASABLE:
      return qwalk::region_name(static_cast<qwalk::Region>(region)).data();
    default:
      return "unknown";
  }
}

qw_status qw_classify(const qw_walk_params* params, const qw_tolerances* tol,
                      qw_classification* out) {
  return guarded([&] {
    require(out, "out");
    const qwalk::ClassificationReport rep = qwalk::classify(walk(params), tolerances(tol));
    qw_classification c{};
    c.r = rep.params.r();
    c.rho = rep.params.rho();
    c.rho_r = rep.rho_recurrence;
    c.recurrent = rep.recurrent ? 1 : 0;
    c.v_left = rep.velocities.left;
    c.v_right = rep.velocities.right;
    c.rho_0 = rep.rho_genuine;
    c.genuine_biased = rep.genuine_biased ? 1 : 0;
    c.saddle_exists = rep.saddles.exists ? 1 : 0;
    c.saddle_degenerate = rep.saddles.degenerate ? 1 : 0;
    c.saddle_argument = rep.saddles.argument;
    c.saddle_count = std::min<std::size_t>(rep.saddles.points.size(), QW_MAX_SADDLES);
    for (std::size_t i = 0; i < c.saddle_count; ++i) c.saddles[i] = rep.saddles.points[i];
    c.boundary = rep.boundary ? 1 : 0;
    c.region = static_cast<int>(rep.region);
    *out = c;
  });
}

qw_status qw_mean(const qw_walk_params* params, const qw_coin_state* state,
                  int64_t empirical_t, qw_mean_report* out) {
  return guarded([&] {
    require(out, "out");
    require(state, "state");
    const qwalk::WalkParams p = walk(params);
    const qwalk::MeanValue closed = qwalk::asymptotic_mean(state->a, state->phi, p);
    const qwalk::MeanValue integral = qwalk::mean_integral(state->a, state->phi, p);
    qw_mean_report rep{};
    rep.closed_form = closed.value;
    rep.integral = integral.value;
    rep.difference = closed.value - integral.value;
    rep.analytic_limit = (closed.analytic_limit || integral.analytic_limit) ? 1 : 0;
    if (empirical_t > 0) {
      const qwalk::Distribution d = qwalk::distribution(qwalk::evolve(coin(state), p, empirical_t));
      rep.has_empirical = 1;
      rep.empirical_t = empirical_t;
      rep.empirical = qwalk::empirical_mean(d) / static_cast<double>(empirical_t);
    }
    *out = rep;
  });
}

qw_status qw_minimizing_state(double rho, qw_coin_state* out) {
  return guarded([&] {
    require(out, "out");
    const qwalk::MinimizingState s = qwalk::minimizing_state(rho);
    *out = {s.a, s.phi};
  });
}

qw_status qw_phase_diagram_compute(int r_max, int rho_steps, int with_grid,
                                   qw_phase_diagram** out) {
  return guarded([&] {
    require(out, "out");
    *out = new qw_phase_diagram{qwalk::phase_diagram(r_max, rho_steps, with_grid != 0)};
  });
}

void qw_phase_diagram_free(qw_phase_diagram* table) { delete table; }

size_t qw_phase_diagram_rows(const qw_phase_diagram* table) {
  return table == nullptr ? 0 : table->table.rows.size();
}

qw_status qw_phase_diagram_row(const qw_phase_diagram* table, size_t index,
                               qw_threshold_row* row) {
  return guarded([&] {
    require(table, "table");
    require(row, "row");
    if (index >= table->table.rows.size()) throw qwalk::DomainError("row index out of range");
    const qwalk::ThresholdRow& r = table->table.rows[index];
    *row = {r.r, r.rho_recurrence, r.rho_genuine};
  });
}

size_t qw_phase_diagram_grid_size(const qw_phase_diagram* table) {
  return table == nullptr ? 0 : table->table.grid.size();
}

qw_status qw_phase_diagram_grid_point(const qw_phase_diagram* table, size_t index,
                                      qw_grid_point* point) {
  return guarded([&] {
    require(table, "table");
    require(point, "point");
    if (index >= table->table.grid.size()) throw qwalk::DomainError("grid index out of range");
    const qwalk::GridPoint& g = table->table.grid[index];
    *point = {g.r, g.rho, static_cast<int>(g.region)};
  });
}

const char* qw_classical_generator(void) { return qwalk::monte_carlo_generator().data(); }

qw_status qw_classical(const qw_classical_params* params, int64_t t, int64_t trials,
                       uint64_t seed, unsigned threads, qw_classical_report* out) {
  return guarded([&] {
    require(params, "params");
    require(out, "out");
    const qwalk::ClassicalParams cp =
        params->p_den > 0
            ? qwalk::ClassicalParams(params->r, qwalk::Ratio{params->p_num, params->p_den})
            : qwalk::ClassicalParams(params->r, params->p);
    if (t < 0) throw qwalk::DomainError("t must be non-negative");
    qw_classical_report rep{};
    rep.t = t;
    rep.p0 = qwalk::classical_origin_probability(cp, t);
    rep.q = qwalk::q_factor(cp);
    const int stride = cp.r() + 1;
    if (t >= stride && t % stride == 0) {
      rep.has_stirling = 1;
      rep.stirling = qwalk::stirling_asymptotic(cp, t);
    }
    rep.recurrent = qwalk::classical_recurrent(cp) ? 1 : 0;
    rep.mean = qwalk::classical_mean(cp, t);
    if (trials > 0) {
      const qwalk::MonteCarloResult mc = qwalk::classical_monte_carlo(cp, t, trials, seed, threads);
      rep.has_monte_carlo = 1;
      rep.trials = mc.trials;
      rep.seed = seed;
      rep.mc_mean = mc.mean_estimate;
      rep.mc_mean_stderr = mc.mean_stderr;
      rep.mc_origin_frequency = mc.origin_frequency;
      rep.mc_origin_stderr = mc.origin_stderr;
    }
    *out = rep;
  });
}

}  // extern "C"
