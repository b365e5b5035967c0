// SPDX-License-Identifier: Apache-2.0

#include "qwalk/analysis.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "qwalk/evolution.hpp"
#include "qwalk/walk.hpp"

namespace qwalk {

namespace {

constexpr double kPi = std::numbers::pi;

void require_positive_r(int r) {
  if (r < 1) throw DomainError("r must be a positive integer, got " + std::to_string(r));
}

}  // namespace

double recurrence_threshold(int r) {
  require_positive_r(r);
  const double num = static_cast<double>(r - 1) * (r - 1);
  const double den = static_cast<double>(r + 1) * (r + 1);
  return num / den;
}

bool classify_recurrence(const WalkParams& params) {
  return params.rho() >= recurrence_threshold(params.r());
}

PeakVelocities peak_velocities(const WalkParams& params) {
  const int r = params.r();
  const double drift = 0.5 * (r - 1);
  const double spread = 0.5 * (r + 1) * std::sqrt(params.rho());
  return {drift - spread, drift + spread};
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  LineFit fit;
  fit.points = std::min(x.size(), y.size());
  if (fit.points < 2) {
    fit.slope = fit.intercept = fit.r_squared = std::numeric_limits<double>::quiet_NaN();
    return fit;
  }
  const double n = static_cast<double>(fit.points);
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < fit.points; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < fit.points; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < fit.points; ++i) {
    const double e = y[i] - (fit.slope * x[i] + fit.intercept);
    ss_res += e * e;
  }
  fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

namespace {

template <typename XMap>
LineFit decay_fit(const OriginSeries& series, Step t_lo, Step t_hi, XMap xmap) {
  std::vector<double> x, y;
  for (const OriginSample& s : series.samples) {
    if (s.t < t_lo || s.t > t_hi || !series.occupied(s.t) || !(s.p0 > 0.0)) continue;
    x.push_back(xmap(static_cast<double>(s.t)));
    y.push_back(std::log(s.p0));
  }
  return fit_line(x, y);
}

}  // namespace

LineFit loglog_decay_fit(const OriginSeries& series, Step t_lo, Step t_hi) {
  return decay_fit(series, std::max<Step>(t_lo, 1), t_hi,
                   [](double t) { return std::log(t); });
}

LineFit loglinear_decay_fit(const OriginSeries& series, Step t_lo, Step t_hi) {
  return decay_fit(series, t_lo, t_hi, [](double t) { return t; });
}

double polya_estimate(const OriginSeries& series, Step t_max) {
  double product = 1.0;
  for (const OriginSample& s : series.samples) {
    if (s.t < 1 || s.t > t_max || !series.occupied(s.t)) continue;
    product *= 1.0 - s.p0;
  }
  return 1.0 - product;
}

double polya_estimate(const CoinVector& initial, const WalkParams& params, Step t_max) {
  if (t_max < 1) throw DomainError("t_max must be at least 1");
  return polya_estimate(origin_series(initial, params, t_max), t_max);
}

PolyaReport polya_report(const CoinVector& initial, const WalkParams& params, Step t_max) {
  if (t_max < 1) throw DomainError("t_max must be at least 1");
  const OriginSeries series = origin_series(initial, params, t_max);
  PolyaReport rep;
  rep.t_max = t_max;
  rep.estimate = polya_estimate(series, t_max);
  rep.partial_product = 1.0 - rep.estimate;
  const Step lo = std::max<Step>(1, t_max / 10);
  rep.loglog = loglog_decay_fit(series, lo, t_max);
  rep.loglinear = loglinear_decay_fit(series, lo, t_max);
  rep.recurrent = classify_recurrence(params);
  rep.boundary = std::abs(params.rho() - recurrence_threshold(params.r())) <= Tolerances{}.algebraic;
  return rep;
}

MeanValue asymptotic_mean(double a, double phi, const WalkParams& params) {
  make_initial_state(a, phi);  // domain check
  const int r = params.r();
  const double rho = params.rho();
  if (rho == 0.0) return {0.5 * (r - 1), true};
  if (rho == 1.0) return {a * (r + 1) - 1.0, true};
  const double c = std::sqrt(1.0 - rho);
  const double bias = (1.0 - c) * (a * (r + 1) - 1.0);
  const double coherence = std::sqrt(a * (1.0 - a)) * (1.0 - c) * (1.0 - rho) * (r + 1) *
                           std::cos(phi) / std::sqrt(rho * (1.0 - rho));
  const double drift = 0.5 * (r - 1) * c;
  return {bias + coherence + drift, false};
}

MeanValue mean_integral(double a, double phi, const WalkParams& params) {
  const CoinVector psi = make_initial_state(a, phi);
  const int r = params.r();
  if (params.rho() == 1.0) {
    // Diagonal propagator: |R> drifts with speed r, |L> with speed -1.
    return {r * std::norm(psi.right()) - std::norm(psi.left()), true};
  }
  auto integrand = [&](double k) {
    const PhaseDerivatives d = phase_derivatives(params, k);
    const Eigenbasis v = eigenvectors(params, k);
    return d.first * std::norm(inner(v.first, psi.spinor())) +
           d.second * std::norm(inner(v.second, psi.spinor()));
  };
  // Periodic trapezoid on [-pi, pi): (1/N) sum g(k_n) equals int dk/2pi g.
  auto trapezoid = [&](std::size_t n) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      sum += integrand(-kPi + 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n));
    }
    return sum / static_cast<double>(n);
  };
  constexpr std::size_t kMaxNodes = std::size_t{1} << 22;
  std::size_t n = 256;
  double prev = trapezoid(n);
  while (n < kMaxNodes) {
    n *= 2;
    const double next = trapezoid(n);
    const bool converged = std::abs(next - prev) <= 1e-14 * std::max(1.0, std::abs(next));
    prev = next;
    if (converged) break;
  }
  return {prev, false};
}

MinimizingState minimizing_state(double rho) {
  if (!(rho > 0.0 && rho < 1.0)) {
    throw DomainError("minimizing state requires rho in (0, 1), got " + std::to_string(rho));
  }
  return {0.5 * (1.0 - std::sqrt(rho)), kPi};
}

double minimal_mean(const WalkParams& params) {
  const double rho = params.rho();
  if (!(rho > 0.0 && rho < 1.0)) {
    throw DomainError("minimal mean requires rho in (0, 1), got " + std::to_string(rho));
  }
  const int r = params.r();
  return 0.5 * (r - 1) +
         (1.0 - std::sqrt(1.0 - rho) - rho) * (1 + r) / (2.0 * std::sqrt((1.0 - rho) * rho));
}

double genuine_bias_threshold(int r) {
  require_positive_r(r);
  const double r2 = static_cast<double>(r) * r;
  return ((r2 - 1.0) * (r2 - 1.0)) / ((r2 + 1.0) * (r2 + 1.0));
}

bool classify_genuine_bias(const WalkParams& params) {
  return params.rho() < genuine_bias_threshold(params.r());
}

std::string_view region_name(Region region) {
  switch (region) {
    case Region::TransientGenuine:
      return "transient-genuine";
    case Region::RecurrentGenuine:
      return "recurrent-genuine";
    case Region::RecurrentUnbiasable:
      return "recurrent-unbiasable";
  }
  return "unknown";
}

Region classify_region(const WalkParams& params) {
  if (!classify_recurrence(params)) return Region::TransientGenuine;
  return classify_genuine_bias(params) ? Region::RecurrentGenuine
                                       : Region::RecurrentUnbiasable;
}

PhaseDiagramTable phase_diagram(int r_max, int rho_steps, bool with_grid) {
  if (r_max < 1) throw DomainError("r_max must be at least 1");
  if (rho_steps < 2) throw DomainError("rho_steps must be at least 2");
  PhaseDiagramTable table;
  table.rows.reserve(static_cast<std::size_t>(r_max));
  for (int r = 1; r <= r_max; ++r) {
    table.rows.push_back({r, recurrence_threshold(r), genuine_bias_threshold(r)});
    if (!with_grid) continue;
    for (int i = 1; i <= rho_steps; ++i) {
      const double rho = static_cast<double>(i) / static_cast<double>(rho_steps + 1);
      table.grid.push_back({r, rho, classify_region(WalkParams(r, rho))});
    }
  }
  return table;
}

ClassificationReport classify(const WalkParams& params, const Tolerances& tol) {
  ClassificationReport rep{params, 0.0, false, {}, 0.0, false, {}, false, Region::RecurrentUnbiasable};
  rep.rho_recurrence = recurrence_threshold(params.r());
  rep.recurrent = classify_recurrence(params);
  rep.velocities = peak_velocities(params);
  rep.rho_genuine = genuine_bias_threshold(params.r());
  rep.genuine_biased = classify_genuine_bias(params);
  rep.saddles = saddle_points(params);
  rep.boundary = std::abs(params.rho() - rep.rho_recurrence) <= tol.algebraic;
  rep.region = classify_region(params);
  return rep;
}

}  // namespace qwalk
