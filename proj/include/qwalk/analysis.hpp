// SPDX-License-Identifier: Apache-2.0
//
// Closed-form verdicts and asymptotics for the biased walk family, plus the
// numerical estimators used to check them against simulation.

#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "qwalk/spectral.hpp"
#include "qwalk/types.hpp"

namespace qwalk {

/// rho_R(r) = ((r-1)/(r+1))^2
double recurrence_threshold(int r);

/// rho >= rho_R(r). The boundary itself counts as recurrent.
bool classify_recurrence(const WalkParams& params);

struct PeakVelocities {
  double left = 0.0;
  double right = 0.0;
};

/// v_{L,R} = (r-1)/2 -+ (r+1) sqrt(rho) / 2
PeakVelocities peak_velocities(const WalkParams& params);

/// Ordinary least squares y = slope x + intercept.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t points = 0;
};

LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// Fit of log P0 against log t over occupied t in [t_lo, t_hi] with P0 > 0.
LineFit loglog_decay_fit(const OriginSeries& series, Step t_lo, Step t_hi);

/// Fit of log P0 against t over occupied t in [t_lo, t_hi] with P0 > 0.
LineFit loglinear_decay_fit(const OriginSeries& series, Step t_lo, Step t_hi);

/// 1 - prod_{occupied 1 <= t <= t_max} (1 - P0(t))
double polya_estimate(const OriginSeries& series, Step t_max);
double polya_estimate(const CoinVector& initial, const WalkParams& params, Step t_max);

struct PolyaReport {
  Step t_max = 0;
  double estimate = 0.0;
  double partial_product = 1.0;
  LineFit loglog;     // last decade of occupied times
  LineFit loglinear;  // same window
  bool recurrent = false;  // closed-form verdict, never the estimate
  bool boundary = false;
};

PolyaReport polya_report(const CoinVector& initial, const WalkParams& params, Step t_max);

/// A value that may have been obtained from an analytic limit.
struct MeanValue {
  double value = 0.0;
  bool analytic_limit = false;  // rho in {0, 1}
};

/// Asymptotic <x/t> for initial state (a, phi), closed form.
MeanValue asymptotic_mean(double a, double phi, const WalkParams& params);

/// Asymptotic <x/t> as the weak-limit integral
/// sum_j int dk/2pi omega'_j(k) |(v_j(k), psi)|^2, evaluated by the periodic
/// trapezoidal rule with doubling until converged.
MeanValue mean_integral(double a, double phi, const WalkParams& params);

struct MinimizingState {
  double a = 0.0;
  double phi = 0.0;
};

/// Initial state minimizing the asymptotic mean: ((1 - sqrt(rho))/2, pi).
MinimizingState minimizing_state(double rho);

/// Asymptotic mean at the minimizing state,
/// (r-1)/2 + (1 - sqrt(1-rho) - rho)(1+r) / (2 sqrt((1-rho) rho)).
double minimal_mean(const WalkParams& params);

/// rho_0(r) = ((r^2-1)/(r^2+1))^2
double genuine_bias_threshold(int r);

/// rho < rho_0(r): no initial state gives zero asymptotic mean.
bool classify_genuine_bias(const WalkParams& params);

enum class Region { TransientGenuine, RecurrentGenuine, RecurrentUnbiasable };

std::string_view region_name(Region region);
Region classify_region(const WalkParams& params);

struct ThresholdRow {
  int r = 1;
  double rho_recurrence = 0.0;
  double rho_genuine = 0.0;
};

struct GridPoint {
  int r = 1;
  double rho = 0.0;
  Region region = Region::RecurrentUnbiasable;
};

struct PhaseDiagramTable {
  std::vector<ThresholdRow> rows;
  std::vector<GridPoint> grid;  // rho_i = i / (rho_steps + 1), i = 1 .. rho_steps
};

PhaseDiagramTable phase_diagram(int r_max, int rho_steps, bool with_grid = true);

struct ClassificationReport {
  WalkParams params;
  double rho_recurrence = 0.0;
  bool recurrent = false;
  PeakVelocities velocities;
  double rho_genuine = 0.0;
  bool genuine_biased = false;
  SaddleSet saddles;
  bool boundary = false;  // |rho - rho_R| <= tol.algebraic
  Region region = Region::RecurrentUnbiasable;
};

ClassificationReport classify(const WalkParams& params, const Tolerances& tol = {});

}  // namespace qwalk
