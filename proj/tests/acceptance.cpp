// SPDX-License-Identifier: Apache-2.0
//
// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <string>

#include "oracles.hpp"
#include "qwalk/analysis.hpp"
#include "qwalk/classical.hpp"
#include "qwalk/evolution.hpp"
#include "qwalk/spectral.hpp"
#include "qwalk/walk.hpp"

using namespace qwalk;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + std::string("failed: ") + what;
    }
  }
  void note(const std::string& text) {
    if (pass) detail += (detail.empty() ? "" : "; ") + text;
  }
};

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

Outcome fig3_velocities() {
  Outcome o;
  const WalkParams p(3, 1.0 / std::sqrt(2.0));
  const PeakVelocities v = peak_velocities(p);
  o.require(std::abs(v.left + 0.6818) <= 5e-4, "v_L = " + fmt(v.left));
  o.require(std::abs(v.right - 2.6818) <= 5e-4, "v_R = " + fmt(v.right));
  const Step t = 300;
  const PeakPair peaks =
      detect_peaks(distribution(evolve(make_initial_state(1.0 / std::sqrt(2.0), kPi), p, t)));
  const double left = static_cast<double>(peaks.left) / t;
  const double right = static_cast<double>(peaks.right) / t;
  o.require(std::abs(left - v.left) <= 0.05, "m_left/t = " + fmt(left));
  o.require(std::abs(right - v.right) <= 0.05, "m_right/t = " + fmt(right));
  o.note("v_L=" + fmt(v.left) + " v_R=" + fmt(v.right) + " peaks/t=" + fmt(left) + "," +
         fmt(right) + " tol 5e-4/0.05");
  return o;
}

Outcome threshold_chain() {
  Outcome o;
  o.require(recurrence_threshold(3) == 0.25, "rho_R(3) = " + fmt(recurrence_threshold(3)));
  o.require(!saddle_points(WalkParams(3, 0.24)).exists, "saddles at rho = 0.24");
  o.require(saddle_points(WalkParams(3, 0.26)).exists, "no saddles at rho = 0.26");
  int mismatches = 0;
  for (int r = 1; r <= 10; ++r) {
    for (int i = 1; i <= 99; ++i) {
      const WalkParams p(r, i / 100.0);
      const bool rec = classify_recurrence(p);
      const PeakVelocities v = peak_velocities(p);
      if (rec != saddle_points(p).exists || rec != (v.left <= 0.0 && v.right >= 0.0)) ++mismatches;
    }
  }
  o.require(mismatches == 0, std::to_string(mismatches) + " grid mismatches");
  o.note("990 grid points, 0 mismatches");
  return o;
}

Outcome decay_exponents() {
  Outcome o;
  const CoinVector v = make_initial_state(1.0, 0.0);
  const LineFit rec = loglog_decay_fit(origin_series(v, WalkParams(3, 0.5), 1000), 100, 1000);
  o.require(std::abs(rec.slope + 1.0) <= 0.15, "log-log slope " + fmt(rec.slope));
  const OriginSeries tr = origin_series(v, WalkParams(3, 0.1), 1000);
  const LineFit lin = loglinear_decay_fit(tr, 100, 1000);
  o.require(lin.slope < 0.0 && lin.r_squared >= 0.99,
            "log-linear slope " + fmt(lin.slope) + " R^2 " + fmt(lin.r_squared));
  o.note("recurrent slope=" + fmt(rec.slope) + " (tol 0.15); transient slope=" + fmt(lin.slope) +
         " R^2=" + fmt(lin.r_squared));
  return o;
}

Outcome mean_formula() {
  Outcome o;
  testing::Sampler rng(2718);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const WalkParams p(rng.integer(1, 10), rng.uniform(0.01, 0.99));
    const double a = rng.uniform(0.0, 1.0);
    const double phi = rng.uniform(0.0, 2 * kPi);
    worst = std::max(worst,
                     std::abs(asymptotic_mean(a, phi, p).value - mean_integral(a, phi, p).value));
  }
  o.require(worst <= 1e-8, "closed form vs integral " + fmt(worst));

  struct Case {
    WalkParams p;
    double a;
    double phi;
  };
  const Case cases[] = {{WalkParams(3, 1.0 / std::sqrt(2.0)), 1.0 / std::sqrt(2.0), kPi},
                        {WalkParams(1, 0.5), 1.0, 0.0}};
  double worst_emp = 0.0;
  for (const Case& c : cases) {
    const double closed = asymptotic_mean(c.a, c.phi, c.p).value;
    const double emp =
        empirical_mean(distribution(evolve(make_initial_state(c.a, c.phi), c.p, 400))) / 400;
    worst_emp = std::max(worst_emp, std::abs(emp - closed));
  }
  o.require(worst_emp <= 0.01, "empirical vs closed form " + fmt(worst_emp));
  const double hadamard = asymptotic_mean(1.0, 0.0, WalkParams(1, 0.5)).value;
  o.require(std::abs(hadamard - (1.0 - 1.0 / std::sqrt(2.0))) <= 1e-12,
            "Hadamard mean " + fmt(hadamard));
  o.note("max |closed-integral|=" + fmt(worst) + " (tol 1e-8); max |empirical-closed|=" +
         fmt(worst_emp) + " (tol 0.01)");
  return o;
}

Outcome genuine_bias() {
  Outcome o;
  const MinimizingState m = minimizing_state(0.64);
  o.require(std::abs(m.a - 0.1) <= 1e-12 && m.phi == kPi,
            "minimizing state (" + fmt(m.a) + ", " + fmt(m.phi) + ")");
  const double at_rho0 = asymptotic_mean(0.1, kPi, WalkParams(3, 0.64)).value;
  o.require(std::abs(at_rho0) <= 1e-12, "mean at rho_0 " + fmt(at_rho0));
  const double below = minimal_mean(WalkParams(3, 0.60));
  o.require(below > 0.0, "minimal mean at 0.60 " + fmt(below));
  o.require(minimal_mean(WalkParams(3, 0.6399)) > 0.0 && minimal_mean(WalkParams(3, 0.6401)) < 0.0,
            "sign change not at 0.64");
  double grid_min = std::numeric_limits<double>::infinity();
  const WalkParams p(3, 0.5);
  for (int i = 0; i <= 200; ++i) {
    for (int j = 0; j < 200; ++j) {
      grid_min = std::min(grid_min, asymptotic_mean(i / 200.0, 2 * kPi * j / 200, p).value);
    }
  }
  o.require(grid_min > 0.0, "grid minimum at rho = 0.5 " + fmt(grid_min));
  o.note("mean(rho_0)=" + fmt(at_rho0) + " minimal(0.60)=" + fmt(below) +
         " grid min(0.5)=" + fmt(grid_min));
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  testing::Sampler rng(31415);
  double worst = 0.0;
  for (int i = 0; i < 5; ++i) {
    const WalkParams p(rng.integer(1, 6), rng.uniform(0.0, 1.0));
    const CoinVector v = make_initial_state(rng.uniform(0.0, 1.0), rng.uniform(0.0, 2 * kPi));
    const WaveFunction direct = evolve(v, p, 50);
    const WaveFunction fourier = reconstruct_wavefunction(v, p, 50);
    for (const auto& [m, s] : direct.amplitudes) {
      auto it = fourier.amplitudes.find(m);
      worst = std::max(worst, it == fourier.amplitudes.end() ? std::sqrt(s.norm_squared())
                                                             : max_abs_diff(s, it->second));
    }
  }
  o.require(worst <= 1e-10, "max deviation " + fmt(worst));
  o.note("max componentwise deviation=" + fmt(worst) + " (tol 1e-10)");
  return o;
}

Outcome classical_baseline() {
  Outcome o;
  for (int r = 1; r <= 10; ++r) {
    const double q = q_factor(ClassicalParams(r, Ratio{1, r + 1}));
    o.require(q == 1.0, "q(r=" + std::to_string(r) + ") = " + fmt(q));
  }
  double worst_stirling = 0.0;
  for (int r = 1; r <= 10; ++r) {
    const ClassicalParams cp(r, Ratio{1, r + 1});
    const Step t = 1000 * static_cast<Step>(r + 1);
    const double rel =
        std::abs(stirling_asymptotic(cp, t) / classical_origin_probability(cp, t) - 1.0);
    worst_stirling = std::max(worst_stirling, rel);
  }
  o.require(worst_stirling <= 1e-3, "Stirling relative error " + fmt(worst_stirling));

  const ClassicalParams cp(3, Ratio{1, 4});
  const Step t = 40;
  const MonteCarloResult mc = classical_monte_carlo(cp, t, 1'000'000, 20240601);
  const double p0 = classical_origin_probability(cp, t);
  const double z_mean = (mc.mean_estimate - classical_mean(cp, t)) / mc.mean_stderr;
  const double z_p0 = (mc.origin_frequency - p0) / std::sqrt(p0 * (1 - p0) / mc.trials);
  o.require(std::abs(z_mean) <= 4.0, "mean z = " + fmt(z_mean));
  o.require(std::abs(z_p0) <= 4.0, "P0 z = " + fmt(z_p0));
  o.note("Stirling rel err=" + fmt(worst_stirling) + " (tol 1e-3); MC z(mean)=" + fmt(z_mean) +
         " z(P0)=" + fmt(z_p0) + " (tol 4)");
  return o;
}

Outcome conservation() {
  Outcome o;
  testing::Sampler rng(1618);
  double worst = 0.0;
  int violations = 0;
  for (int i = 0; i < 10; ++i) {
    const WalkParams p(rng.integer(1, 10), rng.uniform(0.0, 1.0));
    WalkState state(make_initial_state(rng.uniform(0.0, 1.0), rng.uniform(0.0, 2 * kPi)), p);
    for (int t = 1; t <= 1000; ++t) {
      state.advance();
      worst = std::max(worst, std::abs(state.norm_squared() - 1.0));
      try {
        check_invariants(state.to_wavefunction(), p);
      } catch (const InvariantError&) {
        ++violations;
      }
    }
  }
  o.require(worst <= 1e-10, "norm drift " + fmt(worst));
  o.require(violations == 0, std::to_string(violations) + " invariant violations");
  o.note("max |norm-1|=" + fmt(worst) + " (tol 1e-10), 10000 steps checked");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {1, "peak velocities", 5, fig3_velocities},
      {2, "recurrence threshold and equivalence chain", 10, threshold_chain},
      {3, "decay exponents", 60, decay_exponents},
      {4, "mean-value formula", 0, mean_formula},
      {5, "genuine-bias boundary", 0, genuine_bias},
      {6, "spectral reconstruction oracle", 30, oracle_equivalence},
      {7, "classical baseline", 0, classical_baseline},
      {8, "conservation suite", 0, conservation},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_s > 0 && secs > c.budget_s) {
      o.pass = false;
      o.detail += "; runtime over " + fmt(c.budget_s) + " s";
    }
    if (!o.pass) ++failures;
    std::printf("%s %d %s: %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs);
  }
  std::fflush(stdout);
  return failures == 0 ? 0 : 1;
}
