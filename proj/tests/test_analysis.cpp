// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <limits>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "qwalk/analysis.hpp"
#include "qwalk/evolution.hpp"
#include "qwalk/walk.hpp"

using namespace qwalk;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

struct GridMinimum {
  double value = 0.0;
  double a = 0.0;
  double phi = 0.0;
};

// Brute-force minimum of the asymptotic mean over a uniform (a, phi) grid.
GridMinimum grid_minimum(const WalkParams& p, int n) {
  GridMinimum best{std::numeric_limits<double>::infinity()};
  for (int i = 0; i <= n; ++i) {
    const double a = static_cast<double>(i) / n;
    for (int j = 0; j < n; ++j) {
      const double phi = 2 * kPi * j / n;
      const double v = asymptotic_mean(a, phi, p).value;
      if (v < best.value) best = {v, a, phi};
    }
  }
  return best;
}

}  // namespace

TEST_CASE("recurrence threshold examples") {
  CHECK(recurrence_threshold(1) == 0.0);
  CHECK(recurrence_threshold(3) == 0.25);
  CHECK(recurrence_threshold(7) == 0.5625);
  CHECK_THROWS_AS(recurrence_threshold(0), DomainError);
}

TEST_CASE("classify_recurrence examples") {
  CHECK(classify_recurrence(WalkParams(3, 1.0 / std::sqrt(2.0))));
  CHECK_FALSE(classify_recurrence(WalkParams(3, 0.1)));
  CHECK(classify_recurrence(WalkParams(3, 0.25)));
  for (double rho : {0.0, 0.3, 1.0}) CHECK(classify_recurrence(WalkParams(1, rho)));
}

TEST_CASE("peak velocity examples and identities") {
  const PeakVelocities v = peak_velocities(WalkParams(3, 1.0 / std::sqrt(2.0)));
  CHECK(std::abs(v.left + 0.6818) <= 5e-4);
  CHECK(std::abs(v.right - 2.6818) <= 5e-4);
  const PeakVelocities sym = peak_velocities(WalkParams(1, 0.3));
  CHECK(sym.left == -sym.right);
  CHECK(sym.right == Approx(std::sqrt(0.3)).epsilon(1e-15));
  CHECK(peak_velocities(WalkParams(3, 0.25)).left == 0.0);

  testing::Sampler rng(31);
  for (int i = 0; i < 200; ++i) {
    const WalkParams p(rng.integer(1, 10), rng.uniform(0.0, 1.0));
    const PeakVelocities w = peak_velocities(p);
    CHECK(std::abs(w.right - w.left - (p.r() + 1) * std::sqrt(p.rho())) <= 1e-12);
    CHECK(std::abs(w.right + w.left - (p.r() - 1)) <= 1e-12);
  }
}

TEST_CASE("line fit") {
  const std::vector<double> x{1, 2, 3, 4};
  const std::vector<double> y{3, 5, 7, 9};
  const LineFit f = fit_line(x, y);
  CHECK(f.slope == Approx(2.0));
  CHECK(f.intercept == Approx(1.0));
  CHECK(f.r_squared == Approx(1.0));
  CHECK(f.points == 4);
  CHECK(std::isnan(fit_line(std::vector<double>{1.0}, std::vector<double>{2.0}).slope));
}

TEST_CASE("Polya estimate examples") {
  const CoinVector right = make_initial_state(1.0, 0.0);
  CHECK(polya_estimate(right, WalkParams(3, 0.5), 3) == 0.0);
  CHECK(polya_estimate(right, WalkParams(1, 0.5), 2) == Approx(0.5).epsilon(1e-14));
  CHECK_THROWS_AS(polya_estimate(right, WalkParams(1, 0.5), 0), DomainError);
}

TEST_CASE("Polya estimate is a monotone probability") {
  testing::Sampler rng(37);
  for (int i = 0; i < 6; ++i) {
    const WalkParams p(rng.integer(1, 5), rng.uniform(0.05, 0.95));
    const OriginSeries s =
        origin_series(make_initial_state(rng.uniform(0.0, 1.0), rng.uniform(0.0, 2 * kPi)), p, 400);
    double prev = 0.0;
    for (Step t = 0; t <= 400; t += 10) {
      const double e = polya_estimate(s, t);
      CHECK(e >= 0.0);
      CHECK(e <= 1.0);
      CHECK(e >= prev);
      prev = e;
    }
  }
}

TEST_CASE("Polya estimate converges geometrically for transient walks") {
  for (const auto& [r, rho] : {std::pair{3, 0.1}, std::pair{5, 0.2}, std::pair{2, 0.05}}) {
    const OriginSeries s = origin_series(make_initial_state(0.5, 1.0), WalkParams(r, rho), 1000);
    const double base = polya_estimate(s, 500);
    CHECK(polya_estimate(s, 1000) - base < 1e-6);
    CHECK(polya_estimate(s, 750) - base < 1e-6);
  }
}

TEST_CASE("Polya report") {
  const PolyaReport rep = polya_report(make_initial_state(1.0, 0.0), WalkParams(3, 0.1), 800);
  CHECK_FALSE(rep.recurrent);
  CHECK_FALSE(rep.boundary);
  CHECK(rep.partial_product <= 1.0);
  CHECK(rep.estimate == Approx(1.0 - rep.partial_product));
  CHECK(rep.loglinear.slope < 0.0);
  CHECK(rep.loglinear.r_squared >= 0.99);

  const PolyaReport rec = polya_report(make_initial_state(1.0, 0.0), WalkParams(3, 0.5), 1000);
  CHECK(rec.recurrent);
  CHECK(rec.loglog.slope == Approx(-1.0).epsilon(0.15));

  CHECK(polya_report(make_initial_state(1.0, 0.0), WalkParams(3, 0.25), 40).boundary);
}

TEST_CASE("asymptotic mean examples") {
  for (double rho : {0.1, 0.5, 0.9}) {
    CHECK(std::abs(asymptotic_mean(0.5, kPi / 2, WalkParams(1, rho)).value) <= 1e-14);
  }
  CHECK(asymptotic_mean(1.0, 0.0, WalkParams(1, 0.5)).value ==
        Approx(1.0 - 1.0 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(std::abs(asymptotic_mean(0.1, kPi, WalkParams(3, 0.64)).value) <= 1e-12);
}

TEST_CASE("asymptotic mean analytic limits") {
  const MeanValue zero = asymptotic_mean(0.3, 1.0, WalkParams(3, 0.0));
  CHECK(zero.analytic_limit);
  CHECK(zero.value == Approx(1.0));
  const MeanValue one = asymptotic_mean(0.3, 1.0, WalkParams(3, 1.0));
  CHECK(one.analytic_limit);
  CHECK(one.value == Approx(0.3 * 4 - 1));
  CHECK_FALSE(asymptotic_mean(0.3, 1.0, WalkParams(3, 0.5)).analytic_limit);

  // rho = 1 moves |R> by +r and |L> by -1 every step.
  const Distribution d = distribution(evolve(make_initial_state(0.3, 1.0), WalkParams(3, 1.0), 50));
  CHECK(empirical_mean(d) / 50 == Approx(one.value).epsilon(1e-12));
  const MeanValue integral = mean_integral(0.3, 1.0, WalkParams(3, 1.0));
  CHECK(integral.analytic_limit);
  CHECK(integral.value == Approx(one.value).epsilon(1e-12));
}

TEST_CASE("mean integral examples") {
  CHECK(std::abs(mean_integral(0.5, kPi / 2, WalkParams(1, 0.5)).value) <= 1e-8);
  CHECK(std::abs(mean_integral(1.0, 0.0, WalkParams(1, 0.5)).value - (1.0 - 1.0 / std::sqrt(2.0))) <=
        1e-8);
  const WalkParams p(3, 1.0 / std::sqrt(2.0));
  const double a = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(mean_integral(a, kPi, p).value - asymptotic_mean(a, kPi, p).value) <= 1e-8);
}

TEST_CASE("closed-form mean equals the momentum integral") {
  testing::Sampler rng(41);
  for (int i = 0; i < 50; ++i) {
    const WalkParams p(rng.integer(1, 10), rng.uniform(0.01, 0.99));
    const double a = rng.uniform(0.0, 1.0);
    const double phi = rng.uniform(0.0, 2 * kPi);
    CAPTURE(p.r());
    CAPTURE(p.rho());
    CHECK(std::abs(asymptotic_mean(a, phi, p).value - mean_integral(a, phi, p).value) <= 1e-8);
  }
}

TEST_CASE("empirical mean approaches the asymptotic mean") {
  testing::Sampler rng(43);
  for (int i = 0; i < 5; ++i) {
    const WalkParams p(rng.integer(1, 5), rng.uniform(0.1, 0.9));
    const double a = rng.uniform(0.0, 1.0);
    const double phi = rng.uniform(0.0, 2 * kPi);
    const double target = asymptotic_mean(a, phi, p).value;
    const CoinVector v = make_initial_state(a, phi);
    const double e200 = empirical_mean(distribution(evolve(v, p, 200))) / 200;
    const double e400 = empirical_mean(distribution(evolve(v, p, 400))) / 400;
    CAPTURE(p.r());
    CAPTURE(p.rho());
    CHECK(std::abs(e400 - target) < std::abs(e200 - target));
    CHECK(std::abs(e400 - target) <= 0.01);
  }
}

TEST_CASE("minimizing state") {
  const MinimizingState m = minimizing_state(0.64);
  CHECK(m.a == Approx(0.1).epsilon(1e-15));
  CHECK(m.phi == kPi);
  CHECK(minimizing_state(0.25).a == 0.25);
  CHECK_THROWS_AS(minimizing_state(0.0), DomainError);
  CHECK_THROWS_AS(minimizing_state(1.0), DomainError);
  CHECK_THROWS_AS(minimizing_state(1.5), DomainError);
}

TEST_CASE("minimizing state agrees with a grid search") {
  for (double rho : {0.3, 0.5, 0.8}) {
    const WalkParams p(3, rho);
    const GridMinimum g = grid_minimum(p, 200);
    const MinimizingState m = minimizing_state(rho);
    const double best = asymptotic_mean(m.a, m.phi, p).value;
    CAPTURE(rho);
    CHECK(best <= g.value + 1e-12);
    CHECK(std::abs(g.a - m.a) <= 0.01);
    CHECK(std::abs(g.phi - m.phi) <= 2 * kPi / 200 + 1e-12);
    CHECK(minimal_mean(p) == Approx(best).epsilon(1e-12));
  }
}

TEST_CASE("no zero-mean initial state below the genuine-bias threshold") {
  CHECK(grid_minimum(WalkParams(3, 0.5), 200).value > 0.0);
  CHECK(minimal_mean(WalkParams(3, 0.6)) > 0.0);
  CHECK(std::abs(minimal_mean(WalkParams(3, 0.64))) <= 1e-12);
  CHECK(minimal_mean(WalkParams(3, 0.7)) < 0.0);
  for (int r = 2; r <= 10; ++r) {
    const double rho0 = genuine_bias_threshold(r);
    for (int i = 1; i <= 20; ++i) {
      const double rho = rho0 * i / 21.0;
      CHECK(minimal_mean(WalkParams(r, rho)) > 0.0);
    }
    CHECK(std::abs(minimal_mean(WalkParams(r, rho0))) <= 1e-12);
  }
}

TEST_CASE("genuine-bias threshold") {
  CHECK(genuine_bias_threshold(1) == 0.0);
  CHECK(genuine_bias_threshold(3) == 0.64);
  for (int r = 2; r <= 10; ++r) CHECK(recurrence_threshold(r) < genuine_bias_threshold(r));
  const WalkParams headline(3, 0.5);
  CHECK(classify_genuine_bias(headline));
  CHECK(classify_recurrence(headline));
  CHECK_FALSE(classify_genuine_bias(WalkParams(1, 0.5)));
  CHECK_FALSE(classify_genuine_bias(WalkParams(3, 0.9)));
}

TEST_CASE("regions") {
  CHECK(classify_region(WalkParams(3, 0.1)) == Region::TransientGenuine);
  CHECK(classify_region(WalkParams(3, 0.5)) == Region::RecurrentGenuine);
  CHECK(classify_region(WalkParams(3, 0.9)) == Region::RecurrentUnbiasable);
  CHECK(region_name(Region::TransientGenuine) == "transient-genuine");
  CHECK(region_name(Region::RecurrentGenuine) == "recurrent-genuine");
  CHECK(region_name(Region::RecurrentUnbiasable) == "recurrent-unbiasable");
}

TEST_CASE("phase diagram") {
  const PhaseDiagramTable t = phase_diagram(10, 99);
  REQUIRE(t.rows.size() == 10);
  CHECK(t.rows[0].r == 1);
  CHECK(t.rows[0].rho_recurrence == 0.0);
  CHECK(t.rows[0].rho_genuine == 0.0);
  CHECK(t.rows[2].r == 3);
  CHECK(t.rows[2].rho_recurrence == 0.25);
  CHECK(t.rows[2].rho_genuine == 0.64);
  REQUIRE(t.grid.size() == 10 * 99);
  bool found = false;
  for (const GridPoint& g : t.grid) {
    CHECK(g.region == classify_region(WalkParams(g.r, g.rho)));
    if (g.r == 3 && g.rho == 0.5) {
      found = true;
      CHECK(g.region == Region::RecurrentGenuine);
    }
  }
  CHECK(found);
  CHECK(phase_diagram(4, 10, false).grid.empty());
}

TEST_CASE("classification report") {
  const ClassificationReport rep = classify(WalkParams(3, 0.5));
  CHECK(rep.rho_recurrence == 0.25);
  CHECK(rep.recurrent);
  CHECK(rep.genuine_biased);
  CHECK(rep.rho_genuine == 0.64);
  CHECK(rep.saddles.exists);
  CHECK(rep.saddles.points.size() == 4);
  CHECK_FALSE(rep.boundary);
  CHECK(rep.region == Region::RecurrentGenuine);
  CHECK(classify(WalkParams(3, 0.25)).boundary);
  CHECK_FALSE(classify(WalkParams(3, 0.1)).recurrent);
  const ClassificationReport sym = classify(WalkParams(1, 0.5));
  CHECK(sym.velocities.left == -sym.velocities.right);
  CHECK_FALSE(sym.genuine_biased);
}
