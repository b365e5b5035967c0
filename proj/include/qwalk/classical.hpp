// SPDX-License-Identifier: Apache-2.0
//
// Classical baseline: a random walk stepping +r with probability p and -1
// with probability 1 - p.

#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "qwalk/types.hpp"

namespace qwalk {

/// Exact rational probability num/den.
struct Ratio {
  std::int64_t num = 0;
  std::int64_t den = 1;
};

class ClassicalParams {
 public:
  ClassicalParams(int r, double p);
  /// Keeps the ratio so the recurrence condition p = 1/(r+1) can be tested exactly.
  ClassicalParams(int r, Ratio p);

  int r() const { return r_; }
  double p() const { return p_; }
  const std::optional<Ratio>& ratio() const { return ratio_; }

 private:
  int r_;
  double p_;
  std::optional<Ratio> ratio_;
};

/// log C(n, k) via log-gamma.
double log_binomial(std::int64_t n, std::int64_t k);

/// (1-p)^{tr/(r+1)} p^{t/(r+1)} C(t, tr/(r+1)) when (r+1) | t, else 0.
double classical_origin_probability(const ClassicalParams& params, Step t);

/// q = (1-p)^{r/(r+1)} p^{1/(r+1)} (r+1) / r^{r/(r+1)}; zero for p in {0, 1}.
double q_factor(const ClassicalParams& params);

/// Leading-order Stirling form (r+1)/sqrt(2 pi r t) q^t.
/// Requires (r+1) | t and t >= r+1.
double stirling_asymptotic(const ClassicalParams& params, Step t);

/// p = 1/(r+1): exactly for rational p, else within tol.algebraic.
bool classical_recurrent(const ClassicalParams& params, const Tolerances& tol = {});

/// t (p (r+1) - 1)
double classical_mean(const ClassicalParams& params, Step t);

struct MonteCarloResult {
  std::int64_t trials = 0;
  double mean_estimate = 0.0;
  double mean_stderr = 0.0;       // sample standard deviation / sqrt(trials)
  double origin_frequency = 0.0;
  double origin_stderr = 0.0;     // sqrt(f (1 - f) / trials)
};

/// Name of the pseudo-random generator used by classical_monte_carlo.
std::string_view monte_carlo_generator();

/// Simulates `trials` independent walks of t steps. Trials are split into
/// fixed blocks, each seeded from (seed, block index), so the result depends
/// only on (params, t, trials, seed) and not on `threads` (0 = hardware).
MonteCarloResult classical_monte_carlo(const ClassicalParams& params, Step t,
                                       std::int64_t trials, std::uint64_t seed,
                                       unsigned threads = 0);

}  // namespace qwalk
