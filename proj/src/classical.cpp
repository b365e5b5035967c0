// SPDX-License-Identifier: Apache-2.0

#include "qwalk/classical.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>
#include <vector>

namespace qwalk {

namespace {

void require_r(int r) {
  if (r < 1) throw DomainError("r must be a positive integer, got " + std::to_string(r));
}

void require_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    std::ostringstream os;
    os << "p must lie in [0, 1], got " << p;
    throw DomainError(os.str());
  }
}

constexpr std::int64_t kBlockTrials = 4096;

}  // namespace

ClassicalParams::ClassicalParams(int r, double p) : r_(r), p_(p) {
  require_r(r);
  require_probability(p);
}

ClassicalParams::ClassicalParams(int r, Ratio p) : r_(r), ratio_(p) {
  require_r(r);
  if (p.den <= 0 || p.num < 0 || p.num > p.den) {
    throw DomainError("p must be a ratio num/den in [0, 1] with den > 0");
  }
  p_ = static_cast<double>(p.num) / static_cast<double>(p.den);
}

double log_binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) throw DomainError("log_binomial requires 0 <= k <= n");
  const auto nd = static_cast<double>(n);
  const auto kd = static_cast<double>(k);
  return std::lgamma(nd + 1.0) - std::lgamma(kd + 1.0) - std::lgamma(nd - kd + 1.0);
}

double classical_origin_probability(const ClassicalParams& params, Step t) {
  if (t < 0) throw DomainError("t must be non-negative");
  const int r = params.r();
  if (t % (r + 1) != 0) return 0.0;
  if (t == 0) return 1.0;
  const Step rights = t / (r + 1);
  const Step lefts = t - rights;
  const double p = params.p();
  if (p == 0.0 || p == 1.0) return 0.0;  // both step kinds are needed
  const double log_p0 = static_cast<double>(lefts) * std::log1p(-p) +
                        static_cast<double>(rights) * std::log(p) +
                        log_binomial(t, lefts);
  return std::exp(log_p0);
}

double q_factor(const ClassicalParams& params) {
  const int r = params.r();
  const double p = params.p();
  if (p == 0.0 || p == 1.0) return 0.0;
  // q = [(1-p)(r+1)/r]^{r/(r+1)} [p(r+1)]^{1/(r+1)}; each base is 1 at p = 1/(r+1).
  double left_base = 0.0;
  double right_base = 0.0;
  if (const auto& q = params.ratio()) {
    left_base = static_cast<double>((q->den - q->num) * (r + 1)) /
                static_cast<double>(q->den * r);
    right_base = static_cast<double>(q->num * (r + 1)) / static_cast<double>(q->den);
  } else {
    left_base = (1.0 - p) * (r + 1) / r;
    right_base = p * (r + 1);
  }
  const double rd = static_cast<double>(r);
  return std::pow(left_base, rd / (rd + 1.0)) * std::pow(right_base, 1.0 / (rd + 1.0));
}

double stirling_asymptotic(const ClassicalParams& params, Step t) {
  const int r = params.r();
  if (t < r + 1 || t % (r + 1) != 0) {
    throw DomainError("Stirling form needs t >= r+1 and (r+1) | t");
  }
  const double q = q_factor(params);
  if (q == 0.0) return 0.0;
  const double td = static_cast<double>(t);
  const double log_value = std::log(r + 1.0) -
                           0.5 * std::log(2.0 * std::numbers::pi * r * td) +
                           td * std::log(q);
  return std::exp(log_value);
}

bool classical_recurrent(const ClassicalParams& params, const Tolerances& tol) {
  const int r = params.r();
  if (const auto& q = params.ratio()) return q->num * (r + 1) == q->den;
  return std::abs(params.p() - 1.0 / (r + 1)) <= tol.algebraic;
}

double classical_mean(const ClassicalParams& params, Step t) {
  if (t < 0) throw DomainError("t must be non-negative");
  return static_cast<double>(t) * (params.p() * (params.r() + 1) - 1.0);
}

std::string_view monte_carlo_generator() { return "mt19937_64"; }

MonteCarloResult classical_monte_carlo(const ClassicalParams& params, Step t,
                                       std::int64_t trials, std::uint64_t seed,
                                       unsigned threads) {
  if (trials < 1) throw DomainError("trials must be at least 1");
  if (t < 0) throw DomainError("t must be non-negative");

  const std::int64_t blocks = (trials + kBlockTrials - 1) / kBlockTrials;
  struct BlockSums {
    std::int64_t origin = 0;
    double sum = 0.0;
    double sum_sq = 0.0;
  };
  std::vector<BlockSums> sums(static_cast<std::size_t>(blocks));
  const double p = params.p();
  const int r = params.r();

  auto run_block = [&](std::int64_t b) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
    std::mt19937_64 gen(seq);
    const std::int64_t begin = b * kBlockTrials;
    const std::int64_t end = std::min(trials, begin + kBlockTrials);
    BlockSums& out = sums[static_cast<std::size_t>(b)];
    for (std::int64_t i = begin; i < end; ++i) {
      std::int64_t position = 0;
      for (Step s = 0; s < t; ++s) {
        const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        position += (u < p) ? r : -1;
      }
      if (position == 0) ++out.origin;
      const auto x = static_cast<double>(position);
      out.sum += x;
      out.sum_sq += x * x;
    }
  };

  unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  workers = static_cast<unsigned>(std::min<std::int64_t>(workers, blocks));
  if (workers <= 1) {
    for (std::int64_t b = 0; b < blocks; ++b) run_block(b);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::int64_t b = w; b < blocks; b += workers) run_block(b);
      });
    }
  }

  // Reduce in block order so the floating-point sums do not depend on threads.
  BlockSums total;
  for (const BlockSums& s : sums) {
    total.origin += s.origin;
    total.sum += s.sum;
    total.sum_sq += s.sum_sq;
  }
  const auto n = static_cast<double>(trials);
  MonteCarloResult res;
  res.trials = trials;
  res.mean_estimate = total.sum / n;
  const double var = trials > 1 ? std::max(0.0, (total.sum_sq - n * res.mean_estimate * res.mean_estimate) / (n - 1.0)) : 0.0;
  res.mean_stderr = std::sqrt(var / n);
  res.origin_frequency = static_cast<double>(total.origin) / n;
  res.origin_stderr = std::sqrt(res.origin_frequency * (1.0 - res.origin_frequency) / n);
  return res;
}

}  // namespace qwalk
