// SPDX-License-Identifier: Apache-2.0

#include "qwalk/evolution.hpp"

#include <cmath>

#include "qwalk/walk.hpp"

namespace qwalk {

WalkState::WalkState(const CoinVector& initial, const WalkParams& params)
    : params_(params), amps_{initial.spinor()} {}

void WalkState::advance() {
  const double s = std::sqrt(params_.rho());
  const double c = std::sqrt(1.0 - params_.rho());
  // In place, highest slot first: slot n reads old slots n and n-1.
  amps_.emplace_back();
  for (std::size_t n = amps_.size() - 1;; --n) {
    const Spinor& here = amps_[n];
    Spinor next;
    next.left = c * here.right - s * here.left;
    if (n > 0) {
      const Spinor& below = amps_[n - 1];
      next.right = s * below.right + c * below.left;
    }
    amps_[n] = next;
    if (n == 0) break;
  }
  ++t_;
}

void WalkState::advance(Step steps) {
  amps_.reserve(amps_.size() + static_cast<std::size_t>(steps));
  for (Step i = 0; i < steps; ++i) advance();
}

Spinor WalkState::at_origin() const {
  if (t_ % params_.stride() != 0) return {};
  return amps_[static_cast<std::size_t>(t_ / params_.stride())];
}

double WalkState::norm_squared() const {
  double n = 0.0;
  for (const Spinor& s : amps_) n += s.norm_squared();
  return n;
}

WaveFunction WalkState::to_wavefunction() const {
  WaveFunction psi;
  psi.t = t_;
  for (std::size_t n = 0; n < amps_.size(); ++n) {
    psi.amplitudes.emplace_hint(psi.amplitudes.end(), position(n), amps_[n]);
  }
  return psi;
}

WaveFunction step(const WaveFunction& state, const WalkParams& params) {
  const CoinMatrix plus = coin_plus(params.rho());
  const CoinMatrix minus = coin_minus(params.rho());
  WaveFunction out;
  out.t = state.t + 1;
  for (const auto& [m, s] : state.amplitudes) {
    Spinor& to_right = out.amplitudes[m + params.r()];
    to_right += plus.apply(s);
    Spinor& to_left = out.amplitudes[m - 1];
    to_left += minus.apply(s);
  }
  return out;
}

WaveFunction evolve(const CoinVector& initial, const WalkParams& params, Step t) {
  if (t < 0) throw DomainError("t must be non-negative");
  WalkState state(initial, params);
  state.advance(t);
  return state.to_wavefunction();
}

Distribution distribution(const WaveFunction& state) {
  Distribution d;
  d.t = state.t;
  for (const auto& [m, s] : state.amplitudes) {
    d.probs.emplace_hint(d.probs.end(), m, s.norm_squared());
  }
  return d;
}

OriginSeries origin_series(const CoinVector& initial, const WalkParams& params,
                           Step t_max) {
  if (t_max < 0) throw DomainError("t_max must be non-negative");
  OriginSeries series;
  series.r = params.r();
  series.samples.reserve(static_cast<std::size_t>(t_max) + 1);
  WalkState state(initial, params);
  for (Step t = 0;; ++t) {
    series.samples.push_back({t, state.at_origin().norm_squared()});
    if (t == t_max) break;
    state.advance();
  }
  return series;
}

double empirical_mean(const Distribution& dist) {
  double mean = 0.0;
  for (const auto& [m, p] : dist.probs) mean += static_cast<double>(m) * p;
  return mean;
}

PeakPair detect_peaks(const Distribution& dist) {
  std::vector<Position> pos;
  std::vector<double> p;
  pos.reserve(dist.probs.size());
  p.reserve(dist.probs.size());
  for (const auto& [m, prob] : dist.probs) {
    pos.push_back(m);
    p.push_back(prob);
  }
  const std::size_t n = p.size();

  // Each maximal run of equal values that is strictly higher than both
  // flanking values (or the array end) is one maximum: [first, last].
  struct Plateau {
    std::size_t first;
    std::size_t last;
  };
  std::vector<Plateau> maxima;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && p[j + 1] == p[i]) ++j;
    const bool left_ok = i == 0 || p[i - 1] < p[i];
    const bool right_ok = j + 1 == n || p[j + 1] < p[i];
    if (p[i] > 0.0 && left_ok && right_ok) maxima.push_back({i, j});
    i = j + 1;
  }
  if (maxima.size() < 2) {
    throw DegenerateError("distribution at t=" + std::to_string(dist.t) + " has " +
                          std::to_string(maxima.size()) +
                          " local maxima, need at least two");
  }
  return {pos[maxima.front().first], pos[maxima.back().last]};
}

}  // namespace qwalk
