// SPDX-License-Identifier: Apache-2.0
//
// Position-space time evolution by direct iteration of
//   psi(m, t) = C+ psi(m - r, t - 1) + C- psi(m + 1, t - 1).

#pragma once

#include <span>
#include <vector>

#include "qwalk/types.hpp"

namespace qwalk {

/// Dense evolution engine for a walk started from a point source at the
/// origin. At time t the occupied positions are m = n (r+1) - t for
/// n = 0 .. t right steps, so amplitudes are stored by n.
class WalkState {
 public:
  WalkState(const CoinVector& initial, const WalkParams& params);

  /// Advances one step.
  void advance();
  void advance(Step steps);

  Step time() const { return t_; }
  const WalkParams& params() const { return params_; }

  /// Amplitudes indexed by number of right steps, size time() + 1.
  std::span<const Spinor> amplitudes() const { return amps_; }

  /// Position of slot n at the current time.
  Position position(std::size_t n) const {
    return static_cast<Position>(n) * params_.stride() - t_;
  }

  /// psi(0, t); exactly zero when (r+1) does not divide t.
  Spinor at_origin() const;

  double norm_squared() const;

  WaveFunction to_wavefunction() const;

 private:
  WalkParams params_;
  Step t_ = 0;
  std::vector<Spinor> amps_;
};

/// One application of the step operator to an arbitrary sparse state.
/// Does not renormalize; linear in the input.
WaveFunction step(const WaveFunction& state, const WalkParams& params);

/// t steps from a point source at m = 0 carrying the given coin state.
WaveFunction evolve(const CoinVector& initial, const WalkParams& params, Step t);

/// P(m) = |psi(m)|^2 for every stored position.
Distribution distribution(const WaveFunction& state);

/// P0(t) for t = 0 .. t_max.
OriginSeries origin_series(const CoinVector& initial, const WalkParams& params,
                           Step t_max);

/// sum_m m P(m)
double empirical_mean(const Distribution& dist);

struct PeakPair {
  Position left = 0;
  Position right = 0;
};

/// Outermost local maxima of P(m). Neighbours are adjacent stored positions,
/// which for distributions produced by evolve() are the occupied residue class
/// (spacing r+1). A flat top counts once and is reported at its extreme end.
/// Throws DegenerateError when fewer than two maxima exist.
PeakPair detect_peaks(const Distribution& dist);

}  // namespace qwalk
