// SPDX-License-Identifier: Apache-2.0
//
// Momentum-space picture. With psi~(k, t) = sum_m psi(m, t) e^{imk} one step is
// psi~(k, t) = U(k) psi~(k, t - 1), and U(k) has eigenvalues e^{i omega_j(k)}.

#pragma once

#include <vector>

#include "qwalk/types.hpp"

namespace qwalk {

/// U(k) = [[sqrt(rho) e^{ikr}, sqrt(1-rho) e^{ikr}],
///         [sqrt(1-rho) e^{-ik}, -sqrt(rho) e^{-ik}]]
CoinMatrix propagator_k(const WalkParams& params, double k);

struct Eigenphases {
  double first = 0.0;
  double second = 0.0;
};

/// omega_{1,2}(k) = (r-1)k/2 + {arcsin(x), -pi - arcsin(x)},
/// x = sqrt(rho) sin((r+1)k/2). Principal branches, no unwrapping.
Eigenphases eigenphases(const WalkParams& params, double k);

struct Eigenbasis {
  Spinor first;
  Spinor second;
  bool degenerate = false;  // rho = 1: analytic basis vectors used
};

/// Unit eigenvectors proportional to (sqrt(1-rho), -sqrt(rho) + e^{i(omega_j - rk)}).
/// For rho = 1 the raw form can vanish; the propagator is then diagonal and
/// the coin basis vectors are returned, matched to omega_j, with degenerate set.
Eigenbasis eigenvectors(const WalkParams& params, double k);

struct PhaseDerivatives {
  double first = 0.0;
  double second = 0.0;
  bool singular = false;  // rho = 1 with cos((r+1)k/2) = 0
};

/// d omega_j / dk. first + second = r - 1 identically.
/// At the rho = 1 crossing points the branch derivatives r and -1 are
/// returned with singular set.
PhaseDerivatives phase_derivatives(const WalkParams& params, double k);

/// Everything known about U(k) at one momentum.
struct SpectralPoint {
  double k = 0.0;
  Eigenphases omega;
  PhaseDerivatives omega_prime;
  Eigenbasis vectors;
};

SpectralPoint spectral_point(const WalkParams& params, double k);

/// Stationary points of omega_{1,2} on [-pi, pi].
struct SaddleSet {
  std::vector<double> points;
  bool exists = false;
  bool degenerate = false;  // rho in {0, 1}
  double argument = 0.0;    // (1-rho)(r-1)^2 / (4 rho r); +inf if undefined
};

/// Candidates k0 = +-(2/(r+1)) arccos(+-sqrt(A)) with
/// A = (1-rho)(r-1)^2/(4 rho r), filtered by |omega'_j(k0)| <= 1e-9 and
/// deduplicated. exists is A <= 1.
SaddleSet saddle_points(const WalkParams& params);

/// Residual threshold applied to saddle candidates.
inline constexpr double kSaddleResidual = 1e-9;

/// psi(m, t) = sum_j int dk/2pi e^{i(omega_j t - mk)} (v_j, psi) v_j, summed
/// exactly over N = (r+1)t + 1 equally spaced momenta.
Spinor reconstruct_amplitude(const CoinVector& initial, const WalkParams& params,
                             Position m, Step t);

/// All occupied amplitudes at time t via the same momentum sum, sharing the
/// spectral evaluation across positions.
WaveFunction reconstruct_wavefunction(const CoinVector& initial,
                                      const WalkParams& params, Step t);

}  // namespace qwalk
