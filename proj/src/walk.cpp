// SPDX-License-Identifier: Apache-2.0

#include "qwalk/walk.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace qwalk {

namespace {

void require_unit_interval(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0)) {
    std::ostringstream os;
    os << name << " must lie in [0, 1], got " << x;
    throw DomainError(os.str());
  }
}

}  // namespace

WalkParams::WalkParams(int r, double rho) : r_(r), rho_(rho) {
  if (r < 1) {
    throw DomainError("r must be a positive integer, got " + std::to_string(r));
  }
  require_unit_interval(rho, "rho");
}

CoinVector CoinVector::from_spinor(const Spinor& s, const Tolerances& tol) {
  const double n = s.norm_squared();
  if (!(std::abs(n - 1.0) <= tol.algebraic)) {
    std::ostringstream os;
    os << "coin vector must have unit norm, |psi|^2 = " << n;
    throw DomainError(os.str());
  }
  return CoinVector(s);
}

double CoinMatrix::unitarity_residual() const {
  double worst = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      Complex acc = m[i][0] * std::conj(m[j][0]) + m[i][1] * std::conj(m[j][1]);
      if (i == j) acc -= 1.0;
      worst = std::max(worst, std::abs(acc));
    }
  }
  return worst;
}

double WaveFunction::norm_squared() const {
  double n = 0.0;
  for (const auto& [m, s] : amplitudes) n += s.norm_squared();
  return n;
}

double Distribution::total() const {
  double n = 0.0;
  for (const auto& [m, p] : probs) n += p;
  return n;
}

CoinMatrix make_coin(double rho) {
  require_unit_interval(rho, "rho");
  const double s = std::sqrt(rho);
  const double c = std::sqrt(1.0 - rho);
  CoinMatrix out;
  out.m[0][0] = s;
  out.m[0][1] = c;
  out.m[1][0] = c;
  out.m[1][1] = -s;
  return out;
}

CoinMatrix coin_plus(double rho) {
  CoinMatrix out = make_coin(rho);
  out.m[1][0] = 0.0;
  out.m[1][1] = 0.0;
  return out;
}

CoinMatrix coin_minus(double rho) {
  CoinMatrix out = make_coin(rho);
  out.m[0][0] = 0.0;
  out.m[0][1] = 0.0;
  return out;
}

CoinVector make_initial_state(double a, double phi) {
  require_unit_interval(a, "a");
  if (!(phi >= 0.0 && phi < 2.0 * std::numbers::pi)) {
    std::ostringstream os;
    os << "phi must lie in [0, 2 pi), got " << phi;
    throw DomainError(os.str());
  }
  return CoinVector::from_spinor(
      {std::sqrt(a), std::sqrt(1.0 - a) * std::polar(1.0, phi)});
}

WaveFunction point_source(const CoinVector& coin) {
  WaveFunction psi;
  psi.amplitudes.emplace(0, coin.spinor());
  return psi;
}

bool in_residue_class(Position m, Step t, int r) {
  const Position period = r + 1;
  Position diff = (m + t) % period;
  return diff == 0;
}

void check_invariants(const WaveFunction& psi, const WalkParams& params,
                      const Tolerances& tol, bool check_norm) {
  if (psi.t < 0) throw InvariantError("negative time stamp");
  const Position lo = -psi.t;
  const Position hi = static_cast<Position>(params.r()) * psi.t;
  for (const auto& [m, s] : psi.amplitudes) {
    if (s.norm_squared() == 0.0) continue;
    if (m < lo || m > hi) {
      throw InvariantError("amplitude at m=" + std::to_string(m) +
                           " outside the light cone at t=" + std::to_string(psi.t));
    }
    if (!in_residue_class(m, psi.t, params.r())) {
      throw InvariantError("amplitude at m=" + std::to_string(m) +
                           " outside the occupied residue class");
    }
  }
  if (check_norm) {
    const double n = psi.norm_squared();
    if (!(std::abs(n - 1.0) <= tol.probability)) {
      std::ostringstream os;
      os.precision(17);
      os << "norm drifted to " << n << " at t=" << psi.t;
      throw InvariantError(os.str());
    }
  }
}

}  // namespace qwalk
