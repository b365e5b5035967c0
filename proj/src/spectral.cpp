// SPDX-License-Identifier: Apache-2.0

#include "qwalk/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace qwalk {

namespace {

constexpr double kPi = std::numbers::pi;

Spinor normalized(const Spinor& v) {
  const double n = std::sqrt(v.norm_squared());
  return (1.0 / n) * v;
}

}  // namespace

CoinMatrix propagator_k(const WalkParams& params, double k) {
  const double s = std::sqrt(params.rho());
  const double c = std::sqrt(1.0 - params.rho());
  const Complex right = std::polar(1.0, k * params.r());
  const Complex left = std::polar(1.0, -k);
  CoinMatrix u;
  u.m[0][0] = s * right;
  u.m[0][1] = c * right;
  u.m[1][0] = c * left;
  u.m[1][1] = -s * left;
  return u;
}

Eigenphases eigenphases(const WalkParams& params, double k) {
  const int r = params.r();
  const double drift = 0.5 * (r - 1) * k;
  const double x = std::asin(std::sqrt(params.rho()) * std::sin(0.5 * (r + 1) * k));
  return {drift + x, drift - kPi - x};
}

Eigenbasis eigenvectors(const WalkParams& params, double k) {
  const Eigenphases w = eigenphases(params, k);
  const double rho = params.rho();
  if (rho == 1.0) {
    // U(k) = diag(e^{ikr}, -e^{-ik}); assign basis vectors by eigenvalue.
    const Complex right = std::polar(1.0, k * params.r());
    const Complex left = -std::polar(1.0, -k);
    const Complex e1 = std::polar(1.0, w.first);
    const Spinor up{1.0, 0.0};
    const Spinor down{0.0, 1.0};
    Eigenbasis out;
    out.degenerate = true;
    if (std::abs(e1 - right) <= std::abs(e1 - left)) {
      out.first = up;
      out.second = down;
    } else {
      out.first = down;
      out.second = up;
    }
    return out;
  }
  const double s = std::sqrt(rho);
  const double c = std::sqrt(1.0 - rho);
  const double rk = k * params.r();
  const Spinor raw1{c, -s + std::polar(1.0, w.first - rk)};
  const Spinor raw2{c, -s + std::polar(1.0, w.second - rk)};
  return {normalized(raw1), normalized(raw2), false};
}

PhaseDerivatives phase_derivatives(const WalkParams& params, double k) {
  const int r = params.r();
  const double rho = params.rho();
  const double u = 0.5 * (r + 1) * k;
  const double cu = std::cos(u);
  const double su = std::sin(u);
  // sqrt(4 + 2 rho (cos 2u - 1)) written without cancellation.
  const double denom = 2.0 * std::sqrt(cu * cu + (1.0 - rho) * su * su);
  const double drift = 0.5 * (r - 1);
  // At rho = 1 the branches cross where cos u = 0; cos(pi/2) rounds to ~6e-17,
  // so the crossing is detected with a small absolute margin.
  if (denom == 0.0 || (rho == 1.0 && std::abs(cu) <= 1e-12)) {
    return {static_cast<double>(r), -1.0, true};
  }
  const double spread = std::sqrt(rho) * (r + 1) * cu / denom;
  return {drift + spread, drift - spread, false};
}

SpectralPoint spectral_point(const WalkParams& params, double k) {
  return {k, eigenphases(params, k), phase_derivatives(params, k),
          eigenvectors(params, k)};
}

SaddleSet saddle_points(const WalkParams& params) {
  const int r = params.r();
  const double rho = params.rho();
  SaddleSet out;
  out.degenerate = rho == 0.0 || rho == 1.0;
  if (r == 1) {
    out.argument = 0.0;
  } else if (rho == 0.0) {
    out.argument = std::numeric_limits<double>::infinity();
    return out;
  } else {
    out.argument = (1.0 - rho) * (r - 1) * (r - 1) / (4.0 * rho * r);
  }
  out.exists = out.argument <= 1.0;
  if (!out.exists) return out;

  const double root = std::sqrt(out.argument);
  const double scale = 2.0 / (r + 1);
  for (double inner_sign : {1.0, -1.0}) {
    const double base = scale * std::acos(inner_sign * root);
    for (double outer_sign : {1.0, -1.0}) {
      const double k0 = outer_sign * base + 0.0;  // normalizes -0
      const PhaseDerivatives d = phase_derivatives(params, k0);
      if (d.singular) continue;
      if (std::min(std::abs(d.first), std::abs(d.second)) > kSaddleResidual) continue;
      const bool seen = std::any_of(out.points.begin(), out.points.end(), [&](double p) {
        return std::abs(p - k0) <= kSaddleResidual;
      });
      if (!seen) out.points.push_back(k0);
    }
  }
  std::sort(out.points.begin(), out.points.end());
  return out;
}

namespace {

// psi~(k, t) = sum_j e^{i omega_j t} (v_j, psi) v_j
Spinor evolved_in_momentum(const CoinVector& initial, const WalkParams& params,
                           double k, Step t) {
  const Eigenphases w = eigenphases(params, k);
  const Eigenbasis v = eigenvectors(params, k);
  const Spinor& psi = initial.spinor();
  const double tt = static_cast<double>(t);
  return std::polar(1.0, w.first * tt) * inner(v.first, psi) * v.first +
         std::polar(1.0, w.second * tt) * inner(v.second, psi) * v.second;
}

struct MomentumGrid {
  std::size_t size;
  std::vector<Spinor> values;  // psi~(k_n, t), k_n = -pi + 2 pi n / size
};

MomentumGrid sample_momenta(const CoinVector& initial, const WalkParams& params, Step t) {
  if (t < 0) throw DomainError("t must be non-negative");
  MomentumGrid grid;
  grid.size = static_cast<std::size_t>(params.stride()) * static_cast<std::size_t>(t) + 1;
  grid.values.reserve(grid.size);
  for (std::size_t n = 0; n < grid.size; ++n) {
    const double k = -kPi + 2.0 * kPi * static_cast<double>(n) / static_cast<double>(grid.size);
    grid.values.push_back(evolved_in_momentum(initial, params, k, t));
  }
  return grid;
}

// (1/N) sum_n psi~(k_n) e^{-i m k_n}, with the phase reduced modulo N.
Spinor invert_at(const MomentumGrid& grid, Position m) {
  const auto big_n = static_cast<Position>(grid.size);
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;  // e^{i m pi}
  Position residue = m % big_n;
  if (residue < 0) residue += big_n;
  Spinor acc;
  for (std::size_t n = 0; n < grid.size; ++n) {
    const Position idx = (residue * static_cast<Position>(n)) % big_n;
    const Complex phase = std::polar(1.0, -2.0 * kPi * static_cast<double>(idx) /
                                              static_cast<double>(big_n));
    acc += phase * grid.values[n];
  }
  return Complex(sign / static_cast<double>(big_n)) * acc;
}

}  // namespace

Spinor reconstruct_amplitude(const CoinVector& initial, const WalkParams& params,
                             Position m, Step t) {
  return invert_at(sample_momenta(initial, params, t), m);
}

WaveFunction reconstruct_wavefunction(const CoinVector& initial,
                                      const WalkParams& params, Step t) {
  const MomentumGrid grid = sample_momenta(initial, params, t);
  WaveFunction psi;
  psi.t = t;
  for (Step n = 0; n <= t; ++n) {
    const Position m = n * params.stride() - t;
    psi.amplitudes.emplace_hint(psi.amplitudes.end(), m, invert_at(grid, m));
  }
  return psi;
}

}  // namespace qwalk
