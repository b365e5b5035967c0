// SPDX-License-Identifier: Apache-2.0
//
// Shared domain types for biased coined quantum walks on the integer line.
// A walker steps +r with coin state |R> and -1 with coin state |L>.

#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace qwalk {

using Complex = std::complex<double>;
using Position = std::int64_t;
using Step = std::int64_t;

/// Numerical tolerances used by invariant checks.
struct Tolerances {
  double probability = 1e-10;  // probability sums and norms
  double algebraic = 1e-12;    // exact algebraic identities
};

/// A parameter lies outside its mathematical domain.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The input does not have the structure an operation needs
/// (e.g. a distribution without two peaks).
class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computed object violated one of its invariants.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Two-component amplitude in the (R, L) coin basis. No normalization implied.
struct Spinor {
  Complex right{};
  Complex left{};

  double norm_squared() const { return std::norm(right) + std::norm(left); }

  Spinor& operator+=(const Spinor& o) {
    right += o.right;
    left += o.left;
    return *this;
  }
  friend Spinor operator+(Spinor a, const Spinor& b) { return a += b; }
  friend Spinor operator-(const Spinor& a, const Spinor& b) {
    return {a.right - b.right, a.left - b.left};
  }
  friend Spinor operator*(Complex s, const Spinor& v) {
    return {s * v.right, s * v.left};
  }
};

/// Coin-space scalar product (u, v), antilinear in the first argument.
inline Complex inner(const Spinor& u, const Spinor& v) {
  return std::conj(u.right) * v.right + std::conj(u.left) * v.left;
}

/// Largest componentwise modulus of a - b.
inline double max_abs_diff(const Spinor& a, const Spinor& b) {
  return std::max(std::abs(a.right - b.right), std::abs(a.left - b.left));
}

/// Right-step length r >= 1 and coin parameter rho in [0, 1].
class WalkParams {
 public:
  WalkParams(int r, double rho);

  int r() const { return r_; }
  double rho() const { return rho_; }

  /// Lattice stride between occupied positions at a fixed time.
  int stride() const { return r_ + 1; }

 private:
  int r_;
  double rho_;
};

/// Unit-norm coin state.
class CoinVector {
 public:
  /// Throws DomainError unless |R|^2 + |L|^2 = 1 within tol.algebraic.
  static CoinVector from_spinor(const Spinor& s, const Tolerances& tol = {});

  const Spinor& spinor() const { return s_; }
  Complex right() const { return s_.right; }
  Complex left() const { return s_.left; }

 private:
  explicit CoinVector(const Spinor& s) : s_(s) {}
  Spinor s_;
};

/// 2x2 complex matrix in the (R, L) basis.
struct CoinMatrix {
  Complex m[2][2]{};

  Spinor apply(const Spinor& v) const {
    return {m[0][0] * v.right + m[0][1] * v.left,
            m[1][0] * v.right + m[1][1] * v.left};
  }
  Complex determinant() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

  /// max |(M M^dagger - I)_ij|
  double unitarity_residual() const;
};

/// Sparse position-space state psi(m, t). Positions absent from the map carry
/// zero amplitude.
struct WaveFunction {
  Step t = 0;
  std::map<Position, Spinor> amplitudes;

  double norm_squared() const;
};

/// P(m, t) over the positions of a wave function.
struct Distribution {
  Step t = 0;
  std::map<Position, double> probs;

  double total() const;
};

struct OriginSample {
  Step t = 0;
  double p0 = 0.0;
};

/// P0(t) for t = 0 .. t_max, including the exact zeros at unoccupied times.
struct OriginSeries {
  int r = 1;
  std::vector<OriginSample> samples;

  /// True when the walker can be at the origin at time t, i.e. (r+1) | t.
  bool occupied(Step t) const { return t % (r + 1) == 0; }
};

}  // namespace qwalk
