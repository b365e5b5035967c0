// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "qwalk/walk.hpp"

using namespace qwalk;
using doctest::Approx;

TEST_CASE("make_coin special values") {
  const double h = 1.0 / std::sqrt(2.0);
  const CoinMatrix hadamard = make_coin(0.5);
  CHECK(hadamard.m[0][0].real() == Approx(h).epsilon(1e-15));
  CHECK(hadamard.m[0][1].real() == Approx(h).epsilon(1e-15));
  CHECK(hadamard.m[1][0].real() == Approx(h).epsilon(1e-15));
  CHECK(hadamard.m[1][1].real() == Approx(-h).epsilon(1e-15));

  const CoinMatrix diag = make_coin(1.0);
  CHECK(diag.m[0][0] == Complex(1.0));
  CHECK(diag.m[0][1] == Complex(0.0));
  CHECK(diag.m[1][0] == Complex(0.0));
  CHECK(diag.m[1][1] == Complex(-1.0));

  const CoinMatrix flip = make_coin(0.0);
  CHECK(flip.m[0][0] == Complex(0.0));
  CHECK(flip.m[0][1] == Complex(1.0));
  CHECK(flip.m[1][0] == Complex(1.0));
  CHECK(flip.m[1][1] == Complex(0.0));
}

TEST_CASE("make_coin rejects rho outside [0, 1]") {
  CHECK_THROWS_AS(make_coin(-0.01), DomainError);
  CHECK_THROWS_AS(make_coin(1.0000001), DomainError);
  CHECK_THROWS_AS(make_coin(std::nan("")), DomainError);
}

TEST_CASE("coin family is unitary") {
  for (int i = 0; i < 100; ++i) {
    const double rho = i / 99.0;
    CHECK(make_coin(rho).unitarity_residual() <= 1e-12);
  }
  testing::Sampler rng(11);
  for (int i = 0; i < 100; ++i) {
    CHECK(make_coin(rng.uniform(0.0, 1.0)).unitarity_residual() <= 1e-12);
  }
}

TEST_CASE("half coins sum to the coin") {
  testing::Sampler rng(5);
  for (int i = 0; i < 50; ++i) {
    const double rho = rng.uniform(0.0, 1.0);
    const CoinMatrix c = make_coin(rho);
    const CoinMatrix plus = coin_plus(rho);
    const CoinMatrix minus = coin_minus(rho);
    CHECK(plus.m[1][0] == Complex(0.0));
    CHECK(plus.m[1][1] == Complex(0.0));
    CHECK(minus.m[0][0] == Complex(0.0));
    CHECK(minus.m[0][1] == Complex(0.0));
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) CHECK(plus.m[a][b] + minus.m[a][b] == c.m[a][b]);
    }
  }
}

TEST_CASE("make_initial_state examples") {
  const CoinVector right = make_initial_state(1.0, 0.0);
  CHECK(right.right() == Complex(1.0));
  CHECK(right.left() == Complex(0.0));

  const CoinVector sym = make_initial_state(0.5, std::numbers::pi / 2);
  CHECK(std::abs(sym.right() - Complex(1.0 / std::sqrt(2.0))) <= 1e-15);
  CHECK(std::abs(sym.left() - Complex(0.0, 1.0 / std::sqrt(2.0))) <= 1e-15);

  const CoinVector minimizing = make_initial_state(0.1, std::numbers::pi);
  CHECK(std::abs(minimizing.right() - Complex(std::sqrt(0.1))) <= 1e-15);
  CHECK(std::abs(minimizing.left() - Complex(-std::sqrt(0.9))) <= 1e-15);
}

TEST_CASE("make_initial_state is unit norm and validates its domain") {
  testing::Sampler rng(3);
  for (int i = 0; i < 500; ++i) {
    const CoinVector v =
        make_initial_state(rng.uniform(0.0, 1.0), rng.uniform(0.0, 2 * std::numbers::pi));
    CHECK(std::abs(v.spinor().norm_squared() - 1.0) <= 1e-12);
  }
  CHECK_THROWS_AS(make_initial_state(-0.1, 0.0), DomainError);
  CHECK_THROWS_AS(make_initial_state(1.1, 0.0), DomainError);
  CHECK_THROWS_AS(make_initial_state(0.5, -0.1), DomainError);
  CHECK_THROWS_AS(make_initial_state(0.5, 2 * std::numbers::pi), DomainError);
}

TEST_CASE("CoinVector rejects non-unit spinors") {
  CHECK_THROWS_AS(CoinVector::from_spinor({1.0, 1.0}), DomainError);
  CHECK_NOTHROW(CoinVector::from_spinor({0.6, Complex(0.0, 0.8)}));
}

TEST_CASE("WalkParams validation") {
  CHECK_THROWS_AS(WalkParams(0, 0.5), DomainError);
  CHECK_THROWS_AS(WalkParams(2, 1.5), DomainError);
  CHECK_NOTHROW(WalkParams(1, 0.0));
  CHECK(WalkParams(3, 0.2).stride() == 4);
}

TEST_CASE("check_invariants detects violations") {
  const WalkParams p(3, 0.4);
  WaveFunction psi;
  psi.t = 1;
  psi.amplitudes[3] = {0.6, 0.0};
  psi.amplitudes[-1] = {0.0, 0.8};
  CHECK_NOTHROW(check_invariants(psi, p));

  WaveFunction outside = psi;
  outside.amplitudes[7] = {1e-3, 0.0};
  CHECK_THROWS_AS(check_invariants(outside, p, {}, false), InvariantError);

  WaveFunction wrong_class = psi;
  wrong_class.amplitudes[0] = {1e-3, 0.0};
  CHECK_THROWS_AS(check_invariants(wrong_class, p, {}, false), InvariantError);

  WaveFunction unnormalized = psi;
  unnormalized.amplitudes[3] = {0.7, 0.0};
  CHECK_THROWS_AS(check_invariants(unnormalized, p), InvariantError);
  CHECK_NOTHROW(check_invariants(unnormalized, p, {}, false));
}

TEST_CASE("residue class") {
  CHECK(in_residue_class(-100, 100, 3));
  CHECK(in_residue_class(300, 100, 3));
  CHECK_FALSE(in_residue_class(-99, 100, 3));
  CHECK(in_residue_class(0, 8, 3));
  CHECK_FALSE(in_residue_class(0, 2, 3));
}
