// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "qwalk/types.hpp"

namespace qwalk {

/// The one-parameter coin family [[sqrt(rho), sqrt(1-rho)], [sqrt(1-rho), -sqrt(rho)]].
/// rho = 1/2 is the Hadamard coin.
CoinMatrix make_coin(double rho);

/// Row R of the coin with row L zeroed; pairs with the +r shift.
CoinMatrix coin_plus(double rho);

/// Row L of the coin with row R zeroed; pairs with the -1 shift.
CoinMatrix coin_minus(double rho);

/// (sqrt(a), sqrt(1-a) e^{i phi}) for a in [0, 1], phi in [0, 2 pi).
CoinVector make_initial_state(double a, double phi);

/// Point source at the origin at t = 0.
WaveFunction point_source(const CoinVector& coin);

/// m = n_R r - n_L with n_R + n_L = t, so m = -t (mod r+1).
bool in_residue_class(Position m, Step t, int r);

/// Throws InvariantError if the norm, support window [-t, r t] or residue
/// class is violated. check_norm = false skips only the norm test.
void check_invariants(const WaveFunction& psi, const WalkParams& params,
                      const Tolerances& tol = {}, bool check_norm = true);

}  // namespace qwalk
