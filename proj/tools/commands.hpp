// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>

namespace qwalk::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitInvariant = 4;

/// Runs one command line. Results go to `out` (or the --out file), a single
/// diagnostic line to `err` on failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qwalk::cli
