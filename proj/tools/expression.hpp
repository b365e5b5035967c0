// SPDX-License-Identifier: Apache-2.0
//
// Numeric parameter expressions accepted on the command line: decimals plus
// the tokens pi and sqrtN / sqrt(x) combined with * and /, e.g. "1/sqrt2",
// "pi/2", "3*pi/4".

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>

namespace qwalk::cli {

class ExpressionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ParsedNumber {
  double value = 0.0;
  // Set when the text is an integer or integer/integer, kept exact.
  std::optional<std::int64_t> numerator;
  std::optional<std::int64_t> denominator;
};

ParsedNumber parse_number(std::string_view text);

/// Parses an integer flag value, rejecting fractions and trailing junk.
std::int64_t parse_integer(std::string_view text, std::string_view flag);

}  // namespace qwalk::cli
