// SPDX-License-Identifier: Apache-2.0

#include "expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <regex>
#include <string>

namespace qwalk::cli {

namespace {

// Recursive descent over: expr := sign? factor (('*' | '/') factor)*
//                         factor := number | 'pi' | 'sqrt' factor | '(' expr ')'
class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  double parse() {
    const double v = expression();
    skip_space();
    if (pos_ != text_.size()) error("unexpected trailing input");
    return v;
  }

 private:
  double expression() {
    skip_space();
    double sign = 1.0;
    if (peek() == '-' || peek() == '+') {
      if (peek() == '-') sign = -1.0;
      ++pos_;
    }
    double v = sign * factor();
    for (;;) {
      skip_space();
      const char op = peek();
      if (op != '*' && op != '/') break;
      ++pos_;
      const double rhs = factor();
      if (op == '*') {
        v *= rhs;
      } else {
        if (rhs == 0.0) error("division by zero");
        v /= rhs;
      }
    }
    return v;
  }

  double factor() {
    skip_space();
    if (consume("pi")) return std::numbers::pi;
    if (consume("sqrt")) {
      const double arg = factor();
      if (arg < 0.0) error("sqrt of a negative number");
      return std::sqrt(arg);
    }
    if (peek() == '(') {
      ++pos_;
      const double v = expression();
      skip_space();
      if (peek() != ')') error("missing ')'");
      ++pos_;
      return v;
    }
    return number();
  }

  double number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.' ||
            text_[pos_] == 'e' || text_[pos_] == 'E' ||
            ((text_[pos_] == '-' || text_[pos_] == '+') && pos_ > start &&
             (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E')))) {
      ++pos_;
    }
    if (start == pos_) error("expected a number");
    const std::string token(text_.substr(start, pos_ - start));
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(token, &used);
    } catch (const std::exception&) {
      error("malformed number '" + token + "'");
    }
    if (used != token.size()) error("malformed number '" + token + "'");
    return v;
  }

  bool consume(std::string_view word) {
    if (text_.substr(pos_, word.size()) == word) {
      pos_ += word.size();
      return true;
    }
    return false;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void error(const std::string& what) const {
    throw ExpressionError("cannot parse '" + std::string(text_) + "': " + what);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

ParsedNumber parse_number(std::string_view text) {
  ParsedNumber out;
  out.value = Parser(text).parse();
  if (!std::isfinite(out.value)) {
    throw ExpressionError("cannot parse '" + std::string(text) + "': not finite");
  }
  static const std::regex ratio(R"(^\s*(\d+)\s*(?:/\s*(\d+))?\s*$)");
  std::cmatch match;
  const std::string owned(text);
  if (std::regex_match(owned.c_str(), match, ratio)) {
    try {
      out.numerator = std::stoll(match[1].str());
      out.denominator = match[2].matched ? std::stoll(match[2].str()) : 1;
    } catch (const std::exception&) {
      out.numerator.reset();
      out.denominator.reset();
    }
  }
  return out;
}

std::int64_t parse_integer(std::string_view text, std::string_view flag) {
  std::int64_t v = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw ExpressionError(std::string(flag) + " expects an integer, got '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace qwalk::cli
