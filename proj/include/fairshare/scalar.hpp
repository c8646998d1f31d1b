// Copyright 2026 The fairshare Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FAIRSHARE_SCALAR_HPP
#define FAIRSHARE_SCALAR_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <charconv>
#include <cmath>
#include <concepts>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fairshare {

/// Arbitrary-precision rational used by the exact backend.
using rational = boost::multiprecision::cpp_rational;
using integer = boost::multiprecision::cpp_int;

template <typename T>
concept Scalar = std::same_as<T, double> || std::same_as<T, rational>;

enum class backend { exact, floating };

template <Scalar T>
struct scalar_traits;

template <>
struct scalar_traits<double> {
  static constexpr bool exact = false;
  static constexpr backend kind = backend::floating;
  /// Default comparison tolerance for binary64 arithmetic.
  static double tolerance() { return 1e-9; }
};

template <>
struct scalar_traits<rational> {
  static constexpr bool exact = true;
  static constexpr backend kind = backend::exact;
  static rational tolerance() { return rational(0); }
};

inline double to_double(double x) { return x; }
inline double to_double(const rational& x) { return x.convert_to<double>(); }

/// Converts an exact input value into the working scalar.
template <Scalar T>
T from_rational(const rational& x) {
  if constexpr (std::same_as<T, double>) {
    return x.convert_to<double>();
  } else {
    return x;
  }
}

template <Scalar T>
T abs_value(const T& x) {
  return x < T(0) ? T(-x) : x;
}

/// Equality up to `tol`; exact comparison when the tolerance is zero.
template <Scalar T>
bool nearly_equal(const T& a, const T& b, const T& tol) {
  if (tol == T(0)) return a == b;
  return abs_value(T(a - b)) <= tol;
}

/// Parses "p/q", integers, and decimal literals (optionally with an
/// exponent) without rounding.
inline rational parse_rational(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  auto fail = [&]() -> rational {
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  };
  if (text.empty()) return fail();

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    rational num = parse_rational(text.substr(0, slash));
    rational den = parse_rational(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return num / den;
  }

  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '+' || text[pos] == '-') {
    negative = text[pos] == '-';
    ++pos;
  }
  std::string digits;
  long exponent = 0;
  bool any_digit = false;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    digits.push_back(text[pos++]);
    any_digit = true;
  }
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      digits.push_back(text[pos++]);
      --exponent;
      any_digit = true;
    }
  }
  if (!any_digit) return fail();
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    std::string exp_text(text.substr(pos));
    std::size_t used = 0;
    long e = 0;
    try {
      e = std::stol(exp_text, &used);
    } catch (const std::exception&) {
      return fail();
    }
    if (used != exp_text.size() || e > 4096 || e < -4096) return fail();
    exponent += e;
    pos = text.size();
  }
  if (pos != text.size()) return fail();

  // cpp_int treats a leading zero as an octal prefix
  auto first = digits.find_first_not_of('0');
  integer mantissa(first == std::string::npos ? std::string("0") : digits.substr(first));
  integer scale = boost::multiprecision::pow(integer(10), static_cast<unsigned>(exponent < 0 ? -exponent : exponent));
  rational value = exponent < 0 ? rational(mantissa, scale) : rational(mantissa * scale);
  return negative ? rational(-value) : value;
}

/// The rational spelled by the shortest decimal that round-trips to x, so
/// 0.1 maps to 1/10 rather than to its binary expansion.
inline rational decimal_rational(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("not a finite number");
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw std::invalid_argument("number too long");
  return parse_rational(std::string_view(buf, static_cast<std::size_t>(end - buf)));
}

/// "p/q" for exact values (plain integer when q = 1); `precision`
/// significant digits for doubles.
inline std::string format_scalar(const rational& x, int /*precision*/ = 6) {
  if (denominator(x) == 1) return numerator(x).str();
  return numerator(x).str() + "/" + denominator(x).str();
}

inline std::string format_scalar(double x, int precision = 6) {
  if (x == 0.0) x = 0.0;  // drop the sign of -0
  std::ostringstream os;
  os << std::setprecision(precision) << x;
  return os.str();
}

}  // namespace fairshare

#endif  // FAIRSHARE_SCALAR_HPP
