#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <string_view>

namespace ontoqual {

/// Exact rational used for every metric and score computation.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// a / b, with 0 / 0 (or any division by zero) defined as 0.
Rational ratio(const Rational& a, const Rational& b);

/// Decimal rendering with `places` fraction digits, rounding half away from
/// zero (values are non-negative in practice, so this is round-half-up).
std::string to_decimal(const Rational& value, int places);

/// Shortest decimal for values with a terminating expansion of at most
/// `max_places` digits, otherwise rounded to `max_places`. Trailing zeros are
/// dropped: 2 -> "2", 1/4 -> "0.25", 2/3 -> "0.666667".
std::string to_compact_decimal(const Rational& value, int max_places = 6);

/// Parses "3.56", "-2", "7/3".
Rational parse_rational(std::string_view text);

double to_double(const Rational& value);

}  // namespace ontoqual
