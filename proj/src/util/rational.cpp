#include "ontoqual/util/rational.hpp"

#include <stdexcept>

namespace ontoqual {

Rational ratio(const Rational& a, const Rational& b) {
  if (b == 0) return Rational(0);
  return a / b;
}

std::string to_decimal(const Rational& value, int places) {
  BigInt scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  bool negative = value < 0;
  Rational magnitude = negative ? Rational(-value) : value;
  Rational scaled = magnitude * scale;
  BigInt num = boost::multiprecision::numerator(scaled);
  BigInt den = boost::multiprecision::denominator(scaled);
  BigInt q = num / den;
  BigInt r = num % den;
  if (r * 2 >= den) q += 1;
  std::string digits = q.str();
  if (places > 0) {
    if (digits.size() <= static_cast<std::size_t>(places))
      digits.insert(0, static_cast<std::size_t>(places) + 1 - digits.size(), '0');
    digits.insert(digits.size() - static_cast<std::size_t>(places), ".");
  }
  if (negative && q != 0) digits.insert(0, "-");
  return digits;
}

std::string to_compact_decimal(const Rational& value, int max_places) {
  std::string s = to_decimal(value, max_places);
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  if (s == "-0") s = "0";
  return s;
}

Rational parse_rational(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty number");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt num(std::string(text.substr(0, slash)));
    BigInt den(std::string(text.substr(slash + 1)));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(num, den);
  }
  bool negative = false;
  if (text.front() == '-' || text.front() == '+') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  std::string digits;
  BigInt den = 1;
  bool seen_dot = false;
  for (char c : text) {
    if (c == '.') {
      if (seen_dot) throw std::invalid_argument("malformed number");
      seen_dot = true;
    } else if (c >= '0' && c <= '9') {
      digits += c;
      if (seen_dot) den *= 10;
    } else {
      throw std::invalid_argument("malformed number");
    }
  }
  if (digits.empty()) throw std::invalid_argument("malformed number");
  Rational r(BigInt(digits), den);
  return negative ? Rational(-r) : r;
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

}  // namespace ontoqual
