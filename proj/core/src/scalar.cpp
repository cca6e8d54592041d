#include "geofix/scalar.hpp"

#include <charconv>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace geofix {

namespace {

using boost::multiprecision::cpp_int;

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

// cpp_int reads a leading 0 as an octal prefix
cpp_int decimal_digits(std::string_view s) {
  while (s.size() > 1 && s.front() == '0') s.remove_prefix(1);
  return cpp_int{std::string(s)};
}

cpp_int parse_integer(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) {
    throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
  }
  cpp_int value = decimal_digits(s);
  return negative ? cpp_int(-value) : value;
}

cpp_int pow10(long exponent) {
  cpp_int r = 1;
  for (long i = 0; i < exponent; ++i) r *= 10;
  return r;
}

Rational parse_decimal(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = s.substr(e + 1);
    if (!exp_text.empty() && exp_text.front() == '+') exp_text.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(exp_text.data(), exp_text.data() + exp_text.size(), exponent);
    if (ec != std::errc{} || ptr != exp_text.data() + exp_text.size() || exponent > 4000 ||
        exponent < -4000) {
      throw std::invalid_argument("bad exponent in '" + std::string(text) + "'");
    }
    s = s.substr(0, e);
  }
  std::string digits;
  long frac_len = 0;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = s.substr(0, dot);
    std::string_view frac_part = s.substr(dot + 1);
    if ((int_part.empty() && frac_part.empty()) || (!int_part.empty() && !all_digits(int_part)) ||
        (!frac_part.empty() && !all_digits(frac_part))) {
      throw std::invalid_argument("not a rational literal: '" + std::string(text) + "'");
    }
    digits = std::string(int_part) + std::string(frac_part);
    frac_len = static_cast<long>(frac_part.size());
  } else {
    if (!all_digits(s)) {
      throw std::invalid_argument("not a rational literal: '" + std::string(text) + "'");
    }
    digits = std::string(s);
  }
  cpp_int mantissa = decimal_digits(digits);
  if (negative) mantissa = -mantissa;
  const long scale = exponent - frac_len;
  if (scale >= 0) return Rational(mantissa * pow10(scale));
  return Rational(mantissa, pow10(-scale));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    cpp_int num = parse_integer(text.substr(0, slash));
    cpp_int den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }
  return parse_decimal(text);
}

Rational rational_from_decimal_double(double x) {
  if (!std::isfinite(x)) {
    throw std::invalid_argument("non-finite value has no exact rational form");
  }
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc{}) throw std::invalid_argument("cannot format double");
  return parse_decimal(std::string_view(buf, static_cast<std::size_t>(ptr - buf)));
}

std::uint64_t ceil_to_u64(const Rational& x) {
  if (x <= 0) return 0;
  cpp_int num = numerator(x);
  cpp_int den = denominator(x);
  cpp_int q = num / den;
  if (q * den != num) q += 1;
  if (q > cpp_int(std::numeric_limits<std::uint64_t>::max())) {
    throw std::overflow_error("value exceeds 64-bit range");
  }
  return q.convert_to<std::uint64_t>();
}

std::string to_string(const Rational& x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

}  // namespace geofix
