#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <string>
#include <string_view>
#include <type_traits>

namespace geofix {

/// Arbitrary-precision rational used by the exact tree mode.
using Rational = boost::multiprecision::cpp_rational;

template <class T>
inline constexpr bool is_exact_v = std::is_same_v<T, Rational>;

/// Default comparison slack for floating metric checks.
inline constexpr double kDefaultTol = 1e-9;

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return x.convert_to<double>(); }

/// Converts a binary64 value into Scalar. For Rational the conversion is exact.
template <class Scalar>
Scalar from_double(double x) {
  if constexpr (is_exact_v<Scalar>) {
    return Rational(x);
  } else {
    return x;
  }
}

template <class Scalar>
Scalar abs_value(const Scalar& x) {
  return x < Scalar(0) ? Scalar(-x) : x;
}

/// Tolerance to use for Scalar: zero in exact mode.
template <class Scalar>
Scalar scalar_tol(double tol) {
  if constexpr (is_exact_v<Scalar>) {
    return Rational(0);
  } else {
    return tol;
  }
}

/// Parses "p/q", an integer or a decimal literal ("0.3", "-1.25e-2") into an
/// exact rational. Throws std::invalid_argument for anything else, including
/// non-finite values.
Rational parse_rational(std::string_view text);

/// Shortest round-trip decimal of a double, then parsed exactly. Used when an
/// exact tree is read from JSON numbers: 0.3 in the file becomes 3/10.
Rational rational_from_decimal_double(double x);

/// ceil of a nonnegative rational as uint64; throws std::overflow_error.
std::uint64_t ceil_to_u64(const Rational& x);

std::string to_string(const Rational& x);

}  // namespace geofix
