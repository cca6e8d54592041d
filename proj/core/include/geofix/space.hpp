#pragma once

#include "geofix/random.hpp"
#include "geofix/scalar.hpp"

#include <concepts>
#include <functional>
#include <stdexcept>
#include <string>

namespace geofix {

/// A metric space over opaque points. Scalar is double, or Rational for exact
/// tree arithmetic.
template <class S>
concept MetricSpace = requires(const S& s, const typename S::Point& p) {
  typename S::Point;
  typename S::Scalar;
  { s.distance(p, p) } -> std::convertible_to<typename S::Scalar>;
};

/// A metric space with a convex-combination operator W(x, y, lambda).
template <class S>
concept WHyperbolicSpace = MetricSpace<S> && requires(const S& s, const typename S::Point& p,
                                                      double lambda) {
  { s.combine(p, p, lambda) } -> std::convertible_to<typename S::Point>;
};

template <class S>
using PointSampler = std::function<typename S::Point(Rng&)>;

inline void check_lambda(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw std::domain_error("lambda must lie in [0, 1], got " + std::to_string(lambda));
  }
}

}  // namespace geofix
