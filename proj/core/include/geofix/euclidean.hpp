#pragma once

#include "geofix/random.hpp"
#include "geofix/space.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace geofix {

using EuclideanPoint = std::vector<double>;

/// R^n with the Euclidean norm; W is the affine combination.
class EuclideanSpace {
 public:
  using Point = EuclideanPoint;
  using Scalar = double;

  explicit EuclideanSpace(std::size_t dim);

  std::size_t dim() const { return dim_; }
  std::string label() const { return "euclidean-" + std::to_string(dim_); }

  double distance(const Point& x, const Point& y) const;
  Point combine(const Point& x, const Point& y, double lambda) const;
  Point origin() const { return Point(dim_, 0.0); }

  void validate(const Point& p) const;

 private:
  std::size_t dim_;
};

/// Uniform points in [-half_width, half_width]^dim.
PointSampler<EuclideanSpace> euclidean_box_sampler(const EuclideanSpace& space,
                                                   double half_width);

/// A point at distance s from a in a uniformly random direction.
EuclideanPoint random_point_at(const EuclideanSpace& space, const EuclideanPoint& a, double s,
                               Rng& rng);

}  // namespace geofix
