#include "geofix/euclidean.hpp"

#include <cmath>
#include <stdexcept>

namespace geofix {

EuclideanSpace::EuclideanSpace(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw std::invalid_argument("Euclidean dimension must be positive");
}

void EuclideanSpace::validate(const Point& p) const {
  if (p.size() != dim_) {
    throw std::invalid_argument("point has dimension " + std::to_string(p.size()) +
                                ", space has " + std::to_string(dim_));
  }
  for (double c : p) {
    if (!std::isfinite(c)) throw std::invalid_argument("point coordinate is not finite");
  }
}

double EuclideanSpace::distance(const Point& x, const Point& y) const {
  validate(x);
  validate(y);
  if (dim_ == 1) return std::abs(x[0] - y[0]);
  if (dim_ == 2) return std::hypot(x[0] - y[0], x[1] - y[1]);
  double sum = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) {
    const double d = x[i] - y[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

EuclideanPoint EuclideanSpace::combine(const Point& x, const Point& y, double lambda) const {
  check_lambda(lambda);
  validate(x);
  validate(y);
  const double mu = 1.0 - lambda;
  Point out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) out[i] = mu * x[i] + lambda * y[i];
  return out;
}

PointSampler<EuclideanSpace> euclidean_box_sampler(const EuclideanSpace& space,
                                                   double half_width) {
  const std::size_t dim = space.dim();
  return [dim, half_width](Rng& rng) {
    EuclideanPoint p(dim);
    for (auto& c : p) c = rng.uniform(-half_width, half_width);
    return p;
  };
}

EuclideanPoint random_point_at(const EuclideanSpace& space, const EuclideanPoint& a, double s,
                               Rng& rng) {
  space.validate(a);
  EuclideanPoint dir(space.dim());
  double norm = 0.0;
  while (norm == 0.0) {
    norm = 0.0;
    for (auto& c : dir) {
      c = rng.normal();
      norm += c * c;
    }
    norm = std::sqrt(norm);
  }
  EuclideanPoint out(a);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += s * dir[i] / norm;
  return out;
}

}  // namespace geofix
