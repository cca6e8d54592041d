#include "geofix/half_plane.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace geofix {

namespace {

using Complex = std::complex<double>;

Complex to_complex(const HalfPlanePoint& p) { return {p.u, p.v}; }

// z -> (cos(a/2) z + sin(a/2)) / (-sin(a/2) z + cos(a/2)), a rotation by a about i.
Complex rotate_about_i(Complex z, double angle) {
  const double c = std::cos(angle / 2.0);
  const double s = std::sin(angle / 2.0);
  return (c * z + s) / (-s * z + c);
}

}  // namespace

void HalfPlane::validate(const Point& p) const {
  if (!(p.v > 0.0) || !std::isfinite(p.u) || !std::isfinite(p.v)) {
    throw std::invalid_argument("half-plane point needs finite u and v > 0");
  }
}

double HalfPlane::distance(const Point& p, const Point& q) const {
  validate(p);
  validate(q);
  // 2 asinh(|p - q| / (2 sqrt(v_p v_q))), accurate for nearby points
  const double chord = std::hypot(p.u - q.u, p.v - q.v);
  return 2.0 * std::asinh(chord / (2.0 * std::sqrt(p.v * q.v)));
}

HalfPlanePoint HalfPlane::combine(const Point& p, const Point& q, double lambda) const {
  check_lambda(lambda);
  validate(p);
  validate(q);
  if (lambda == 0.0) return p;
  if (lambda == 1.0) return q;
  const double d = distance(p, q);
  if (d == 0.0) return p;
  const double sh = std::sinh(d);
  const double a = std::sinh((1.0 - lambda) * d) / sh;
  const double b = std::sinh(lambda * d) / sh;
  const double inv_v = a / p.v + b / q.v;
  const double u_over_v = a * (p.u / p.v) + b * (q.u / q.v);
  return {u_over_v / inv_v, 1.0 / inv_v};
}

HalfPlanePoint HalfPlane::rotate_about_origin(const Point& p, double angle) const {
  validate(p);
  const Complex z = rotate_about_i(to_complex(p), angle);
  return {z.real(), z.imag()};
}

PointSampler<HalfPlane> halfplane_box_sampler(double u_half_width, double v_min, double v_max) {
  return [=](Rng& rng) {
    HalfPlanePoint p;
    p.u = rng.uniform(-u_half_width, u_half_width);
    p.v = rng.log_uniform(v_min, v_max);
    return p;
  };
}

HalfPlanePoint random_point_at(const HalfPlane& space, const HalfPlanePoint& a, double s,
                               Rng& rng) {
  space.validate(a);
  // i e^s sits at distance s from i; rotate it about i, then move i to a.
  const double angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
  const Complex w = rotate_about_i(Complex(0.0, std::exp(s)), angle);
  return {a.u + a.v * w.real(), a.v * w.imag()};
}

}  // namespace geofix
