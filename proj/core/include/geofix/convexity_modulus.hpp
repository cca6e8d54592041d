#pragma once

#include "geofix/geodesic_convexity.hpp"
#include "geofix/random.hpp"
#include "geofix/scalar.hpp"
#include "geofix/space.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace geofix {

/// A modulus of uniform convexity eta(r, eps) with values in (0, 1], for r > 0
/// and eps in (0, 2]. monotone_in_r is the caller's claim that eta is
/// nonincreasing in r; check_monotone() tests it.
class Modulus {
 public:
  using Fn = std::function<double(double r, double eps)>;

  Modulus(std::string name, Fn eta, bool monotone_in_r);

  /// Evaluates eta. Throws std::domain_error outside the domain or when the
  /// value leaves (0, 1].
  double operator()(double r, double eps) const;

  const std::string& name() const { return name_; }
  bool monotone_in_r() const { return monotone_in_r_; }

 private:
  std::string name_;
  Fn eta_;
  bool monotone_in_r_;
};

/// eta(r, eps) = eps^2 / 8, valid in CAT(0) spaces.
Modulus cat0_modulus();

/// Bilinear interpolation over an (r, eps) grid, constant outside it.
/// eta[i][j] is the value at (r[i], eps[j]).
struct ModulusTable {
  std::vector<double> r;
  std::vector<double> eps;
  std::vector<std::vector<double>> eta;
};

/// Validates the table (sorted axes, values in (0, 1]); the monotone claim is
/// read off the grid columns.
Modulus table_modulus(const ModulusTable& table, std::string name = "table");

/// N-valued modulus: with d(x,a) < r, d(y,a) < r and
/// d(mid, a) > (1 - 2^-eta_d(r,k)) r it follows that d(x,y) <= 2^-k r.
class DiscreteModulus {
 public:
  using Fn = std::function<std::uint64_t(double r, std::uint64_t k)>;

  DiscreteModulus(std::string name, Fn eta_d);

  /// Throws std::domain_error when the value is 0.
  std::uint64_t operator()(double r, std::uint64_t k) const;
  const std::string& name() const { return name_; }

 private:
  std::string name_;
  Fn eta_d_;
};

/// eta_d(r, k) = ceil(-log2 eta(r, 2^-k)) + 1, at least 1; so
/// 2^-eta_d(r,k) < eta(r, 2^-k).
DiscreteModulus bridge_to_discrete(const Modulus& m);

/// ceil(-log2 x) for x in (0, 1], computed exactly from the binary exponent.
std::int64_t ceil_neg_log2(double x);

struct MonotoneGridEntry {
  double r1;
  double r2;
  double eps;
};

/// True iff eta(r1, eps) >= eta(r2, eps) for every entry. Throws
/// std::invalid_argument for an empty grid or invalid entries.
bool check_monotone(const Modulus& m, std::span<const MonotoneGridEntry> grid);

/// Consecutive radii in [1e-2, 1e2] crossed with eps in {2^-10, ..., 2}.
std::vector<MonotoneGridEntry> default_monotone_grid();

template <class Point>
struct UcViolation {
  Point a;
  Point x;
  Point y;
  double r = 0;
  double eps = 0;      // continuous check
  std::uint64_t k = 0; // discrete check
  double lhs = 0;
  double rhs = 0;
};

template <class Point>
struct UcResult {
  std::vector<UcViolation<Point>> violations;
  /// Samples that met the premise and were tested.
  std::size_t tested = 0;

  bool passed() const { return violations.empty(); }
};

/// Draw ranges for the uniform-convexity samplers.
struct UcSampling {
  double r_min = 1e-2;
  double r_max = 1e2;
  std::uint64_t k_max = 8;
};

/// For n sampled (a, x, y, r, eps) with d(x,a) <= r, d(y,a) <= r and
/// d(x,y) >= eps r, checks d(mid, a) <= (1 - eta(r, eps)) r + tol.
///
/// a comes from draw, r is log-uniform, eps uniform in (0, 2], and x, y sit on
/// spheres of radius u r around a with u uniform in [eps/2, 1].
/// point_at(a, s, rng) must return a point at distance s from a where the
/// space allows it.
template <WHyperbolicSpace Space, class PointAt>
UcResult<typename Space::Point> uc_implication_check(
    const ConvexStructure<Space>& cs, const Modulus& m, const PointSampler<Space>& draw,
    PointAt&& point_at, Rng& rng, std::size_t n, double tol, const UcSampling& sampling = {}) {
  UcResult<typename Space::Point> result;
  for (std::size_t i = 0; i < n; ++i) {
    const auto a = draw(rng);
    const double r = rng.log_uniform(sampling.r_min, sampling.r_max);
    const double eps = 2.0 * (1.0 - rng.uniform());
    const double ux = rng.uniform(eps / 2.0, 1.0);
    const double uy = rng.uniform(eps / 2.0, 1.0);
    const auto x = point_at(a, ux * r, rng);
    const auto y = point_at(a, uy * r, rng);
    const double dxa = to_double(cs.distance(x, a));
    const double dya = to_double(cs.distance(y, a));
    const double dxy = to_double(cs.distance(x, y));
    if (!(dxa <= r && dya <= r && dxy >= eps * r)) continue;
    ++result.tested;
    const double lhs = to_double(cs.distance(cs.combine(x, y, 0.5), a));
    const double rhs = (1.0 - m(r, eps)) * r;
    if (lhs > rhs + tol) result.violations.push_back({a, x, y, r, eps, 0, lhs, rhs});
  }
  return result;
}

/// For n sampled (a, x, y, r, k) with d(x,a) < r, d(y,a) < r and
/// d(mid, a) > (1 - 2^-eta_d(r,k)) r, checks d(x,y) <= 2^-k r + tol.
///
/// x sits at radius (1 - w) r with w log-uniform in [2^-40, 1/4], so it is
/// often close enough to the sphere for the premise; y sits at distance
/// s = t 2^-k r from x with t log-uniform in [2^-8, 4], so separations
/// straddle the 2^-k r threshold.
template <WHyperbolicSpace Space, class PointAt>
UcResult<typename Space::Point> discrete_uc_check(
    const ConvexStructure<Space>& cs, const DiscreteModulus& dm, const PointSampler<Space>& draw,
    PointAt&& point_at, Rng& rng, std::size_t n, double tol, const UcSampling& sampling = {}) {
  UcResult<typename Space::Point> result;
  for (std::size_t i = 0; i < n; ++i) {
    const auto a = draw(rng);
    const double r = rng.log_uniform(sampling.r_min, sampling.r_max);
    const std::uint64_t k = rng.index(sampling.k_max + 1);
    const double scale = std::ldexp(1.0, -static_cast<int>(k));
    const auto x = point_at(a, (1.0 - rng.log_uniform(0x1.0p-40, 0.25)) * r, rng);
    const auto y = point_at(x, rng.log_uniform(0x1.0p-8, 4.0) * scale * r, rng);
    const double dxa = to_double(cs.distance(x, a));
    const double dya = to_double(cs.distance(y, a));
    if (!(dxa < r && dya < r)) continue;
    const double mid = to_double(cs.distance(cs.combine(x, y, 0.5), a));
    const double threshold =
        (1.0 - std::ldexp(1.0, -static_cast<int>(std::min<std::uint64_t>(dm(r, k), 1074)))) * r;
    if (!(mid > threshold)) continue;
    ++result.tested;
    const double dxy = to_double(cs.distance(x, y));
    if (dxy > scale * r + tol) result.violations.push_back({a, x, y, r, 0.0, k, dxy, scale * r});
  }
  return result;
}

}  // namespace geofix
