#pragma once

#include "geofix/convexity_modulus.hpp"
#include "geofix/geodesic_convexity.hpp"
#include "geofix/random.hpp"
#include "geofix/scalar.hpp"
#include "geofix/space.hpp"

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace geofix {

/// A self-map T of a space, assumed nonexpansive: d(Tx, Ty) <= d(x, y).
template <class Space>
struct NonexpansiveMap {
  std::function<typename Space::Point(const typename Space::Point&)> apply;
  std::string label;

  typename Space::Point operator()(const typename Space::Point& p) const { return apply(p); }
};

/// Thrown when an iteration runs past a schedule without a tail value.
class ScheduleExhausted : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Relaxation parameters lambda_0, lambda_1, ... in [0, 1]: an explicit prefix
/// followed by an optional constant tail.
class LambdaSchedule {
 public:
  LambdaSchedule(std::vector<double> values, std::optional<double> tail);

  static LambdaSchedule constant(double lambda) { return LambdaSchedule({}, lambda); }

  double operator[](std::uint64_t n) const;

  const std::vector<double>& values() const { return values_; }
  const std::optional<double>& tail() const { return tail_; }

 private:
  std::vector<double> values_;
  std::optional<double> tail_;
};

/// theta : N -> N with sum_{i <= theta(n)} lambda_i (1 - lambda_i) >= n.
struct ThetaWitness {
  std::function<std::uint64_t(std::uint64_t)> fn;
  std::string label;

  std::uint64_t operator()(std::uint64_t n) const { return fn(n); }
};

/// Thrown when sum lambda_i (1 - lambda_i) does not diverge.
class NoThetaWitness : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The least theta: theta(n) = min { m : sum_{i=0}^{m} lambda_i (1 - lambda_i) >= n },
/// evaluated in exact rational arithmetic on the binary64 lambdas.
ThetaWitness make_theta(const LambdaSchedule& schedule);

/// theta(n) = factor * n.
ThetaWitness linear_theta(std::uint64_t factor);

/// sum_{i=0}^{m} lambda_i (1 - lambda_i), exact.
Rational schedule_prefix_sum(const LambdaSchedule& schedule, std::uint64_t m);

/// Checks the witness inequality exactly for every n in [0, n_max].
bool theta_is_witness(const ThetaWitness& theta, const LambdaSchedule& schedule,
                      std::uint64_t n_max);

/// ceil of (b + 1) / (eps eta(b + 1, eps / (b + 1))): exact when the binary64
/// operands divide to an integer, otherwise nudged up one ulp before ceiling.
std::uint64_t rate_inner_argument(double eps, double b, const Modulus& m);

/// Phi(eps, theta, b, eta) = theta(ceil((b + 1) / (eps eta(b + 1, eps / (b + 1)))))
/// for eps < 2b, and 0 otherwise.
///
/// The bound needs eta nonincreasing in r; that is checked on
/// default_monotone_grid() and a failure throws std::domain_error.
std::uint64_t rate_bound(double eps, const ThetaWitness& theta, double b, const Modulus& m);

template <class Point>
struct IterationTrace {
  /// Retained iterates; iterates[i] is x_{first_iterate + i}.
  std::vector<Point> iterates;
  std::uint64_t first_iterate = 0;
  /// residuals[n] = d(x_n, T x_n) for n = 0..N.
  std::vector<double> residuals;
  LambdaSchedule schedule = LambdaSchedule::constant(0.5);
  std::string space_label;
  std::string map_label;

  std::uint64_t last_index() const { return residuals.empty() ? 0 : residuals.size() - 1; }
};

struct KmOptions {
  /// Keep only the last keep_last iterates (all by default).
  std::size_t keep_last = std::numeric_limits<std::size_t>::max();
};

/// x_{n+1} = (1 - lambda_n) x_n (+) lambda_n T x_n for n < N, recording
/// d(x_n, T x_n) for n = 0..N.
template <WHyperbolicSpace Space>
IterationTrace<typename Space::Point> km_iterate(const ConvexStructure<Space>& cs,
                                                 const NonexpansiveMap<Space>& t,
                                                 const typename Space::Point& x0,
                                                 const LambdaSchedule& schedule, std::uint64_t n,
                                                 const KmOptions& opts = {}) {
  IterationTrace<typename Space::Point> trace;
  trace.schedule = schedule;
  trace.space_label = cs.space().label();
  trace.map_label = t.label;
  trace.residuals.reserve(static_cast<std::size_t>(n) + 1);
  const std::uint64_t keep_from = opts.keep_last > n ? 0 : n + 1 - opts.keep_last;
  trace.first_iterate = keep_from;

  typename Space::Point x = x0;
  for (std::uint64_t i = 0;; ++i) {
    auto tx = t(x);
    trace.residuals.push_back(to_double(cs.distance(x, tx)));
    if (i >= keep_from) trace.iterates.push_back(x);
    if (i == n) break;
    x = cs.combine(x, tx, schedule[i]);
  }
  return trace;
}

/// residual(n + 1) <= residual(n) + tol for every n.
bool residual_monotone(std::span<const double> residuals, double tol = kDefaultTol);

template <class Point>
bool residual_monotone(const IterationTrace<Point>& trace, double tol = kDefaultTol) {
  if (trace.residuals.empty()) throw std::invalid_argument("empty trace");
  return residual_monotone(std::span<const double>(trace.residuals), tol);
}

/// residual(n) <= eps + tol for every n >= phi. Throws std::length_error when
/// the trace ends before phi.
bool check_rate(std::span<const double> residuals, std::uint64_t phi, double eps,
                double tol = kDefaultTol);

template <class Point>
bool check_rate(const IterationTrace<Point>& trace, std::uint64_t phi, double eps,
                double tol = kDefaultTol) {
  return check_rate(std::span<const double>(trace.residuals), phi, eps, tol);
}

/// max over sampled pairs of d(Tx, Ty) - d(x, y).
template <WHyperbolicSpace Space>
double check_nonexpansive(const Space& space, const NonexpansiveMap<Space>& t,
                          const PointSampler<Space>& draw, Rng& rng, std::size_t n) {
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = draw(rng);
    const auto y = draw(rng);
    const double stretch = to_double(space.distance(t(x), t(y))) - to_double(space.distance(x, y));
    if (stretch > worst) worst = stretch;
  }
  return worst;
}

/// min over candidates y with d(x, y) <= b of d(y, T y); +inf when none is
/// within b.
template <MetricSpace Space>
double approx_fixed_point_gap(const Space& space, const NonexpansiveMap<Space>& t,
                              const typename Space::Point& x, double b,
                              std::span<const typename Space::Point> candidates) {
  if (candidates.empty()) throw std::invalid_argument("approx_fixed_point_gap needs candidates");
  double best = std::numeric_limits<double>::infinity();
  for (const auto& y : candidates) {
    if (to_double(space.distance(x, y)) > b) continue;
    const double gap = to_double(space.distance(y, t(y)));
    if (gap < best) best = gap;
  }
  return best;
}

}  // namespace geofix
