#pragma once

#include "geofix/convexity_modulus.hpp"
#include "geofix/fixed_point.hpp"
#include "geofix/geodesic_convexity.hpp"

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

namespace geofix::harness {

struct KmLimits {
  /// Hard cap on the iteration count N.
  std::uint64_t max_iterations = 1'000'000;
  /// Iterations run past the largest bound.
  std::uint64_t margin = 16;
  double tol = kDefaultTol;
  /// Late iterates kept as approximate-fixed-point candidates.
  std::size_t keep_last = 16;
};

enum class RateStatus {
  /// residual(n) <= eps + tol for every n in [Phi, N].
  kPass,
  /// Phi > N, but residual(N) <= eps + tol and the residuals are
  /// nonincreasing, so residual(Phi) <= eps + tol as well.
  kPassAtCap,
  /// Phi > N and residual(N) > eps + tol: nothing is decided.
  kUnverifiedWithinCap,
  kFail,
};

inline const char* to_string(RateStatus s) {
  switch (s) {
    case RateStatus::kPass: return "pass";
    case RateStatus::kPassAtCap: return "pass_at_cap";
    case RateStatus::kUnverifiedWithinCap: return "unverified_within_cap";
    case RateStatus::kFail: return "fail";
  }
  return "fail";
}

struct EpsilonVerdict {
  double eps = 0;
  std::uint64_t phi = 0;
  /// Index whose residual decides the verdict: Phi, or N when capped.
  std::uint64_t checked_index = 0;
  double checked_residual = 0;
  RateStatus status = RateStatus::kFail;
};

template <class Point>
struct KmOutcome {
  IterationTrace<Point> trace;
  std::vector<EpsilonVerdict> verdicts;
  bool monotone = false;
  bool capped = false;
  /// approx_fixed_point_gap(x0, b) over the known fixed points and the late
  /// iterates.
  double fixed_point_gap = 0;

  bool passed() const {
    return monotone && std::none_of(verdicts.begin(), verdicts.end(), [](const EpsilonVerdict& v) {
             return v.status == RateStatus::kFail;
           });
  }
};

/// Bounds for every eps, one KM run to N = min(max Phi + margin, cap), then the
/// monotonicity and rate verdicts.
template <WHyperbolicSpace Space>
KmOutcome<typename Space::Point> run_km(const ConvexStructure<Space>& cs,
                                        const NonexpansiveMap<Space>& t,
                                        const std::vector<typename Space::Point>& fixed_points,
                                        const typename Space::Point& x0,
                                        const LambdaSchedule& schedule, const ThetaWitness& theta,
                                        double b, const std::vector<double>& epsilons,
                                        const Modulus& modulus, const KmLimits& limits = {}) {
  if (epsilons.empty()) throw std::invalid_argument("no epsilon values");
  KmOutcome<typename Space::Point> out;
  std::uint64_t max_phi = 0;
  for (double eps : epsilons) {
    EpsilonVerdict v;
    v.eps = eps;
    v.phi = rate_bound(eps, theta, b, modulus);
    max_phi = std::max(max_phi, v.phi);
    out.verdicts.push_back(v);
  }
  std::uint64_t n = limits.max_iterations;
  if (max_phi <= limits.max_iterations && limits.max_iterations - max_phi >= limits.margin) {
    n = max_phi + limits.margin;
  }
  out.capped = max_phi > n;

  out.trace = km_iterate(cs, t, x0, schedule, n, KmOptions{limits.keep_last});
  out.monotone = residual_monotone(out.trace, limits.tol);

  const auto& res = out.trace.residuals;
  for (auto& v : out.verdicts) {
    if (v.phi <= n) {
      v.checked_index = v.phi;
      v.checked_residual = res[v.phi];
      v.status = check_rate(out.trace, v.phi, v.eps, limits.tol) ? RateStatus::kPass
                                                                 : RateStatus::kFail;
    } else {
      v.checked_index = n;
      v.checked_residual = res[n];
      v.status = res[n] <= v.eps + limits.tol && out.monotone ? RateStatus::kPassAtCap
                                                              : RateStatus::kUnverifiedWithinCap;
    }
  }

  std::vector<typename Space::Point> candidates = fixed_points;
  candidates.insert(candidates.end(), out.trace.iterates.begin(), out.trace.iterates.end());
  out.fixed_point_gap = approx_fixed_point_gap(cs.space(), t, x0, b,
                                               std::span<const typename Space::Point>(candidates));
  return out;
}

}  // namespace geofix::harness
