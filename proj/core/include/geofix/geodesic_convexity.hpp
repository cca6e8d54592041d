#pragma once

#include "geofix/random.hpp"
#include "geofix/scalar.hpp"
#include "geofix/space.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace geofix {

/// W over a space: combine(x, y, lambda) = (1 - lambda) x (+) lambda y.
template <WHyperbolicSpace Space>
class ConvexStructure {
 public:
  using Point = typename Space::Point;
  using Scalar = typename Space::Scalar;

  explicit ConvexStructure(const Space& space) : space_(&space) {}

  const Space& space() const { return *space_; }

  Point combine(const Point& x, const Point& y, double lambda) const {
    check_lambda(lambda);
    return space_->combine(x, y, lambda);
  }

  Scalar distance(const Point& x, const Point& y) const { return space_->distance(x, y); }

 private:
  const Space* space_;
};

/// Per-axiom maximum residuals. Residuals are reported, pass/fail is decided
/// by the caller's threshold.
struct AxiomReport {
  double w1 = 0;
  double w2 = 0;
  double w3 = 0;
  double w4 = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  bool exact = false;
  /// All four residuals are exactly zero (meaningful in exact mode).
  bool exact_zero = false;

  double max_residual() const { return std::max({w1, w2, w3, w4}); }
  bool passed(double threshold) const { return max_residual() <= threshold; }
};

namespace detail {

/// Size of the fixed degenerate prefix of every axiom sample stream.
inline constexpr std::size_t kAdversarialTuples = 12;

inline double adversarial_lambda(std::size_t i) {
  constexpr std::array<double, 3> kLambdas{0.0, 0.5, 1.0};
  return kLambdas[i % 3];
}

/// Draws K points. The first tuples of the stream coincide by pattern i / 3:
/// none, first two equal, last equals first, all equal.
template <std::size_t K, class Space>
std::array<typename Space::Point, K> draw_tuple(const PointSampler<Space>& draw, Rng& rng,
                                                std::size_t i) {
  std::array<typename Space::Point, K> pts;
  for (auto& p : pts) p = draw(rng);
  if (i < kAdversarialTuples) {
    switch (i / 3) {
      case 1: pts[1] = pts[0]; break;
      case 2: pts[K - 1] = pts[0]; break;
      case 3: std::fill(pts.begin(), pts.end(), pts[0]); break;
      default: break;
    }
  }
  return pts;
}

inline double draw_lambda(Rng& rng, std::size_t i) {
  return i < kAdversarialTuples ? adversarial_lambda(i) : rng.dyadic_lambda();
}

template <class Scalar>
void keep_max(Scalar& worst, Scalar candidate) {
  if (candidate > worst) worst = std::move(candidate);
}

}  // namespace detail

/// max over samples of d(z, W(x,y,l)) - [(1-l) d(z,x) + l d(z,y)], clamped at 0.
template <WHyperbolicSpace Space>
typename Space::Scalar check_axiom_W1(const ConvexStructure<Space>& cs,
                                      const PointSampler<Space>& draw, Rng& rng, std::size_t n) {
  using Scalar = typename Space::Scalar;
  Scalar worst(0);
  for (std::size_t i = 0; i < n; ++i) {
    auto [x, y, z] = detail::draw_tuple<3, Space>(draw, rng, i);
    const double lambda = detail::draw_lambda(rng, i);
    const Scalar l = from_double<Scalar>(lambda);
    Scalar lhs = cs.distance(z, cs.combine(x, y, lambda));
    Scalar rhs = (Scalar(1) - l) * cs.distance(z, x) + l * cs.distance(z, y);
    detail::keep_max(worst, Scalar(lhs - rhs));
  }
  return worst;
}

/// max over samples of |d(W(x,y,l1), W(x,y,l2)) - |l1 - l2| d(x,y)|.
template <WHyperbolicSpace Space>
typename Space::Scalar check_axiom_W2(const ConvexStructure<Space>& cs,
                                      const PointSampler<Space>& draw, Rng& rng, std::size_t n) {
  using Scalar = typename Space::Scalar;
  Scalar worst(0);
  for (std::size_t i = 0; i < n; ++i) {
    auto [x, y] = detail::draw_tuple<2, Space>(draw, rng, i);
    const double l1 = detail::draw_lambda(rng, i);
    // the degenerate prefix alternates l1 == l2 with endpoint pairs
    const double l2 = i < detail::kAdversarialTuples
                          ? (i % 2 == 0 ? l1 : detail::adversarial_lambda(i + 1))
                          : rng.dyadic_lambda();
    const Scalar gap = abs_value(Scalar(from_double<Scalar>(l1) - from_double<Scalar>(l2)));
    Scalar lhs = cs.distance(cs.combine(x, y, l1), cs.combine(x, y, l2));
    Scalar rhs = gap * cs.distance(x, y);
    detail::keep_max(worst, abs_value(Scalar(lhs - rhs)));
  }
  return worst;
}

/// max over samples of d(W(x,y,l), W(y,x,1-l)).
template <WHyperbolicSpace Space>
typename Space::Scalar check_axiom_W3(const ConvexStructure<Space>& cs,
                                      const PointSampler<Space>& draw, Rng& rng, std::size_t n) {
  using Scalar = typename Space::Scalar;
  Scalar worst(0);
  for (std::size_t i = 0; i < n; ++i) {
    auto [x, y] = detail::draw_tuple<2, Space>(draw, rng, i);
    const double lambda = detail::draw_lambda(rng, i);
    detail::keep_max(worst, Scalar(cs.distance(cs.combine(x, y, lambda),
                                               cs.combine(y, x, 1.0 - lambda))));
  }
  return worst;
}

/// max over samples of d(W(x,z,l), W(y,w,l)) - [(1-l) d(x,y) + l d(z,w)], clamped at 0.
template <WHyperbolicSpace Space>
typename Space::Scalar check_axiom_W4(const ConvexStructure<Space>& cs,
                                      const PointSampler<Space>& draw, Rng& rng, std::size_t n) {
  using Scalar = typename Space::Scalar;
  Scalar worst(0);
  for (std::size_t i = 0; i < n; ++i) {
    auto [x, y, z, w] = detail::draw_tuple<4, Space>(draw, rng, i);
    const double lambda = detail::draw_lambda(rng, i);
    const Scalar l = from_double<Scalar>(lambda);
    Scalar lhs = cs.distance(cs.combine(x, z, lambda), cs.combine(y, w, lambda));
    Scalar rhs = (Scalar(1) - l) * cs.distance(x, y) + l * cs.distance(z, w);
    detail::keep_max(worst, Scalar(lhs - rhs));
  }
  return worst;
}

/// Runs all four checks, each on its own stream derived from seed.
template <WHyperbolicSpace Space>
AxiomReport run_axiom_suite(const ConvexStructure<Space>& cs, const PointSampler<Space>& draw,
                            std::uint64_t seed, std::size_t n) {
  using Scalar = typename Space::Scalar;
  AxiomReport report;
  report.samples = n;
  report.seed = seed;
  report.exact = is_exact_v<Scalar>;
  std::array<Scalar, 4> r;
  {
    Rng rng(seed);
    r[0] = check_axiom_W1(cs, draw, rng, n);
  }
  {
    Rng rng(seed + 1);
    r[1] = check_axiom_W2(cs, draw, rng, n);
  }
  {
    Rng rng(seed + 2);
    r[2] = check_axiom_W3(cs, draw, rng, n);
  }
  {
    Rng rng(seed + 3);
    r[3] = check_axiom_W4(cs, draw, rng, n);
  }
  report.w1 = to_double(r[0]);
  report.w2 = to_double(r[1]);
  report.w3 = to_double(r[2]);
  report.w4 = to_double(r[3]);
  report.exact_zero = std::all_of(r.begin(), r.end(), [](const Scalar& v) { return v == Scalar(0); });
  return report;
}

/// combine(x, y, i/k) for i = 0..k.
template <WHyperbolicSpace Space>
std::vector<typename Space::Point> segment_points(const ConvexStructure<Space>& cs,
                                                  const typename Space::Point& x,
                                                  const typename Space::Point& y, std::size_t k) {
  if (k == 0) throw std::invalid_argument("segment resolution k must be at least 1");
  std::vector<typename Space::Point> out;
  out.reserve(k + 1);
  for (std::size_t i = 0; i <= k; ++i) {
    out.push_back(cs.combine(x, y, static_cast<double>(i) / static_cast<double>(k)));
  }
  return out;
}

/// True iff member holds on every sampled point of [x, y].
template <WHyperbolicSpace Space>
bool convexity_check(const ConvexStructure<Space>& cs,
                     const std::function<bool(const typename Space::Point&)>& member,
                     const typename Space::Point& x, const typename Space::Point& y,
                     std::size_t k) {
  if (!member(x) || !member(y)) {
    throw std::invalid_argument("convexity_check requires both endpoints in the set");
  }
  const auto pts = segment_points(cs, x, y, k);
  return std::all_of(pts.begin(), pts.end(), member);
}

}  // namespace geofix
