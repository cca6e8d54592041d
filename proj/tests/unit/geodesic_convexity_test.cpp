#include "fixtures.hpp"

#include "geofix/euclidean.hpp"
#include "geofix/geodesic_convexity.hpp"
#include "geofix/half_plane.hpp"
#include "geofix/real_tree.hpp"

#include <gtest/gtest.h>

#include <cmath>

using geofix::ConvexStructure;
using geofix::EuclideanPoint;
using geofix::EuclideanSpace;
using geofix::Rational;

namespace {

// W(x, y, l) = (1 - l^2) x + l^2 y: right endpoints, wrong speed
struct SquashedLine {
  using Point = double;
  using Scalar = double;
  std::string label() const { return "squashed"; }
  double distance(double x, double y) const { return std::abs(x - y); }
  double combine(double x, double y, double l) const { return (1 - l * l) * x + l * l * y; }
};

}  // namespace

TEST(Combine, RejectsLambdaOutsideUnitInterval) {
  EuclideanSpace e(2);
  ConvexStructure cs(e);
  EXPECT_THROW(cs.combine({0, 0}, {1, 1}, -0.1), std::domain_error);
  EXPECT_THROW(cs.combine({0, 0}, {1, 1}, 1.5), std::domain_error);
  EXPECT_THROW(cs.combine({0, 0}, {1, 1}, std::nan("")), std::domain_error);
}

TEST(Combine, Examples) {
  EuclideanSpace e(2);
  ConvexStructure cs(e);
  EXPECT_EQ(cs.distance(cs.combine({3, 4}, {1, 1}, 0.0), {3, 4}), 0.0);
  EXPECT_EQ(cs.combine({0, 0}, {2, 0}, 0.25), (EuclideanPoint{0.5, 0}));

  const auto tree = testing_support::exact_tree("tripod.json");
  ConvexStructure ct(tree);
  EXPECT_EQ(ct.combine(tree.vertex_point("a"), tree.vertex_point("b"), 0.5), tree.vertex_point("c"));
}

TEST(AxiomChecks, SingleTermExamples) {
  EuclideanSpace e(2);
  ConvexStructure cs(e);
  // W2 with x=(0,0), y=(4,0), l1=0, l2=3/4: both sides 3
  const auto p = cs.combine({0, 0}, {4, 0}, 0.0);
  const auto q = cs.combine({0, 0}, {4, 0}, 0.75);
  EXPECT_EQ(cs.distance(p, q), 3.0);
}

TEST(AxiomChecks, EuclideanResidualsVanish) {
  for (std::size_t dim : {1, 2, 5}) {
    EuclideanSpace e(dim);
    ConvexStructure cs(e);
    const auto draw = geofix::euclidean_box_sampler(e, 10.0);
    const auto report = geofix::run_axiom_suite(cs, draw, 42, 1000);
    EXPECT_LE(report.max_residual(), 1e-7) << dim;
    EXPECT_TRUE(report.passed(1e-7));
    EXPECT_EQ(report.samples, 1000u);
    EXPECT_EQ(report.seed, 42u);
    EXPECT_FALSE(report.exact);
  }
}

TEST(AxiomChecks, ExactTreeResidualsAreZero) {
  const auto tree = testing_support::exact_tree("rational_tree.json");
  ConvexStructure cs(tree);
  const auto report = geofix::run_axiom_suite(cs, geofix::tree_sampler(tree), 9, 1000);
  EXPECT_TRUE(report.exact);
  EXPECT_TRUE(report.exact_zero);
  EXPECT_EQ(report.max_residual(), 0.0);
}

TEST(AxiomChecks, IndividualChecksOnTrees) {
  const auto tree = testing_support::exact_tree("tripod.json");
  ConvexStructure cs(tree);
  const auto draw = geofix::tree_sampler(tree);
  geofix::Rng rng(1);
  EXPECT_EQ(geofix::check_axiom_W1(cs, draw, rng, 300), Rational(0));
  EXPECT_EQ(geofix::check_axiom_W2(cs, draw, rng, 300), Rational(0));
  EXPECT_EQ(geofix::check_axiom_W3(cs, draw, rng, 300), Rational(0));
  EXPECT_EQ(geofix::check_axiom_W4(cs, draw, rng, 300), Rational(0));
}

TEST(AxiomChecks, HalfPlaneW2) {
  geofix::HalfPlane h;
  ConvexStructure cs(h);
  geofix::Rng rng(5);
  EXPECT_LE(geofix::check_axiom_W2(cs, geofix::halfplane_box_sampler(5, 0.1, 10), rng, 1000), 1e-7);
}

TEST(AxiomChecks, BrokenCombineIsDetected) {
  SquashedLine s;
  ConvexStructure cs(s);
  geofix::PointSampler<SquashedLine> draw = [](geofix::Rng& rng) { return rng.uniform(-5, 5); };
  const auto report = geofix::run_axiom_suite(cs, draw, 3, 500);
  EXPECT_GT(report.w2, 1e-3);
  EXPECT_GT(report.w3, 1e-3);
  EXPECT_FALSE(report.passed(1e-7));
}

TEST(AxiomChecks, DeterministicPerSeed) {
  geofix::HalfPlane h;
  ConvexStructure cs(h);
  const auto draw = geofix::halfplane_box_sampler(5, 0.1, 10);
  const auto a = geofix::run_axiom_suite(cs, draw, 77, 200);
  const auto b = geofix::run_axiom_suite(cs, draw, 77, 200);
  EXPECT_EQ(a.w1, b.w1);
  EXPECT_EQ(a.w2, b.w2);
  EXPECT_EQ(a.w3, b.w3);
  EXPECT_EQ(a.w4, b.w4);
}

TEST(AxiomChecks, DistanceAlongCombineIsProportional) {
  geofix::HalfPlane h;
  ConvexStructure cs(h);
  const auto draw = geofix::halfplane_box_sampler(5, 0.1, 10);
  geofix::Rng rng(8);
  for (int i = 0; i < 500; ++i) {
    const auto x = draw(rng);
    const auto y = draw(rng);
    const double l = rng.uniform();
    EXPECT_NEAR(cs.distance(x, cs.combine(x, y, l)), l * cs.distance(x, y), 1e-9);
  }
}

TEST(SegmentPoints, Examples) {
  EuclideanSpace e(2);
  ConvexStructure cs(e);
  EXPECT_THROW(geofix::segment_points(cs, {0, 0}, {1, 0}, 0), std::invalid_argument);
  const auto two = geofix::segment_points(cs, {0, 0}, {1, 0}, 1);
  EXPECT_EQ(two, (std::vector<EuclideanPoint>{{0, 0}, {1, 0}}));
  const auto five = geofix::segment_points(cs, {0, 0}, {1, 0}, 4);
  ASSERT_EQ(five.size(), 5u);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(five[i][0], 0.25 * static_cast<double>(i));

  const auto tree = testing_support::exact_tree("tripod.json");
  ConvexStructure ct(tree);
  const auto abc = geofix::segment_points(ct, tree.vertex_point("a"), tree.vertex_point("b"), 2);
  EXPECT_EQ(abc[1], tree.vertex_point("c"));
}

TEST(SegmentPoints, ConsecutiveDistancesTelescope) {
  geofix::HalfPlane h;
  ConvexStructure cs(h);
  const geofix::HalfPlanePoint x{-2, 0.3}, y{3, 4};
  const std::size_t k = 50;
  const auto pts = geofix::segment_points(cs, x, y, k);
  double sum = 0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) sum += cs.distance(pts[i], pts[i + 1]);
  EXPECT_NEAR(sum, cs.distance(x, y), static_cast<double>(k) * 1e-9);
}

TEST(ConvexityCheck, Examples) {
  EuclideanSpace e(2);
  ConvexStructure cs(e);
  auto norm = [](const EuclideanPoint& p) { return std::hypot(p[0], p[1]); };
  EXPECT_TRUE(geofix::convexity_check<EuclideanSpace>(
      cs, [](const EuclideanPoint&) { return true; }, {0, 0}, {1, 1}, 8));
  EXPECT_TRUE(geofix::convexity_check<EuclideanSpace>(
      cs, [&](const EuclideanPoint& p) { return norm(p) <= 1.0; }, {-0.7, 0.2}, {0.5, -0.6}, 16));
  EXPECT_FALSE(geofix::convexity_check<EuclideanSpace>(
      cs, [&](const EuclideanPoint& p) { return norm(p) >= 0.5 && norm(p) <= 1.0; }, {-0.8, 0},
      {0.8, 0}, 16));
  EXPECT_THROW(geofix::convexity_check<EuclideanSpace>(
                   cs, [&](const EuclideanPoint& p) { return norm(p) <= 1.0; }, {2, 0}, {0, 0}, 4),
               std::invalid_argument);
}
