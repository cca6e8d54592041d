#include "fixtures.hpp"

#include "geofix/convexity_modulus.hpp"
#include "geofix/euclidean.hpp"
#include "geofix/half_plane.hpp"
#include "geofix/real_tree.hpp"

#include <gtest/gtest.h>

#include <cmath>

using geofix::ConvexStructure;
using geofix::EuclideanPoint;
using geofix::EuclideanSpace;
using geofix::Modulus;

namespace {

Modulus constant_modulus(double value) {
  return Modulus("constant", [value](double, double) { return value; }, true);
}

// min(1, eps r): grows with r
Modulus growing_modulus() {
  return Modulus("growing", [](double r, double eps) { return std::min(1.0, eps * r); }, false);
}

auto euclid_point_at(const EuclideanSpace& e) {
  return [&e](const EuclideanPoint& a, double s, geofix::Rng& rng) {
    return geofix::random_point_at(e, a, s, rng);
  };
}

}  // namespace

TEST(Modulus, DomainChecks) {
  const auto m = geofix::cat0_modulus();
  EXPECT_THROW(m(0.0, 1.0), std::domain_error);
  EXPECT_THROW(m(1.0, 0.0), std::domain_error);
  EXPECT_THROW(m(1.0, 2.5), std::domain_error);
  EXPECT_THROW(constant_modulus(0.0)(1.0, 1.0), std::domain_error);
  EXPECT_THROW(constant_modulus(1.5)(1.0, 1.0), std::domain_error);
}

TEST(Cat0Modulus, Values) {
  const auto m = geofix::cat0_modulus();
  EXPECT_EQ(m(123.0, 2.0), 0.5);
  EXPECT_EQ(m(2.0, 0.25), 1.0 / 128.0);
  EXPECT_TRUE(m.monotone_in_r());
  EXPECT_TRUE(geofix::check_monotone(m, geofix::default_monotone_grid()));
}

TEST(CheckMonotone, Examples) {
  const auto m = geofix::cat0_modulus();
  const std::vector<geofix::MonotoneGridEntry> same{{3.0, 3.0, 0.5}};
  EXPECT_TRUE(geofix::check_monotone(growing_modulus(), same));
  const std::vector<geofix::MonotoneGridEntry> grid{{0.1, 0.5, 1.0}, {1.0, 2.0, 0.5}};
  EXPECT_TRUE(geofix::check_monotone(m, grid));
  EXPECT_FALSE(geofix::check_monotone(growing_modulus(), grid));
}

TEST(CheckMonotone, InvalidGrids) {
  const auto m = geofix::cat0_modulus();
  EXPECT_THROW(geofix::check_monotone(m, {}), std::invalid_argument);
  const std::vector<geofix::MonotoneGridEntry> reversed{{2.0, 1.0, 0.5}};
  EXPECT_THROW(geofix::check_monotone(m, reversed), std::invalid_argument);
  const std::vector<geofix::MonotoneGridEntry> bad_eps{{1.0, 2.0, 3.0}};
  EXPECT_THROW(geofix::check_monotone(m, bad_eps), std::invalid_argument);
  const std::vector<geofix::MonotoneGridEntry> bad_r{{0.0, 2.0, 1.0}};
  EXPECT_THROW(geofix::check_monotone(m, bad_r), std::invalid_argument);
}

TEST(TableModulus, InterpolatesAndClamps) {
  geofix::ModulusTable t{{1.0, 3.0}, {0.5, 1.5}, {{0.2, 0.6}, {0.1, 0.3}}};
  const auto m = geofix::table_modulus(t);
  EXPECT_DOUBLE_EQ(m(1.0, 0.5), 0.2);
  EXPECT_DOUBLE_EQ(m(2.0, 1.0), 0.3);
  EXPECT_DOUBLE_EQ(m(0.01, 0.1), 0.2);
  EXPECT_DOUBLE_EQ(m(50.0, 2.0), 0.3);
  EXPECT_TRUE(m.monotone_in_r());
  EXPECT_EQ(m.name(), "table");
}

TEST(TableModulus, MonotoneClaimReadFromRows) {
  geofix::ModulusTable t{{1.0, 3.0}, {1.0}, {{0.2}, {0.4}}};
  const auto m = geofix::table_modulus(t, "up");
  EXPECT_FALSE(m.monotone_in_r());
  EXPECT_FALSE(geofix::check_monotone(m, geofix::default_monotone_grid()));
}

TEST(TableModulus, RejectsBadTables) {
  EXPECT_THROW(geofix::table_modulus({{}, {1.0}, {}}), std::invalid_argument);
  EXPECT_THROW(geofix::table_modulus({{2.0, 1.0}, {1.0}, {{0.5}, {0.5}}}), std::invalid_argument);
  EXPECT_THROW(geofix::table_modulus({{1.0}, {0.0}, {{0.5}}}), std::invalid_argument);
  EXPECT_THROW(geofix::table_modulus({{1.0}, {1.0}, {{0.5, 0.5}}}), std::invalid_argument);
  EXPECT_THROW(geofix::table_modulus({{1.0}, {1.0}, {{1.5}}}), std::domain_error);
}

TEST(Bridge, Examples) {
  const auto half = geofix::bridge_to_discrete(constant_modulus(0.5));
  for (std::uint64_t k : {0u, 1u, 7u}) EXPECT_EQ(half(3.0, k), 2u);
  const auto cat0 = geofix::bridge_to_discrete(geofix::cat0_modulus());
  EXPECT_EQ(cat0(1.0, 2), 8u);
  EXPECT_EQ(cat0.name(), "bridged-cat0");
  EXPECT_EQ(geofix::bridge_to_discrete(constant_modulus(1.0))(1.0, 5), 1u);
}

TEST(Bridge, CeilNegLog2) {
  EXPECT_EQ(geofix::ceil_neg_log2(1.0), 0);
  EXPECT_EQ(geofix::ceil_neg_log2(0.5), 1);
  EXPECT_EQ(geofix::ceil_neg_log2(0.3), 2);
  EXPECT_EQ(geofix::ceil_neg_log2(1.0 / 128), 7);
  EXPECT_EQ(geofix::ceil_neg_log2(0.0078125001), 7);
  EXPECT_EQ(geofix::ceil_neg_log2(0.0078124999), 8);
  EXPECT_EQ(geofix::ceil_neg_log2(std::ldexp(1.0, -1074)), 1074);
  EXPECT_THROW(geofix::ceil_neg_log2(0.0), std::domain_error);
  EXPECT_THROW(geofix::ceil_neg_log2(1.5), std::domain_error);
}

TEST(Bridge, StrictInequalityOnGrid) {
  for (const auto& m : {geofix::cat0_modulus(), constant_modulus(0.5), constant_modulus(1.0),
                        constant_modulus(0.3)}) {
    const auto dm = geofix::bridge_to_discrete(m);
    for (double r : {0.01, 0.5, 1.0, 10.0, 100.0}) {
      for (std::uint64_t k = 0; k <= 40; ++k) {
        const double eta = m(r, std::ldexp(1.0, -static_cast<int>(k)));
        EXPECT_LT(std::ldexp(1.0, -static_cast<int>(dm(r, k))), eta) << m.name() << " " << r << " " << k;
      }
    }
  }
}

TEST(Bridge, NondecreasingInK) {
  const auto dm = geofix::bridge_to_discrete(geofix::cat0_modulus());
  for (double r : {0.01, 1.0, 100.0}) {
    for (std::uint64_t k = 0; k < 60; ++k) EXPECT_LE(dm(r, k), dm(r, k + 1));
  }
}

TEST(Bridge, RejectsHugeK) {
  const auto dm = geofix::bridge_to_discrete(constant_modulus(0.5));
  EXPECT_THROW(dm(1.0, 2000), std::domain_error);
}

TEST(DiscreteModulus, ZeroIsAnError) {
  geofix::DiscreteModulus zero("zero", [](double, std::uint64_t) -> std::uint64_t { return 0; });
  EXPECT_THROW(zero(1.0, 1), std::domain_error);
}

TEST(UcCheck, LineExamples) {
  EuclideanSpace e(1);
  ConvexStructure cs(e);
  // a = 0, x = r, y = -r: the midpoint is a itself
  const double r = 2.0;
  const auto mid = cs.combine({r}, {-r}, 0.5);
  EXPECT_LE(cs.distance(mid, {0.0}), (1 - geofix::cat0_modulus()(r, 2.0)) * r);
}

TEST(UcCheck, SkipsWhenPremiseFails) {
  EuclideanSpace e(2);
  ConvexStructure cs(e);
  // every point coincides with a: the separation premise never holds
  geofix::PointSampler<EuclideanSpace> draw = [](geofix::Rng&) { return EuclideanPoint{0, 0}; };
  auto same = [](const EuclideanPoint& a, double, geofix::Rng&) { return a; };
  geofix::Rng rng(1);
  const auto res = geofix::uc_implication_check(cs, constant_modulus(1.0), draw, same, rng, 100, 1e-9);
  EXPECT_EQ(res.tested, 0u);
  EXPECT_TRUE(res.passed());
  const auto dres =
      geofix::discrete_uc_check(cs, geofix::bridge_to_discrete(constant_modulus(1.0)), draw, same, rng, 100, 1e-9);
  EXPECT_EQ(dres.tested, 0u);
}

TEST(UcCheck, Cat0HoldsOnEuclideanPlane) {
  EuclideanSpace e(2);
  ConvexStructure cs(e);
  const auto draw = geofix::euclidean_box_sampler(e, 10.0);
  geofix::Rng rng(21);
  const auto res = geofix::uc_implication_check(cs, geofix::cat0_modulus(), draw, euclid_point_at(e), rng,
                                                10000, 1e-9);
  EXPECT_TRUE(res.passed());
  EXPECT_GT(res.tested, 1000u);
  geofix::Rng rng2(22);
  const auto dres = geofix::discrete_uc_check(cs, geofix::bridge_to_discrete(geofix::cat0_modulus()), draw,
                                              euclid_point_at(e), rng2, 10000, 1e-9);
  EXPECT_TRUE(dres.passed());
  EXPECT_GT(dres.tested, 100u);
}

TEST(UcCheck, InflatedModulusIsCaught) {
  EuclideanSpace e(2);
  ConvexStructure cs(e);
  const Modulus inflated("inflated", [](double, double eps) { return std::min(1.0, 4 * eps); }, true);
  geofix::Rng rng(5);
  const auto res = geofix::uc_implication_check(cs, inflated, geofix::euclidean_box_sampler(e, 10.0),
                                                euclid_point_at(e), rng, 2000, 1e-9);
  EXPECT_FALSE(res.passed());
}

TEST(UcCheck, WeakenedDiscreteModulusIsCaught) {
  EuclideanSpace e(2);
  ConvexStructure cs(e);
  const auto bridged = geofix::bridge_to_discrete(geofix::cat0_modulus());
  const geofix::DiscreteModulus weakened("weakened", [bridged](double r, std::uint64_t k) {
    return std::max<std::uint64_t>(bridged(r, k), 4) - 3;
  });

  // crafted triple: x, y on a circle of radius just under r around a = 0,
  // separated by a chord of 1.5 * 2^-k r
  const double r = 1.0;
  const std::uint64_t k = 3;
  const double s = 1.5 * std::ldexp(1.0, -3) * r;
  const double rho = r * (1 - 1e-6);
  const double half = std::asin(s / (2 * rho));
  const EuclideanPoint x{rho * std::cos(half), rho * std::sin(half)};
  const EuclideanPoint y{rho * std::cos(half), -rho * std::sin(half)};
  const double mid = cs.distance(cs.combine(x, y, 0.5), {0, 0});
  const double premise = (1 - std::ldexp(1.0, -static_cast<int>(weakened(r, k)))) * r;
  EXPECT_GT(mid, premise);
  EXPECT_GT(cs.distance(x, y), std::ldexp(1.0, -3) * r);
  const double bridged_premise = (1 - std::ldexp(1.0, -static_cast<int>(bridged(r, k)))) * r;
  EXPECT_LE(mid, bridged_premise);

  geofix::Rng rng(9);
  const auto res = geofix::discrete_uc_check(cs, weakened, geofix::euclidean_box_sampler(e, 10.0),
                                             euclid_point_at(e), rng, 10000, 1e-9);
  EXPECT_FALSE(res.passed());
}

TEST(UcCheck, Cat0HoldsOnTreesAndHalfPlane) {
  const auto tree = testing_support::float_tree("rational_tree.json");
  ConvexStructure ct(tree);
  auto tree_at = [&tree](const geofix::TreePoint<double>& a, double s, geofix::Rng& rng) {
    return geofix::random_point_at(tree, a, s, rng);
  };
  geofix::Rng rng(3);
  EXPECT_TRUE(geofix::uc_implication_check(ct, geofix::cat0_modulus(), geofix::tree_sampler(tree), tree_at,
                                           rng, 3000, 1e-9)
                  .passed());

  geofix::HalfPlane h;
  ConvexStructure ch(h);
  auto hp_at = [&h](const geofix::HalfPlanePoint& a, double s, geofix::Rng& rng) {
    return geofix::random_point_at(h, a, s, rng);
  };
  geofix::Rng rng2(4);
  EXPECT_TRUE(geofix::uc_implication_check(ch, geofix::cat0_modulus(), geofix::halfplane_box_sampler(5, 0.1, 10),
                                           hp_at, rng2, 3000, 1e-9)
                  .passed());
}

TEST(UcCheck, BridgedPassesWhereContinuousPasses) {
  geofix::HalfPlane h;
  ConvexStructure ch(h);
  auto hp_at = [&h](const geofix::HalfPlanePoint& a, double s, geofix::Rng& rng) {
    return geofix::random_point_at(h, a, s, rng);
  };
  const auto draw = geofix::halfplane_box_sampler(5, 0.1, 10);
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    geofix::Rng a(seed), b(seed);
    const auto m = geofix::cat0_modulus();
    const bool cont = geofix::uc_implication_check(ch, m, draw, hp_at, a, 2000, 1e-9).passed();
    const bool disc = geofix::discrete_uc_check(ch, geofix::bridge_to_discrete(m), draw, hp_at, b, 2000, 1e-9).passed();
    EXPECT_TRUE(!cont || disc);
  }
}
