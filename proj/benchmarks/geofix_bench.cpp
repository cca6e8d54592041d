#include "geofix/euclidean.hpp"
#include "geofix/fixed_point.hpp"
#include "geofix/half_plane.hpp"
#include "geofix/metric_core.hpp"
#include "geofix/real_tree.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

namespace {

using namespace geofix;

FloatTree comb_tree(std::size_t n) {
  std::vector<std::string> labels;
  std::vector<FloatTree::EdgeSpec> edges;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("v" + std::to_string(i));
  for (std::size_t i = 1; i < n; ++i) {
    edges.push_back({labels[(i - 1) / 2], labels[i], 0.5 + static_cast<double>(i % 7) / 7});
  }
  return FloatTree(labels, edges);
}

void BM_FourPointDelta(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  EuclideanSpace e(3);
  Rng rng(1);
  const auto draw = euclidean_box_sampler(e, 10.0);
  std::vector<EuclideanPoint> pts;
  for (std::size_t i = 0; i < n; ++i) pts.push_back(draw(rng));
  const auto s = FiniteSample::from_points(e, std::span<const EuclideanPoint>(pts));
  for (auto _ : state) benchmark::DoNotOptimize(four_point_delta(s).delta);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FourPointDelta)->RangeMultiplier(2)->Range(8, 64)->Complexity([](benchmark::IterationCount n) { return std::pow(static_cast<double>(n), 4); });

void BM_FourPointDeltaExactTree(benchmark::State& state) {
  const ExactTree t({"c", "a", "b", "d"}, {{"c", "a", Rational(1, 3)}, {"c", "b", Rational(2, 7)}, {"c", "d", 1}});
  Rng rng(2);
  const auto draw = tree_sampler(t);
  std::vector<TreePoint<Rational>> pts;
  for (int i = 0; i < state.range(0); ++i) pts.push_back(draw(rng));
  for (auto _ : state) benchmark::DoNotOptimize(tree_four_point_exact(t, pts));
}
BENCHMARK(BM_FourPointDeltaExactTree)->Arg(8)->Arg(12);

void BM_TreeCombine(benchmark::State& state) {
  const auto t = comb_tree(static_cast<std::size_t>(state.range(0)));
  Rng rng(3);
  const auto draw = tree_sampler(t);
  std::vector<TreePoint<double>> pts;
  for (int i = 0; i < 256; ++i) pts.push_back(draw(rng));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(t.combine(pts[i % 256], pts[(i + 1) % 256], 0.37));
    ++i;
  }
}
BENCHMARK(BM_TreeCombine)->Arg(16)->Arg(256)->Arg(4096);

void BM_HalfPlaneCombine(benchmark::State& state) {
  HalfPlane h;
  Rng rng(4);
  const auto draw = halfplane_box_sampler(5.0, 0.1, 10.0);
  std::vector<HalfPlanePoint> pts;
  for (int i = 0; i < 256; ++i) pts.push_back(draw(rng));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(h.combine(pts[i % 256], pts[(i + 1) % 256], 0.37));
    ++i;
  }
}
BENCHMARK(BM_HalfPlaneCombine);

void BM_KmIterateHalfPlane(benchmark::State& state) {
  HalfPlane h;
  ConvexStructure cs(h);
  const NonexpansiveMap<HalfPlane> rot{[&h](const HalfPlanePoint& p) { return h.rotate_about_origin(p, 1.0); },
                                       "rotate:1"};
  KmOptions opts;
  opts.keep_last = 1;
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(km_iterate(cs, rot, {2.0, 0.5}, LambdaSchedule::constant(0.5), n, opts));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_KmIterateHalfPlane)->Arg(1 << 12)->Arg(1 << 16);

void BM_RateBound(benchmark::State& state) {
  const auto s = LambdaSchedule({0.2, 0.7, 0.1}, 0.5);
  const auto theta = make_theta(s);
  const auto m = cat0_modulus();
  for (auto _ : state) benchmark::DoNotOptimize(rate_bound(0.01, theta, 1.0, m));
}
BENCHMARK(BM_RateBound);

}  // namespace
BENCHMARK_MAIN();
