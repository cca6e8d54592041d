#pragma once

#include "geofix/euclidean.hpp"
#include "geofix/fixed_point.hpp"
#include "geofix/half_plane.hpp"
#include "geofix/harness/config.hpp"
#include "geofix/real_tree.hpp"

#include <string_view>
#include <variant>
#include <vector>

namespace geofix::harness {

using AnySpace = std::variant<EuclideanSpace, HalfPlane, FloatTree, ExactTree>;

/// Space spec:
///   {"type": "euclidean", "dim": n}
///   {"type": "halfplane"}
///   {"type": "tree", "file": path, "exact": bool} or inline "vertices"/"edges".
/// Builds the space; *resolved receives the space config with defaults filled in.
AnySpace make_space(const json& spec, const RunContext& ctx, json* resolved = nullptr);

/// Default samplers. Optional spec keys: "half_width" (euclidean, default 10);
/// "u_half_width", "v_min", "v_max" (halfplane, defaults 5, 0.1, 10).
PointSampler<EuclideanSpace> default_sampler(const EuclideanSpace& s, const json& spec);
PointSampler<HalfPlane> default_sampler(const HalfPlane& s, const json& spec);
template <class Scalar>
PointSampler<RealTree<Scalar>> default_sampler(const RealTree<Scalar>& s, const json&) {
  return tree_sampler(s);
}

/// Points: euclidean [x1, ..., xn]; halfplane [u, v] or {"u", "v"}; tree
/// "v:label" or "e:u-v:offset".
EuclideanPoint parse_point(const EuclideanSpace& s, const json& j);
HalfPlanePoint parse_point(const HalfPlane& s, const json& j);
template <class Scalar>
TreePoint<Scalar> parse_point(const RealTree<Scalar>& s, const json& j) {
  if (!j.is_string()) throw ConfigError("tree positions must be strings");
  try {
    return s.parse_position(j.get<std::string>());
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
}

json point_json(const EuclideanSpace& s, const EuclideanPoint& p);
json point_json(const HalfPlane& s, const HalfPlanePoint& p);
template <class Scalar>
json point_json(const RealTree<Scalar>& s, const TreePoint<Scalar>& p) {
  return s.format(p);
}

/// A registry map together with points it is known to fix.
template <class Space>
struct RegisteredMap {
  NonexpansiveMap<Space> map;
  std::vector<typename Space::Point> fixed_points;
};

/// Registry: "negate", "halve", "rotate:<angle>" on euclidean (rotate needs
/// dim >= 2) and halfplane; "halve" and "tree-fold:<vertex>" on trees.
/// On the half-plane "negate" is the point reflection z -> -1/z through i and
/// "halve" is the geodesic contraction x -> W(i, x, 1/2). On trees "halve"
/// contracts toward the first vertex and "tree-fold:v" projects onto the
/// geodesic from the first vertex to v. The map keeps a pointer to s.
RegisteredMap<EuclideanSpace> make_map(const EuclideanSpace& s, std::string_view name);
RegisteredMap<HalfPlane> make_map(const HalfPlane& s, std::string_view name);
RegisteredMap<FloatTree> make_map(const FloatTree& s, std::string_view name);

}  // namespace geofix::harness
