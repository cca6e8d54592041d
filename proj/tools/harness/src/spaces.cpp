#include "geofix/harness/spaces.hpp"

#include "geofix/io.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

namespace geofix::harness {

namespace {

template <class Tree>
Tree load_tree(const json& spec, const RunContext& ctx, bool exact) {
  std::string text;
  if (spec.contains("file")) {
    text = read_text_file(resolve_path(ctx, get_string(spec, "file", "")));
  } else if (spec.contains("vertices") && spec.contains("edges")) {
    json inline_tree{{"vertices", spec["vertices"]}, {"edges", spec["edges"]}};
    text = inline_tree.dump();
  } else {
    throw ConfigError("tree space needs \"file\" or inline \"vertices\" and \"edges\"");
  }
  if constexpr (std::is_same_v<Tree, ExactTree>) {
    (void)exact;
    return parse_tree_exact(text);
  } else {
    return parse_tree(text);
  }
}

double parse_angle(std::string_view name, std::string_view prefix) {
  const std::string_view arg = name.substr(prefix.size());
  double angle = 0;
  auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), angle);
  if (arg.empty() || ec != std::errc{} || ptr != arg.data() + arg.size() || !std::isfinite(angle)) {
    throw ConfigError("bad rotation angle in map \"" + std::string(name) + "\"");
  }
  return angle;
}

[[noreturn]] void unsupported(std::string_view map, const std::string& space) {
  throw ConfigError("map \"" + std::string(map) + "\" is not available on " + space);
}

}  // namespace

AnySpace make_space(const json& spec, const RunContext& ctx, json* resolved) {
  if (!spec.is_object()) throw ConfigError("\"space\" must be an object");
  const std::string type = get_string(spec, "type", "");
  json out = spec;
  if (type == "euclidean") {
    const std::uint64_t dim = get_count(spec, "dim", 0);
    if (dim == 0) throw ConfigError("euclidean space needs \"dim\" >= 1");
    out["half_width"] = get_number(spec, "half_width", 10.0);
    if (resolved) *resolved = out;
    return EuclideanSpace(dim);
  }
  if (type == "halfplane") {
    out["u_half_width"] = get_number(spec, "u_half_width", 5.0);
    out["v_min"] = get_number(spec, "v_min", 0.1);
    out["v_max"] = get_number(spec, "v_max", 10.0);
    if (!(out["v_min"].get<double>() > 0 && out["v_max"].get<double>() >= out["v_min"].get<double>())) {
      throw ConfigError("halfplane sampler needs 0 < v_min <= v_max");
    }
    if (resolved) *resolved = out;
    return HalfPlane{};
  }
  if (type == "tree") {
    const bool exact = spec.value("exact", false);
    out["exact"] = exact;
    if (resolved) *resolved = out;
    if (exact) return load_tree<ExactTree>(spec, ctx, true);
    return load_tree<FloatTree>(spec, ctx, false);
  }
  throw ConfigError("unknown space type \"" + type + "\"");
}

PointSampler<EuclideanSpace> default_sampler(const EuclideanSpace& s, const json& spec) {
  return euclidean_box_sampler(s, get_number(spec, "half_width", 10.0));
}

PointSampler<HalfPlane> default_sampler(const HalfPlane&, const json& spec) {
  return halfplane_box_sampler(get_number(spec, "u_half_width", 5.0),
                               get_number(spec, "v_min", 0.1), get_number(spec, "v_max", 10.0));
}

EuclideanPoint parse_point(const EuclideanSpace& s, const json& j) {
  EuclideanPoint p;
  if (j.is_number()) {
    p.push_back(j.get<double>());
  } else if (j.is_array()) {
    for (const auto& x : j) {
      if (!x.is_number()) throw ConfigError("euclidean coordinates must be numbers");
      p.push_back(x.get<double>());
    }
  } else {
    throw ConfigError("euclidean point must be an array of numbers");
  }
  try {
    s.validate(p);
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  return p;
}

HalfPlanePoint parse_point(const HalfPlane& s, const json& j) {
  HalfPlanePoint p;
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    p = {j[0].get<double>(), j[1].get<double>()};
  } else if (j.is_object()) {
    p = {get_number(j, "u"), get_number(j, "v")};
  } else {
    throw ConfigError("halfplane point must be [u, v] or {\"u\": .., \"v\": ..}");
  }
  try {
    s.validate(p);
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  return p;
}

json point_json(const EuclideanSpace&, const EuclideanPoint& p) { return json(p); }

json point_json(const HalfPlane&, const HalfPlanePoint& p) { return json::array({p.u, p.v}); }

RegisteredMap<EuclideanSpace> make_map(const EuclideanSpace& s, std::string_view name) {
  const EuclideanSpace* sp = &s;
  RegisteredMap<EuclideanSpace> r;
  r.fixed_points.push_back(s.origin());
  r.map.label = std::string(name);
  if (name == "negate") {
    r.map.apply = [](const EuclideanPoint& x) {
      EuclideanPoint y(x);
      for (double& c : y) c = -c;
      return y;
    };
  } else if (name == "halve") {
    r.map.apply = [sp](const EuclideanPoint& x) { return sp->combine(sp->origin(), x, 0.5); };
  } else if (name.starts_with("rotate:")) {
    if (s.dim() < 2) unsupported(name, s.label());
    const double angle = parse_angle(name, "rotate:");
    const double c = std::cos(angle), sn = std::sin(angle);
    r.map.apply = [c, sn](const EuclideanPoint& x) {
      EuclideanPoint y(x);
      y[0] = c * x[0] - sn * x[1];
      y[1] = sn * x[0] + c * x[1];
      return y;
    };
  } else {
    unsupported(name, s.label());
  }
  return r;
}

RegisteredMap<HalfPlane> make_map(const HalfPlane& s, std::string_view name) {
  const HalfPlane* sp = &s;
  RegisteredMap<HalfPlane> r;
  r.fixed_points.push_back(s.origin());
  r.map.label = std::string(name);
  if (name == "negate") {
    r.map.apply = [sp](const HalfPlanePoint& p) {
      return sp->rotate_about_origin(p, std::numbers::pi);
    };
  } else if (name == "halve") {
    r.map.apply = [sp](const HalfPlanePoint& p) { return sp->combine(sp->origin(), p, 0.5); };
  } else if (name.starts_with("rotate:")) {
    const double angle = parse_angle(name, "rotate:");
    r.map.apply = [sp, angle](const HalfPlanePoint& p) { return sp->rotate_about_origin(p, angle); };
  } else {
    unsupported(name, s.label());
  }
  return r;
}

RegisteredMap<FloatTree> make_map(const FloatTree& s, std::string_view name) {
  const FloatTree* sp = &s;
  RegisteredMap<FloatTree> r;
  const auto root = s.vertex_point(std::size_t{0});
  r.fixed_points.push_back(root);
  r.map.label = std::string(name);
  if (name == "halve") {
    r.map.apply = [sp, root](const TreePoint<double>& p) { return sp->combine(root, p, 0.5); };
  } else if (name.starts_with("tree-fold:")) {
    const std::string_view label = name.substr(std::string_view("tree-fold:").size());
    const auto v = s.find_vertex(label);
    if (!v) throw ConfigError("tree-fold: unknown vertex \"" + std::string(label) + "\"");
    const auto tip = s.vertex_point(*v);
    r.fixed_points.push_back(tip);
    r.map.apply = [sp, root, tip](const TreePoint<double>& p) {
      return sp->project_onto_segment(root, tip, p);
    };
  } else {
    unsupported(name, s.label());
  }
  return r;
}

}  // namespace geofix::harness
