#include "geofix/real_tree.hpp"

#include <algorithm>
#include <cmath>
#include <charconv>
#include <queue>
#include <stdexcept>
#include <unordered_set>

namespace geofix {

namespace {

template <class Scalar>
Scalar parse_scalar(std::string_view text) {
  if constexpr (is_exact_v<Scalar>) {
    return parse_rational(text);
  } else {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
      throw std::invalid_argument("not a number: '" + std::string(text) + "'");
    }
    return value;
  }
}

std::string format_scalar(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

std::string format_scalar(const Rational& x) { return to_string(x); }

}  // namespace

template <class Scalar>
RealTree<Scalar>::RealTree(std::vector<std::string> vertices, const std::vector<EdgeSpec>& edges)
    : labels_(std::move(vertices)) {
  if (labels_.empty()) throw std::invalid_argument("tree needs at least one vertex");
  std::unordered_set<std::string> seen;
  for (const auto& l : labels_) {
    if (l.empty()) throw std::invalid_argument("empty vertex label");
    if (!seen.insert(l).second) throw std::invalid_argument("duplicate vertex label '" + l + "'");
  }
  if (edges.size() + 1 != labels_.size()) {
    throw std::invalid_argument("a tree on " + std::to_string(labels_.size()) + " vertices needs " +
                                std::to_string(labels_.size() - 1) + " edges, got " +
                                std::to_string(edges.size()));
  }
  incident_.assign(labels_.size(), {});
  for (const auto& spec : edges) {
    auto t = find_vertex(spec.tail);
    auto h = find_vertex(spec.head);
    if (!t || !h) {
      throw std::invalid_argument("edge " + spec.tail + "-" + spec.head + " names an unknown vertex");
    }
    if (*t == *h) throw std::invalid_argument("self-loop at '" + spec.tail + "'");
    if (!(spec.length > Scalar(0))) {
      throw std::invalid_argument("edge " + spec.tail + "-" + spec.head + " needs positive length");
    }
    incident_[*t].push_back(edges_.size());
    incident_[*h].push_back(edges_.size());
    edges_.push_back({*t, *h, spec.length});
  }

  // root at vertex 0; BFS also proves connectivity, which with |E| = |V| - 1
  // rules out cycles
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  parent_.assign(labels_.size(), kNone);
  parent_edge_.assign(labels_.size(), kNone);
  depth_.assign(labels_.size(), 0);
  std::vector<bool> visited(labels_.size(), false);
  std::queue<std::size_t> queue;
  queue.push(0);
  visited[0] = true;
  std::size_t reached = 1;
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop();
    for (std::size_t e : incident_[v]) {
      const std::size_t w = edges_[e].tail == v ? edges_[e].head : edges_[e].tail;
      if (visited[w]) continue;
      visited[w] = true;
      ++reached;
      parent_[w] = v;
      parent_edge_[w] = e;
      depth_[w] = depth_[v] + 1;
      queue.push(w);
    }
  }
  if (reached != labels_.size()) throw std::invalid_argument("edge set is not connected");
}

template <class Scalar>
std::optional<std::size_t> RealTree<Scalar>::find_vertex(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

template <class Scalar>
std::optional<std::size_t> RealTree<Scalar>::find_edge(std::size_t a, std::size_t b) const {
  if (a >= labels_.size()) return std::nullopt;
  for (std::size_t e : incident_[a]) {
    if ((edges_[e].tail == a && edges_[e].head == b) || (edges_[e].tail == b && edges_[e].head == a)) {
      return e;
    }
  }
  return std::nullopt;
}

template <class Scalar>
typename RealTree<Scalar>::Point RealTree<Scalar>::vertex_point(std::size_t v) const {
  if (v >= labels_.size()) throw std::out_of_range("vertex index out of range");
  Point p;
  p.vertex = v;
  return p;
}

template <class Scalar>
typename RealTree<Scalar>::Point RealTree<Scalar>::vertex_point(std::string_view label) const {
  auto v = find_vertex(label);
  if (!v) throw std::out_of_range("unknown vertex '" + std::string(label) + "'");
  return vertex_point(*v);
}

template <class Scalar>
typename RealTree<Scalar>::Point RealTree<Scalar>::canonical(std::size_t e,
                                                              Scalar offset_from_tail) const {
  const Edge& ed = edges_.at(e);
  if (offset_from_tail <= Scalar(0)) return vertex_point(ed.tail);
  if (offset_from_tail >= ed.length) return vertex_point(ed.head);
  Point p;
  p.edge = e;
  p.offset = std::move(offset_from_tail);
  return p;
}

template <class Scalar>
typename RealTree<Scalar>::Point RealTree<Scalar>::edge_point(std::string_view u,
                                                               std::string_view v,
                                                               const Scalar& offset_from_u) const {
  auto a = find_vertex(u);
  auto b = find_vertex(v);
  if (!a || !b) throw std::out_of_range("unknown vertex in edge position");
  auto e = find_edge(*a, *b);
  if (!e) {
    throw std::out_of_range("no edge " + std::string(u) + "-" + std::string(v));
  }
  const Edge& ed = edges_[*e];
  if (offset_from_u < Scalar(0) || offset_from_u > ed.length) {
    throw std::out_of_range("offset outside edge " + std::string(u) + "-" + std::string(v));
  }
  return canonical(*e, ed.tail == *a ? offset_from_u : Scalar(ed.length - offset_from_u));
}

template <class Scalar>
void RealTree<Scalar>::validate(const Point& p) const {
  if (p.is_vertex()) {
    if (p.vertex >= labels_.size()) throw std::out_of_range("position is not on the tree");
    return;
  }
  if (p.edge >= edges_.size()) throw std::out_of_range("position is not on the tree");
  if (!(p.offset > Scalar(0)) || !(p.offset < edges_[p.edge].length)) {
    throw std::out_of_range("edge offset must lie strictly inside the edge");
  }
}

template <class Scalar>
std::size_t RealTree<Scalar>::lca(std::size_t a, std::size_t b) const {
  while (depth_[a] > depth_[b]) a = parent_[a];
  while (depth_[b] > depth_[a]) b = parent_[b];
  while (a != b) {
    a = parent_[a];
    b = parent_[b];
  }
  return a;
}

template <class Scalar>
Scalar RealTree<Scalar>::vertex_distance(std::size_t a, std::size_t b) const {
  if (a >= labels_.size() || b >= labels_.size()) throw std::out_of_range("vertex out of range");
  Scalar d(0);
  while (depth_[a] > depth_[b]) {
    d += edges_[parent_edge_[a]].length;
    a = parent_[a];
  }
  while (depth_[b] > depth_[a]) {
    d += edges_[parent_edge_[b]].length;
    b = parent_[b];
  }
  while (a != b) {
    d += edges_[parent_edge_[a]].length;
    d += edges_[parent_edge_[b]].length;
    a = parent_[a];
    b = parent_[b];
  }
  return d;
}

template <class Scalar>
std::vector<std::size_t> RealTree<Scalar>::vertex_path(std::size_t a, std::size_t b) const {
  const std::size_t top = lca(a, b);
  std::vector<std::size_t> up;
  for (std::size_t v = a; v != top; v = parent_[v]) up.push_back(v);
  up.push_back(top);
  std::vector<std::size_t> down;
  for (std::size_t v = b; v != top; v = parent_[v]) down.push_back(v);
  up.insert(up.end(), down.rbegin(), down.rend());
  return up;
}

template <class Scalar>
std::vector<typename RealTree<Scalar>::Exit> RealTree<Scalar>::exits(const Point& p) const {
  validate(p);
  if (p.is_vertex()) return {Exit{p.vertex, Scalar(0)}};
  const Edge& e = edges_[p.edge];
  return {Exit{e.tail, p.offset}, Exit{e.head, Scalar(e.length - p.offset)}};
}

template <class Scalar>
typename RealTree<Scalar>::Route RealTree<Scalar>::best_route(const Point& p, const Point& q) const {
  std::optional<Route> best;
  for (const Exit& a : exits(p)) {
    for (const Exit& b : exits(q)) {
      Scalar total = a.cost + vertex_distance(a.vertex, b.vertex) + b.cost;
      if (!best || total < best->total) best = Route{a, b, std::move(total)};
    }
  }
  return *best;
}

template <class Scalar>
Scalar RealTree<Scalar>::distance(const Point& p, const Point& q) const {
  validate(p);
  validate(q);
  if (!p.is_vertex() && !q.is_vertex() && p.edge == q.edge) return abs_value(Scalar(p.offset - q.offset));
  return best_route(p, q).total;
}

template <class Scalar>
typename RealTree<Scalar>::Point RealTree<Scalar>::along_edge_from(std::size_t e,
                                                                    std::size_t from_vertex,
                                                                    const Scalar& t) const {
  const Edge& ed = edges_[e];
  return canonical(e, ed.tail == from_vertex ? t : Scalar(ed.length - t));
}

template <class Scalar>
typename RealTree<Scalar>::Point RealTree<Scalar>::walk(const Point& p, const Point& q,
                                                         Scalar t) const {
  validate(p);
  validate(q);
  if (t <= Scalar(0)) return p;
  if (!p.is_vertex() && !q.is_vertex() && p.edge == q.edge) {
    const Scalar span = abs_value(Scalar(q.offset - p.offset));
    if (t >= span) return q;
    return canonical(p.edge, q.offset > p.offset ? Scalar(p.offset + t) : Scalar(p.offset - t));
  }
  const Route route = best_route(p, q);
  if (t >= route.total) return q;

  // leg 1: from p to its exit vertex
  if (!p.is_vertex()) {
    if (t < route.from.cost) {
      const Edge& ed = edges_[p.edge];
      return canonical(p.edge, route.from.vertex == ed.tail ? Scalar(p.offset - t)
                                                             : Scalar(p.offset + t));
    }
    t -= route.from.cost;
  }
  // leg 2: the vertex path
  const auto path = vertex_path(route.from.vertex, route.to.vertex);
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const std::size_t e = *find_edge(path[i], path[i + 1]);
    const Scalar& len = edges_[e].length;
    if (t < len) return along_edge_from(e, path[i], t);
    t -= len;
  }
  // leg 3: from q's entry vertex into q's edge
  if (q.is_vertex()) return q;
  if (t >= route.to.cost) return q;
  return along_edge_from(q.edge, route.to.vertex, t);
}

template <class Scalar>
typename RealTree<Scalar>::Point RealTree<Scalar>::combine_exact(const Point& p, const Point& q,
                                                                  const Scalar& lambda) const {
  if (lambda < Scalar(0) || lambda > Scalar(1)) throw std::domain_error("lambda must lie in [0, 1]");
  validate(p);
  validate(q);
  if (lambda == Scalar(0)) return p;
  if (lambda == Scalar(1)) return q;
  return walk(p, q, Scalar(lambda * distance(p, q)));
}

template <class Scalar>
typename RealTree<Scalar>::Point RealTree<Scalar>::combine(const Point& p, const Point& q,
                                                            double lambda) const {
  check_lambda(lambda);
  return combine_exact(p, q, from_double<Scalar>(lambda));
}

template <class Scalar>
typename RealTree<Scalar>::Point RealTree<Scalar>::project_onto_segment(const Point& a,
                                                                         const Point& b,
                                                                         const Point& x) const {
  const Scalar dab = distance(a, b);
  if (dab == Scalar(0)) return a;
  Scalar along = (distance(x, a) + dab - distance(x, b)) / 2;
  if (along < Scalar(0)) along = Scalar(0);
  if (along > dab) along = dab;
  return walk(a, b, along);
}

template <class Scalar>
typename RealTree<Scalar>::Point RealTree<Scalar>::parse_position(std::string_view text) const {
  if (text.starts_with("v:")) return vertex_point(text.substr(2));
  if (text.starts_with("e:")) {
    std::string_view rest = text.substr(2);
    const auto colon = rest.rfind(':');
    if (colon == std::string_view::npos) {
      throw std::invalid_argument("edge position needs 'e:u-v:offset', got '" + std::string(text) + "'");
    }
    const std::string_view pair = rest.substr(0, colon);
    const Scalar offset = parse_scalar<Scalar>(rest.substr(colon + 1));
    // labels may contain '-', so try every split
    for (std::size_t dash = pair.find('-'); dash != std::string_view::npos;
         dash = pair.find('-', dash + 1)) {
      auto a = find_vertex(pair.substr(0, dash));
      auto b = find_vertex(pair.substr(dash + 1));
      if (a && b && find_edge(*a, *b)) return edge_point(pair.substr(0, dash), pair.substr(dash + 1), offset);
    }
    throw std::out_of_range("no edge matches '" + std::string(pair) + "'");
  }
  throw std::invalid_argument("tree position must start with 'v:' or 'e:', got '" + std::string(text) + "'");
}

template <class Scalar>
std::string RealTree<Scalar>::format(const Point& p) const {
  validate(p);
  if (p.is_vertex()) return "v:" + labels_[p.vertex];
  const Edge& e = edges_[p.edge];
  return "e:" + labels_[e.tail] + "-" + labels_[e.head] + ":" + format_scalar(p.offset);
}

template class RealTree<double>;
template class RealTree<Rational>;

template <class Scalar>
PointSampler<RealTree<Scalar>> tree_sampler(const RealTree<Scalar>& tree) {
  return [&tree](Rng& rng) {
    if (tree.edge_count() == 0 || rng.index(5) == 0) {
      return tree.vertex_point(static_cast<std::size_t>(rng.index(tree.vertex_count())));
    }
    const std::size_t e = static_cast<std::size_t>(rng.index(tree.edge_count()));
    return tree.canonical(e, Scalar(from_double<Scalar>(rng.uniform()) * tree.edge(e).length));
  };
}

template <class Scalar>
TreePoint<Scalar> random_point_at(const RealTree<Scalar>& tree, const TreePoint<Scalar>& a,
                                  double s, Rng& rng) {
  std::vector<std::size_t> far;
  std::size_t farthest = 0;
  double farthest_d = -1.0;
  for (std::size_t v = 0; v < tree.vertex_count(); ++v) {
    const double d = to_double(tree.distance(a, tree.vertex_point(v)));
    if (d >= s) far.push_back(v);
    if (d > farthest_d) {
      farthest_d = d;
      farthest = v;
    }
  }
  const std::size_t target = far.empty() ? farthest : far[rng.index(far.size())];
  const auto q = tree.vertex_point(target);
  return tree.walk(a, q, from_double<Scalar>(s));
}

template <class Scalar>
bool tree_segment_glue_check(const RealTree<Scalar>& tree, const TreePoint<Scalar>& y,
                             const TreePoint<Scalar>& x, const TreePoint<Scalar>& z, std::size_t k,
                             double tol) {
  if (k < 2) throw std::invalid_argument("glue check resolution must be at least 2");
  const Scalar eps = scalar_tol<Scalar>(tol);
  ConvexStructure<RealTree<Scalar>> cs(tree);
  const auto yx = segment_points(cs, y, x, k);
  const auto xz = segment_points(cs, x, z, k);

  // [y,x] and [x,z] share a segment of length L >= 0 from x, and samples p, q
  // at distances a, c from x have d(p, q) = a + c - 2 min(a, c, L). Any pair
  // away from x therefore exposes an overlap, so pairing yx[k - i] with xz[i]
  // (both i/k of the way out from x) loses nothing against all k^2 pairs.
  for (std::size_t i = 1; i <= k; ++i) {
    const auto& p = yx[k - i];
    const auto& q = xz[i];
    const Scalar px = tree.distance(p, x);
    const Scalar xq = tree.distance(x, q);
    if (px <= eps || xq <= eps) continue;
    if (tree.distance(p, q) < px + xq - eps) return true;
  }

  const Scalar dyz = tree.distance(y, z);
  if (abs_value(Scalar(dyz - (tree.distance(y, x) + tree.distance(x, z)))) > eps) return false;
  if (dyz == Scalar(0)) return true;
  auto on_geodesic = [&](const TreePoint<Scalar>& w) {
    const auto expected = tree.walk(y, z, tree.distance(y, w));
    return tree.distance(expected, w) <= eps;
  };
  return std::all_of(yx.begin(), yx.end(), on_geodesic) &&
         std::all_of(xz.begin(), xz.end(), on_geodesic);
}

Rational tree_four_point_exact(const ExactTree& tree, std::span<const TreePoint<Rational>> positions,
                               const HyperbolicityOptions& opts) {
  for (const auto& p : positions) tree.validate(p);
  const auto sample = ExactSample::from_points(tree, positions, {}, 0.0);
  return four_point_delta(sample, opts).delta;
}

template PointSampler<FloatTree> tree_sampler(const FloatTree&);
template PointSampler<ExactTree> tree_sampler(const ExactTree&);
template TreePoint<double> random_point_at(const FloatTree&, const TreePoint<double>&, double, Rng&);
template TreePoint<Rational> random_point_at(const ExactTree&, const TreePoint<Rational>&, double,
                                             Rng&);
template bool tree_segment_glue_check(const FloatTree&, const TreePoint<double>&,
                                      const TreePoint<double>&, const TreePoint<double>&,
                                      std::size_t, double);
template bool tree_segment_glue_check(const ExactTree&, const TreePoint<Rational>&,
                                      const TreePoint<Rational>&, const TreePoint<Rational>&,
                                      std::size_t, double);

}  // namespace geofix
