#pragma once

#include "geofix/geodesic_convexity.hpp"
#include "geofix/metric_core.hpp"
#include "geofix/random.hpp"
#include "geofix/scalar.hpp"
#include "geofix/space.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace geofix {

/// A position on a finite metric tree: a vertex, or a point strictly inside an
/// edge at `offset` from the edge's tail. Offsets 0 and length are always
/// canonicalized to the tail and head vertex, so == is geometric equality.
template <class Scalar>
struct TreePoint {
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  std::size_t vertex = kNone;
  std::size_t edge = kNone;
  Scalar offset{};

  bool is_vertex() const { return edge == kNone; }

  friend bool operator==(const TreePoint& a, const TreePoint& b) {
    if (a.is_vertex() != b.is_vertex()) return false;
    if (a.is_vertex()) return a.vertex == b.vertex;
    return a.edge == b.edge && a.offset == b.offset;
  }
};

/// Weighted finite tree with its path metric. Scalar = Rational gives exact
/// distances and geodesics.
template <class T>
class RealTree {
 public:
  using Scalar = T;
  using Point = TreePoint<T>;

  struct EdgeSpec {
    std::string tail;
    std::string head;
    Scalar length;
  };

  struct Edge {
    std::size_t tail;
    std::size_t head;
    Scalar length;
  };

  RealTree(std::vector<std::string> vertices, const std::vector<EdgeSpec>& edges);

  std::string label() const { return is_exact_v<Scalar> ? "tree-exact" : "tree"; }

  std::size_t vertex_count() const { return labels_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::string& vertex_label(std::size_t v) const { return labels_.at(v); }
  const Edge& edge(std::size_t e) const { return edges_.at(e); }
  const std::vector<std::string>& vertex_labels() const { return labels_; }
  std::optional<std::size_t> find_vertex(std::string_view label) const;
  std::optional<std::size_t> find_edge(std::size_t a, std::size_t b) const;

  Point vertex_point(std::size_t v) const;
  Point vertex_point(std::string_view label) const;
  /// Point on edge u-v at offset measured from u, canonicalized.
  Point edge_point(std::string_view u, std::string_view v, const Scalar& offset_from_u) const;
  Point canonical(std::size_t edge, Scalar offset_from_tail) const;

  /// Throws std::out_of_range when p is not a valid canonical position.
  void validate(const Point& p) const;

  Scalar vertex_distance(std::size_t a, std::size_t b) const;
  Scalar distance(const Point& p, const Point& q) const;

  /// The point at distance lambda d(p, q) from p along the unique geodesic.
  Point combine(const Point& p, const Point& q, double lambda) const;
  Point combine_exact(const Point& p, const Point& q, const Scalar& lambda) const;

  /// The point at arclength t in [0, d(p, q)] from p along [p, q].
  Point walk(const Point& p, const Point& q, Scalar t) const;

  /// Nearest-point projection of x onto the geodesic [a, b]. In a tree it sits
  /// at distance (x.b)_a from a.
  Point project_onto_segment(const Point& a, const Point& b, const Point& x) const;

  /// Vertex sequence of the unique path a -> b.
  std::vector<std::size_t> vertex_path(std::size_t a, std::size_t b) const;

  /// "v:label" or "e:u-v:offset" (offset measured from u).
  Point parse_position(std::string_view text) const;
  std::string format(const Point& p) const;

 private:
  struct Exit {
    std::size_t vertex;
    Scalar cost;
  };
  struct Route {
    Exit from;
    Exit to;
    Scalar total;
  };

  std::size_t lca(std::size_t a, std::size_t b) const;
  std::vector<Exit> exits(const Point& p) const;
  Route best_route(const Point& p, const Point& q) const;
  Point along_edge_from(std::size_t edge, std::size_t from_vertex, const Scalar& t) const;

  std::vector<std::string> labels_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> incident_;
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> parent_edge_;
  std::vector<std::size_t> depth_;
};

using FloatTree = RealTree<double>;
using ExactTree = RealTree<Rational>;

/// Uniform random edge with a uniform offset; one draw in five is a vertex.
template <class Scalar>
PointSampler<RealTree<Scalar>> tree_sampler(const RealTree<Scalar>& tree);

/// A point at distance min(s, reach) from a toward a random vertex, preferring
/// vertices at least s away.
template <class Scalar>
TreePoint<Scalar> random_point_at(const RealTree<Scalar>& tree, const TreePoint<Scalar>& a,
                                  double s, Rng& rng);

/// If sampled [y, x] and [x, z] meet only at x, checks that their union is the
/// geodesic [y, z]: d(y, z) = d(y, x) + d(x, z) and every sample lies on [y, z]
/// at its arclength. Returns true when the premise fails.
template <class Scalar>
bool tree_segment_glue_check(const RealTree<Scalar>& tree, const TreePoint<Scalar>& y,
                             const TreePoint<Scalar>& x, const TreePoint<Scalar>& z,
                             std::size_t k, double tol = kDefaultTol);

/// Exact four-point delta over the listed positions.
Rational tree_four_point_exact(const ExactTree& tree, std::span<const TreePoint<Rational>> positions,
                               const HyperbolicityOptions& opts = {});

extern template class RealTree<double>;
extern template class RealTree<Rational>;

}  // namespace geofix
