#pragma once

// Independent reference computations used only by tests. Nothing here calls
// into the library's algorithms; inputs are plain matrices and edge lists.

#include "geofix/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

template <class T>
using Matrix = std::vector<std::vector<T>>;

/// Least delta over all ordered 4-tuples (repeats allowed), straight from
/// d(x,y) + d(z,w) <= max{d(x,z) + d(y,w), d(x,w) + d(y,z)} + 2 delta.
template <class T>
T four_point(const Matrix<T>& d) {
  const std::size_t n = d.size();
  T best(0);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        for (std::size_t w = 0; w < n; ++w) {
          const T lhs = d[x][y] + d[z][w];
          const T p = d[x][z] + d[y][w];
          const T q = d[x][w] + d[y][z];
          const T gap = lhs - (p < q ? q : p);
          if (gap > best) best = gap;
        }
  return best / 2;
}

template <class T>
T gromov(const Matrix<T>& d, std::size_t x, std::size_t y, std::size_t w) {
  return (d[x][w] + d[y][w] - d[x][y]) / 2;
}

/// Least delta >= 0 with (x.y)_w >= min{(x.z)_w, (y.z)_w} - delta, by triple
/// enumeration.
template <class T>
T basepoint(const Matrix<T>& d, std::size_t w) {
  const std::size_t n = d.size();
  T best(0);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        const T a = gromov(d, x, z, w);
        const T b = gromov(d, y, z, w);
        const T gap = (a < b ? a : b) - gromov(d, x, y, w);
        if (gap > best) best = gap;
      }
  return best;
}

inline double euclid(const std::vector<double>& a, const std::vector<double>& b) {
  long double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const long double t = static_cast<long double>(a[i]) - b[i];
    s += t * t;
  }
  return static_cast<double>(std::sqrt(s));
}

/// Half-plane distance from the arccosh form, in long double.
inline double halfplane(double u1, double v1, double u2, double v2) {
  const long double du = static_cast<long double>(u1) - u2;
  const long double dv = static_cast<long double>(v1) - v2;
  const long double arg = 1.0L + (du * du + dv * dv) / (2.0L * v1 * v2);
  return static_cast<double>(std::acosh(arg));
}

/// Weighted tree given by labelled edges, measured by Floyd-Warshall on the
/// graph obtained by subdividing every edge at the requested positions.
template <class T>
class TreeOracle {
 public:
  struct Edge {
    std::string u, v;
    T length;
  };
  /// A vertex label, or a point at `offset` from u on edge (u, v).
  struct Position {
    std::string u;
    std::string v;  // empty for a vertex
    T offset{};
  };

  explicit TreeOracle(std::vector<Edge> edges) : edges_(std::move(edges)) {}

  /// Pairwise distances between the positions.
  Matrix<T> distances(const std::vector<Position>& pos) const {
    std::map<std::string, std::size_t> node;
    auto id = [&](const std::string& key) {
      auto [it, inserted] = node.emplace(key, node.size());
      return it->second;
    };
    for (const auto& e : edges_) {
      id("v:" + e.u);
      id("v:" + e.v);
    }
    // per edge: sorted offsets from e.u of the positions lying on it
    std::vector<std::vector<std::pair<T, std::size_t>>> stops(edges_.size());
    std::vector<std::size_t> pos_node;
    for (std::size_t i = 0; i < pos.size(); ++i) {
      const auto& p = pos[i];
      if (p.v.empty()) {
        pos_node.push_back(id("v:" + p.u));
        continue;
      }
      std::size_t e = edge_index(p.u, p.v);
      T off = edges_[e].u == p.u ? p.offset : T(edges_[e].length - p.offset);
      const std::size_t k = id("p:" + std::to_string(i));
      stops[e].push_back({off, k});
      pos_node.push_back(k);
    }
    const std::size_t n = node.size();
    const T inf = big();
    Matrix<T> d(n, std::vector<T>(n, inf));
    for (std::size_t i = 0; i < n; ++i) d[i][i] = T(0);
    auto link = [&](std::size_t a, std::size_t b, const T& w) {
      if (w < d[a][b]) d[a][b] = d[b][a] = w;
    };
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      auto s = stops[e];
      std::sort(s.begin(), s.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      std::size_t prev = node.at("v:" + edges_[e].u);
      T prev_off(0);
      for (const auto& [off, k] : s) {
        link(prev, k, T(off - prev_off));
        prev = k;
        prev_off = off;
      }
      link(prev, node.at("v:" + edges_[e].v), T(edges_[e].length - prev_off));
    }
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
    Matrix<T> out(pos.size(), std::vector<T>(pos.size()));
    for (std::size_t i = 0; i < pos.size(); ++i)
      for (std::size_t j = 0; j < pos.size(); ++j) out[i][j] = d[pos_node[i]][pos_node[j]];
    return out;
  }

 private:
  std::size_t edge_index(const std::string& a, const std::string& b) const {
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      if ((edges_[e].u == a && edges_[e].v == b) || (edges_[e].u == b && edges_[e].v == a)) return e;
    }
    throw std::out_of_range("no edge " + a + "-" + b);
  }
  T big() const {
    T total(1);
    for (const auto& e : edges_) total += e.length;
    return total * 4;
  }

  std::vector<Edge> edges_;
};

/// theta by linear scan: least m with sum_{i<=m} lambda_i (1 - lambda_i) >= n.
template <class LambdaAt>
std::uint64_t theta_scan(LambdaAt lambda_at, std::uint64_t n) {
  if (n == 0) return 0;
  geofix::Rational sum = 0;
  for (std::uint64_t m = 0;; ++m) {
    const geofix::Rational l(lambda_at(m));
    sum += l * (1 - l);
    if (sum >= n) return m;
  }
}

}  // namespace oracle
