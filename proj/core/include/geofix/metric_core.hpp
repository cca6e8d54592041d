#pragma once

#include "geofix/scalar.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace geofix {

/// Thrown when a sample is larger than the configured enumeration cap.
class SampleTooLarge : public std::length_error {
 public:
  SampleTooLarge(std::size_t size, std::size_t cap)
      : std::length_error("sample of " + std::to_string(size) +
                          " points exceeds the enumeration cap of " + std::to_string(cap)),
        size_(size),
        cap_(cap) {}
  std::size_t size() const { return size_; }
  std::size_t cap() const { return cap_; }

 private:
  std::size_t size_;
  std::size_t cap_;
};

struct HyperbolicityOptions {
  std::size_t max_points = 64;
  double tol = kDefaultTol;
};

using Quadruple = std::array<std::size_t, 4>;

/// A finite pseudo-metric sample: labels plus a symmetric distance matrix with
/// zero diagonal satisfying the triangle inequality up to tol. Duplicate points
/// (zero off-diagonal distances) are allowed.
template <class Scalar>
class BasicFiniteSample {
 public:
  BasicFiniteSample() = default;

  BasicFiniteSample(std::vector<std::string> labels, const std::vector<std::vector<Scalar>>& dist,
                    double tol = kDefaultTol)
      : labels_(std::move(labels)), n_(dist.size()) {
    if (labels_.empty()) {
      for (std::size_t i = 0; i < n_; ++i) labels_.push_back(std::to_string(i));
    }
    if (labels_.size() != n_) {
      throw std::invalid_argument("label count does not match distance matrix size");
    }
    dist_.reserve(n_ * n_);
    for (const auto& row : dist) {
      if (row.size() != n_) throw std::invalid_argument("distance matrix is not square");
      dist_.insert(dist_.end(), row.begin(), row.end());
    }
    validate(scalar_tol<Scalar>(tol));
  }

  /// Builds the sample from points of any metric space.
  template <class Space>
  static BasicFiniteSample from_points(const Space& space,
                                       std::span<const typename Space::Point> points,
                                       std::vector<std::string> labels = {},
                                       double tol = kDefaultTol) {
    std::vector<std::vector<Scalar>> d(points.size(), std::vector<Scalar>(points.size()));
    for (std::size_t i = 0; i < points.size(); ++i) {
      for (std::size_t j = i + 1; j < points.size(); ++j) {
        d[i][j] = d[j][i] = Scalar(space.distance(points[i], points[j]));
      }
    }
    return BasicFiniteSample(std::move(labels), d, tol);
  }

  std::size_t size() const { return n_; }
  const std::vector<std::string>& labels() const { return labels_; }

  const Scalar& operator()(std::size_t i, std::size_t j) const { return dist_[i * n_ + j]; }

  const Scalar& at(std::size_t i, std::size_t j) const {
    check_index(i);
    check_index(j);
    return (*this)(i, j);
  }

  void check_index(std::size_t i) const {
    if (i >= n_) {
      throw std::out_of_range("point index " + std::to_string(i) + " out of range for sample of " +
                              std::to_string(n_));
    }
  }

  /// Same sample with points reordered: new point k is old point perm[k].
  BasicFiniteSample permuted(std::span<const std::size_t> perm) const {
    if (perm.size() != n_) throw std::invalid_argument("permutation size mismatch");
    std::vector<std::string> labels(n_);
    std::vector<std::vector<Scalar>> d(n_, std::vector<Scalar>(n_));
    for (std::size_t a = 0; a < n_; ++a) {
      labels[a] = labels_[perm[a]];
      for (std::size_t b = 0; b < n_; ++b) d[a][b] = (*this)(perm[a], perm[b]);
    }
    BasicFiniteSample out;
    out.labels_ = std::move(labels);
    out.n_ = n_;
    for (const auto& row : d) out.dist_.insert(out.dist_.end(), row.begin(), row.end());
    return out;
  }

 private:
  void validate(const Scalar& tol) const {
    for (std::size_t i = 0; i < n_; ++i) {
      if ((*this)(i, i) != Scalar(0)) throw std::invalid_argument("nonzero diagonal entry");
      for (std::size_t j = 0; j < n_; ++j) {
        if ((*this)(i, j) < Scalar(0)) throw std::invalid_argument("negative distance");
        if ((*this)(i, j) != (*this)(j, i)) throw std::invalid_argument("asymmetric distances");
      }
    }
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        for (std::size_t k = 0; k < n_; ++k) {
          if ((*this)(i, k) > (*this)(i, j) + (*this)(j, k) + tol) {
            throw std::invalid_argument("triangle inequality violated at (" + labels_[i] + ", " +
                                        labels_[j] + ", " + labels_[k] + ")");
          }
        }
      }
    }
  }

  std::vector<std::string> labels_;
  std::size_t n_ = 0;
  std::vector<Scalar> dist_;
};

using FiniteSample = BasicFiniteSample<double>;
using ExactSample = BasicFiniteSample<Rational>;

template <class Scalar>
struct FourPointResult {
  Scalar delta{0};
  /// Sorted index set attaining the maximum; empty for samples under 4 points.
  std::optional<Quadruple> witness;
};

template <class Scalar>
struct DoublingReport {
  std::vector<Scalar> per_basepoint;
  Scalar max_delta{0};
  Scalar min_delta{0};
  bool passed = true;
};

template <class Scalar>
struct HyperbolicityReport {
  Scalar delta_four_point{0};
  std::optional<Quadruple> witness;
  std::vector<Scalar> per_basepoint_delta;
  bool doubling_ok = true;
};

/// (x.y)_w = (d(x,w) + d(y,w) - d(x,y)) / 2.
template <class Scalar>
Scalar gromov_product(const BasicFiniteSample<Scalar>& s, std::size_t x, std::size_t y,
                      std::size_t w) {
  return (s.at(x, w) + s.at(y, w) - s.at(x, y)) / 2;
}

/// Largest pairing sum minus the second largest, for one quadruple.
template <class Scalar>
Scalar four_point_defect(const BasicFiniteSample<Scalar>& s, std::size_t i, std::size_t j,
                         std::size_t k, std::size_t l) {
  Scalar a = s(i, j) + s(k, l);
  Scalar b = s(i, k) + s(j, l);
  Scalar c = s(i, l) + s(j, k);
  if (a < b) std::swap(a, b);
  if (b < c) std::swap(b, c);
  if (a < b) std::swap(a, b);
  return a - b;
}

namespace detail {
inline void enforce_cap(std::size_t n, const HyperbolicityOptions& opts) {
  if (n > opts.max_points) throw SampleTooLarge(n, opts.max_points);
}
}  // namespace detail

/// Least delta with d(x,y)+d(z,w) <= max{d(x,z)+d(y,w), d(x,w)+d(y,z)} + 2 delta
/// over all quadruples. Ties keep the lexicographically smallest index set.
template <class Scalar>
FourPointResult<Scalar> four_point_delta(const BasicFiniteSample<Scalar>& s,
                                         const HyperbolicityOptions& opts = {}) {
  const std::size_t n = s.size();
  detail::enforce_cap(n, opts);
  FourPointResult<Scalar> result;
  if (n < 4) return result;
  Scalar best(-1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        for (std::size_t l = k + 1; l < n; ++l) {
          Scalar defect = four_point_defect(s, i, j, k, l);
          if (defect > best) {
            best = std::move(defect);
            result.witness = Quadruple{i, j, k, l};
          }
        }
  result.delta = best / 2;
  return result;
}

/// Least delta >= 0 with (x.y)_w >= min{(x.z)_w, (y.z)_w} - delta for all x, y, z.
template <class Scalar>
Scalar basepoint_delta(const BasicFiniteSample<Scalar>& s, std::size_t w,
                       const HyperbolicityOptions& opts = {}) {
  s.check_index(w);
  const std::size_t n = s.size();
  detail::enforce_cap(n, opts);
  std::vector<Scalar> g(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) g[x * n + y] = (s(x, w) + s(y, w) - s(x, y)) / 2;
  Scalar delta(0);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        const Scalar& xz = g[x * n + z];
        const Scalar& yz = g[y * n + z];
        Scalar gap = (xz < yz ? xz : yz) - g[x * n + y];
        if (gap > delta) delta = std::move(gap);
      }
  return delta;
}

/// Computes delta_w for every base point; passes iff max <= 2 min + tol.
template <class Scalar>
DoublingReport<Scalar> check_basepoint_doubling(const BasicFiniteSample<Scalar>& s,
                                                const HyperbolicityOptions& opts = {}) {
  if (s.size() == 0) throw std::invalid_argument("base-point doubling needs a nonempty sample");
  detail::enforce_cap(s.size(), opts);
  DoublingReport<Scalar> report;
  report.per_basepoint.reserve(s.size());
  for (std::size_t w = 0; w < s.size(); ++w) report.per_basepoint.push_back(basepoint_delta(s, w, opts));
  report.max_delta = *std::max_element(report.per_basepoint.begin(), report.per_basepoint.end());
  report.min_delta = *std::min_element(report.per_basepoint.begin(), report.per_basepoint.end());
  report.passed = report.max_delta <= 2 * report.min_delta + scalar_tol<Scalar>(opts.tol);
  return report;
}

template <class Scalar>
HyperbolicityReport<Scalar> hyperbolicity_report(const BasicFiniteSample<Scalar>& s,
                                                 const HyperbolicityOptions& opts = {}) {
  HyperbolicityReport<Scalar> report;
  auto fp = four_point_delta(s, opts);
  report.delta_four_point = fp.delta;
  report.witness = fp.witness;
  if (s.size() > 0) {
    auto doubling = check_basepoint_doubling(s, opts);
    report.per_basepoint_delta = std::move(doubling.per_basepoint);
    report.doubling_ok = doubling.passed;
  }
  return report;
}

extern template class BasicFiniteSample<double>;
extern template class BasicFiniteSample<Rational>;
extern template FourPointResult<double> four_point_delta(const FiniteSample&,
                                                         const HyperbolicityOptions&);
extern template FourPointResult<Rational> four_point_delta(const ExactSample&,
                                                           const HyperbolicityOptions&);
extern template double basepoint_delta(const FiniteSample&, std::size_t,
                                       const HyperbolicityOptions&);
extern template Rational basepoint_delta(const ExactSample&, std::size_t,
                                         const HyperbolicityOptions&);

}  // namespace geofix
