#pragma once

#include "geofix/random.hpp"
#include "geofix/space.hpp"

#include <string>

namespace geofix {

struct HalfPlanePoint {
  double u = 0.0;
  double v = 1.0;
  friend bool operator==(const HalfPlanePoint&, const HalfPlanePoint&) = default;
};

/// The hyperbolic upper half-plane {(u, v) : v > 0} with curvature -1.
///
/// combine() moves the pair to the hyperboloid model, where the geodesic
/// through P and Q at arclength t is (sinh(D - t) P + sinh(t) Q) / sinh(D),
/// and maps back. Only the light-cone coordinates 1/v and u/v are needed for
/// the way back, and both combine linearly without cancellation.
class HalfPlane {
 public:
  using Point = HalfPlanePoint;
  using Scalar = double;

  std::string label() const { return "halfplane"; }

  double distance(const Point& p, const Point& q) const;
  Point combine(const Point& p, const Point& q, double lambda) const;

  /// The base point i = (0, 1).
  Point origin() const { return {0.0, 1.0}; }

  /// Elliptic isometry rotating by angle about i. angle = pi is the point
  /// reflection z -> -1/z.
  Point rotate_about_origin(const Point& p, double angle) const;

  void validate(const Point& p) const;
};

/// u uniform in [-u_half_width, u_half_width], v log-uniform in [v_min, v_max].
PointSampler<HalfPlane> halfplane_box_sampler(double u_half_width, double v_min, double v_max);

/// A point at hyperbolic distance s from a in a uniformly random direction.
HalfPlanePoint random_point_at(const HalfPlane& space, const HalfPlanePoint& a, double s,
                               Rng& rng);

}  // namespace geofix
