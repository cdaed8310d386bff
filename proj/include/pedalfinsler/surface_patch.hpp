#pragma once

#include <cmath>
#include <functional>
#include <utility>

#include "pedalfinsler/core.hpp"

namespace pedalfinsler {

/// Parameter rectangle [u0,u1] x [v0,v1].
struct ParamRect {
  double u0 = 0.0, u1 = two_pi;
  double v0 = 0.0, v1 = std::numbers::pi;
};

/// A regular parametric surface patch with analytic first and second
/// partial-derivative evaluators.  `orientation` flips the cross-product
/// normal so that catalog quadrics carry the exterior orientation.
struct SurfacePatch {
  using EvalFn = std::function<Vec3(double, double)>;

  EvalFn eval, du, dv, duu, duv, dvv;
  ParamRect domain;
  double orientation = 1.0;

  /// Fix the orientation so the normal points away from `center` (checked at
  /// the domain midpoint and flipped globally if violated).
  void orient_exterior(Vec3 center) {
    const double um = 0.5 * (domain.u0 + domain.u1);
    const double vm = 0.5 * (domain.v0 + domain.v1);
    const Vec3 n = cross(du(um, vm), dv(um, vm));
    if (dot(n, eval(um, vm) - center) * orientation < 0.0) orientation = -orientation;
  }
};

/// Pedal point in space.
struct PedalConfig3 {
  Vec3 pedal_point{0.0, 0.0, 0.0};

  PedalConfig3() = default;
  explicit PedalConfig3(Vec3 p) : pedal_point(p) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z))
      throw PreconditionViolated("PedalConfig3: pedal point must be finite");
  }
};

/// Unit normal (S_u x S_v normalized, with the patch orientation applied).
inline Vec3 surface_normal(const SurfacePatch& s, double u, double v) {
  const Vec3 n = cross(s.du(u, v), s.dv(u, v)) * s.orientation;
  const double mag = norm(n);
  if (mag <= eps_regular)
    throw DegenerateSurface("surface_normal: |S_u x S_v| below regularity threshold");
  return n / mag;
}

}  // namespace pedalfinsler
