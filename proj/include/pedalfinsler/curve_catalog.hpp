#pragma once

#include <cmath>

#include "pedalfinsler/core.hpp"
#include "pedalfinsler/plane_curve.hpp"

namespace pedalfinsler {

/// Circle (x - k)^2 + y^2 = a^2; its pedal about the origin is the limacon
/// r = a + k cos(theta).
struct CircleSpec {
  double center_offset = 0.0;  // k
  double radius = 1.0;         // a

  CircleSpec(double k, double a) : center_offset(k), radius(a) {
    if (!(a > 0.0) || !(k >= 0.0))
      throw PreconditionViolated("CircleSpec: requires a > 0 and k >= 0");
  }
};

/// Ellipse x = k + a cos t, y = b sin t.
struct EllipseSpec {
  double center_offset = 0.0;  // k
  double semi_x = 1.0;         // a
  double semi_y = 1.0;         // b

  EllipseSpec(double k, double a, double b) : center_offset(k), semi_x(a), semi_y(b) {
    if (!(a > 0.0) || !(b > 0.0) || !(k > 0.0) || a == b)
      throw PreconditionViolated("EllipseSpec: requires a, b, k > 0 and a != b");
  }
};

/// Unit circle with pedal point (a, 0).
struct OffsetPedalCircleSpec {
  double pedal_abscissa = 0.0;  // a

  explicit OffsetPedalCircleSpec(double a) : pedal_abscissa(a) {
    if (!std::isfinite(a)) throw PreconditionViolated("OffsetPedalCircleSpec: a must be finite");
  }
};

// ---------------------------------------------------------------------------
// Curve builders
// ---------------------------------------------------------------------------

inline PlaneCurve make_circle(Vec2 center, double radius) {
  return PlaneCurve(
      [=](double t) { return Vec2{center.x + radius * std::cos(t), center.y + radius * std::sin(t)}; },
      [=](double t) { return Vec2{-radius * std::sin(t), radius * std::cos(t)}; },
      [=](double t) { return Vec2{-radius * std::cos(t), -radius * std::sin(t)}; });
}

inline PlaneCurve make_curve(const CircleSpec& spec) {
  return make_circle({spec.center_offset, 0.0}, spec.radius);
}

inline PlaneCurve make_curve(const EllipseSpec& spec) {
  const double k = spec.center_offset, a = spec.semi_x, b = spec.semi_y;
  return PlaneCurve(
      [=](double t) { return Vec2{k + a * std::cos(t), b * std::sin(t)}; },
      [=](double t) { return Vec2{-a * std::sin(t), b * std::cos(t)}; },
      [=](double t) { return Vec2{-a * std::cos(t), -b * std::sin(t)}; });
}

inline PlaneCurve make_curve(const OffsetPedalCircleSpec&) { return make_circle({0.0, 0.0}, 1.0); }

inline PedalConfig2 pedal_at_origin() { return PedalConfig2{Vec2{0.0, 0.0}}; }

inline PedalConfig2 pedal_config(const OffsetPedalCircleSpec& spec) {
  return PedalConfig2{Vec2{spec.pedal_abscissa, 0.0}};
}

// ---------------------------------------------------------------------------
// Closed-form pedal parametrizations
// ---------------------------------------------------------------------------

/// Limacon point (a + k cos t)(cos t, sin t).
inline Vec2 limacon_point(const CircleSpec& spec, double t) {
  const double r = spec.radius + spec.center_offset * std::cos(t);
  return {r * std::cos(t), r * std::sin(t)};
}

/// Pedal of the unit circle about (a, 0):
/// ((1 - a cos t) cos t + a, (1 - a cos t) sin t).
inline Vec2 offset_circle_pedal_point(const OffsetPedalCircleSpec& spec, double t) {
  const double a = spec.pedal_abscissa;
  const double r = 1.0 - a * std::cos(t);
  return {r * std::cos(t) + a, r * std::sin(t)};
}

/// Pedal of the ellipse about the origin:
/// (b^2 (k cos t + a) cos t, a b (k cos t + a) sin t) / |c'|^2.
inline Vec2 ellipse_pedal_point(const EllipseSpec& spec, double t) {
  const double k = spec.center_offset, a = spec.semi_x, b = spec.semi_y;
  const double s = std::sin(t), c = std::cos(t);
  const double speed2 = a * a * s * s + b * b * c * c;
  const double m = b * (k * c + a) / speed2;
  return {m * b * c, m * a * s};
}

// ---------------------------------------------------------------------------
// Implicit equations
// ---------------------------------------------------------------------------

/// (x^2 + y^2 - kx)^2 - a^2 (x^2 + y^2); zero on the limacon locus.
/// Vanishes spuriously at the origin, so membership tests must exclude a
/// small ball around it.
inline double limacon_implicit(const CircleSpec& spec, Vec2 pt) {
  const double q = pt.x * pt.x + pt.y * pt.y;
  const double lhs = q - spec.center_offset * pt.x;
  return lhs * lhs - spec.radius * spec.radius * q;
}

/// (x^2 + y^2 - kx)^2 - (a^2 x^2 + b^2 y^2); zero on the ellipse-pedal locus
/// (same origin caveat as the limacon).
inline double ellipse_pedal_implicit(const EllipseSpec& spec, Vec2 pt) {
  const double q = pt.x * pt.x + pt.y * pt.y;
  const double lhs = q - spec.center_offset * pt.x;
  return lhs * lhs - (spec.semi_x * spec.semi_x * pt.x * pt.x + spec.semi_y * spec.semi_y * pt.y * pt.y);
}

// ---------------------------------------------------------------------------
// Closed-form convexity predicates
// ---------------------------------------------------------------------------

/// Limacon strong convexity: a > 2k (strict; the boundary a = 2k is excluded).
inline bool limacon_convex(const CircleSpec& spec) {
  return spec.radius > 2.0 * spec.center_offset;
}

/// Offset-circle pedal strong convexity: -1/2 < a < 1/2.
inline bool offset_pedal_convex(const OffsetPedalCircleSpec& spec) {
  return spec.pedal_abscissa > -0.5 && spec.pedal_abscissa < 0.5;
}

/// Squared right-hand side of the ellipse-pedal sufficient bound:
/// b^2 > (3ak + a^2 - 2k^2)/2.  Negative means the bound is vacuous.
inline double ellipse_pedal_bound_sq(double a, double k) {
  return 0.5 * (3.0 * a * k + a * a - 2.0 * k * k);
}

/// Sufficient condition for strong convexity of the ellipse pedal under the
/// simplifying assumption a > b:  a > b > sqrt((3ak + a^2 - 2k^2)/2).
/// One-directional: a `true` result guarantees the numeric verdict convex;
/// `false` does not imply non-convexity.
inline bool ellipse_pedal_convex_sufficient(const EllipseSpec& spec) {
  if (!(spec.semi_x > spec.semi_y))
    throw PreconditionViolated("ellipse_pedal_convex_sufficient: requires a > b");
  const double bound_sq = ellipse_pedal_bound_sq(spec.semi_x, spec.center_offset);
  return bound_sq < 0.0 || spec.semi_y * spec.semi_y > bound_sq;
}

}  // namespace pedalfinsler
