#pragma once

#include <cmath>

#include "pedalfinsler/core.hpp"
#include "pedalfinsler/surface_patch.hpp"

namespace pedalfinsler {

/// Sphere (x - k)^2 + y^2 + z^2 = r^2; its pedal about the origin is the
/// limacon surface.
struct SphereSpec {
  double center_offset = 0.0;  // k
  double radius = 1.0;         // r

  SphereSpec(double k, double r) : center_offset(k), radius(r) {
    if (!(r > 0.0) || !(k >= 0.0))
      throw PreconditionViolated("SphereSpec: requires r > 0 and k >= 0");
  }
};

/// Ellipsoid x = k + a sin v cos u, y = b sin v sin u, z = c cos v.
struct EllipsoidSpec {
  double center_offset = 0.0;  // k
  double semi_x = 1.0;         // a
  double semi_y = 1.0;         // b
  double semi_z = 1.0;         // c

  EllipsoidSpec(double k, double a, double b, double c)
      : center_offset(k), semi_x(a), semi_y(b), semi_z(c) {
    if (!(a > 0.0) || !(b > 0.0) || !(c > 0.0) || !(k >= 0.0))
      throw PreconditionViolated("EllipsoidSpec: requires a, b, c > 0 and k >= 0");
  }
};

// ---------------------------------------------------------------------------
// Surface builders (exterior oriented)
// ---------------------------------------------------------------------------

inline SurfacePatch make_surface(const EllipsoidSpec& spec) {
  const double k = spec.center_offset, a = spec.semi_x, b = spec.semi_y, c = spec.semi_z;
  SurfacePatch s;
  s.eval = [=](double u, double v) {
    return Vec3{k + a * std::sin(v) * std::cos(u), b * std::sin(v) * std::sin(u),
                c * std::cos(v)};
  };
  s.du = [=](double u, double v) {
    return Vec3{-a * std::sin(v) * std::sin(u), b * std::sin(v) * std::cos(u), 0.0};
  };
  s.dv = [=](double u, double v) {
    return Vec3{a * std::cos(v) * std::cos(u), b * std::cos(v) * std::sin(u), -c * std::sin(v)};
  };
  s.duu = [=](double u, double v) {
    return Vec3{-a * std::sin(v) * std::cos(u), -b * std::sin(v) * std::sin(u), 0.0};
  };
  s.duv = [=](double u, double v) {
    return Vec3{-a * std::cos(v) * std::sin(u), b * std::cos(v) * std::cos(u), 0.0};
  };
  s.dvv = [=](double u, double v) {
    return Vec3{-a * std::sin(v) * std::cos(u), -b * std::sin(v) * std::sin(u), -c * std::cos(v)};
  };
  s.domain = {0.0, two_pi, 0.0, std::numbers::pi};
  s.orient_exterior({k, 0.0, 0.0});
  return s;
}

inline SurfacePatch make_surface(const SphereSpec& spec) {
  return make_surface(EllipsoidSpec{spec.center_offset, spec.radius, spec.radius, spec.radius});
}

// ---------------------------------------------------------------------------
// Closed-form pedal parametrizations (pedal point at the origin)
// ---------------------------------------------------------------------------

/// Sphere pedal: (r + k cos u sin v) (cos u sin v, sin u sin v, cos v).
inline Vec3 sphere_pedal_closed_form(const SphereSpec& spec, double u, double v) {
  const double sv = std::sin(v), cv = std::cos(v), su = std::sin(u), cu = std::cos(u);
  const double rho = spec.radius + spec.center_offset * cu * sv;
  return {rho * cu * sv, rho * su * sv, rho * cv};
}

/// Ellipsoid pedal with the |S_v x S_u|^2 denominator.
inline Vec3 ellipsoid_pedal_closed_form(const EllipsoidSpec& spec, double u, double v) {
  const double k = spec.center_offset, a = spec.semi_x, b = spec.semi_y, c = spec.semi_z;
  const double sv = std::sin(v), cv = std::cos(v), su = std::sin(u), cu = std::cos(u);
  const double w2 = c * c * b * b * sv * sv * cu * cu + c * c * a * a * sv * sv * su * su +
                    a * a * b * b * cv * cv;
  if (w2 <= eps_regular * eps_regular)
    throw DegenerateSurface("ellipsoid_pedal_closed_form: degenerate at parametrization pole");
  const double m = (k * cu * sv + a) / w2;
  return {b * b * c * c * m * sv * cu, a * b * c * c * m * sv * su, a * b * b * c * m * cv};
}

// ---------------------------------------------------------------------------
// Implicit equations and gradients
// ---------------------------------------------------------------------------

/// f(x,y,z) = x^2+y^2+z^2 - r sqrt(x^2+y^2+z^2) - kx; zero on the limacon
/// surface.  Vanishes spuriously at the origin (same convention as in 2D:
/// membership excludes a small origin ball).
inline double limacon_surface_implicit(const SphereSpec& spec, Vec3 pt) {
  const double q = dot(pt, pt);
  return q - spec.radius * std::sqrt(q) - spec.center_offset * pt.x;
}

inline Vec3 limacon_surface_gradient(const SphereSpec& spec, Vec3 pt) {
  const double rho = norm(pt);
  if (rho <= eps_regular)
    throw DegenerateSurface("limacon_surface_gradient: gradient singular at the origin");
  const double s = 2.0 - spec.radius / rho;
  return {s * pt.x - spec.center_offset, s * pt.y, s * pt.z};
}

/// (x^2+y^2+z^2 - kx)^2 - (a^2 x^2 + b^2 y^2 + c^2 z^2); zero on the
/// ellipsoid-pedal locus.
inline double ellipsoid_pedal_implicit(const EllipsoidSpec& spec, Vec3 pt) {
  const double q = dot(pt, pt) - spec.center_offset * pt.x;
  return q * q - (spec.semi_x * spec.semi_x * pt.x * pt.x +
                  spec.semi_y * spec.semi_y * pt.y * pt.y +
                  spec.semi_z * spec.semi_z * pt.z * pt.z);
}

inline Vec3 ellipsoid_pedal_gradient(const EllipsoidSpec& spec, Vec3 pt) {
  const double q = dot(pt, pt) - spec.center_offset * pt.x;
  return {2.0 * q * (2.0 * pt.x - spec.center_offset) - 2.0 * spec.semi_x * spec.semi_x * pt.x,
          4.0 * q * pt.y - 2.0 * spec.semi_y * spec.semi_y * pt.y,
          4.0 * q * pt.z - 2.0 * spec.semi_z * spec.semi_z * pt.z};
}

// ---------------------------------------------------------------------------
// Closed-form convexity
// ---------------------------------------------------------------------------

/// Sphere pedal strong convexity: r > 2k.
inline bool sphere_pedal_convex(const SphereSpec& spec) {
  return spec.radius > 2.0 * spec.center_offset;
}

/// The factorized convexity expression of the sphere pedal against the
/// implicit gradient: sin^2 v (3Akr + 2k^2 + r^2)(Ak + r)(2Ak + r) with
/// A = cos u sin v.  Same sign as the second-form determinant.
inline double sphere_pedal_convexity_product(const SphereSpec& spec, double u, double v) {
  const double k = spec.center_offset, r = spec.radius;
  const double sv = std::sin(v);
  const double A = std::cos(u) * sv;
  return sv * sv * (3.0 * A * k * r + 2.0 * k * k + r * r) * (A * k + r) * (2.0 * A * k + r);
}

}  // namespace pedalfinsler
