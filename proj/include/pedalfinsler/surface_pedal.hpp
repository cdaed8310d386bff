#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "pedalfinsler/core.hpp"
#include "pedalfinsler/surface_patch.hpp"

namespace pedalfinsler {

/// Orthogonal projection of the pedal point onto the tangent plane at (u,v):
/// p(u,v) = <S - r0, N> N + r0.
inline Vec3 pedal_surface_eval(const SurfacePatch& s, const PedalConfig3& cfg, double u,
                               double v) {
  const Vec3 n = surface_normal(s, u, v);
  return dot(s.eval(u, v) - cfg.pedal_point, n) * n + cfg.pedal_point;
}

/// Which (un-normalized) normal the second fundamental form is taken against.
enum class NormalSource { cross_product, implicit_gradient };

/// Second fundamental form entries L = <p_uu, V>, M = <p_uv, V>,
/// N = <p_vv, V> of the pedal patch, and their determinant L N - M^2.
/// The sign of det2 does not depend on the scaling of V.
struct SecondFormEntries {
  double L = 0.0;
  double M = 0.0;
  double N_entry = 0.0;
  double det2 = 0.0;
  Vec3 normal_used;
};

namespace detail {

struct PedalPatchJet {
  Vec3 p, pu, pv, puu, puv, pvv;
};

/// First and second derivatives of the pedal patch by 5-point central
/// differences (steps h_u = h_v = 1e-4 by default).
inline PedalPatchJet pedal_patch_jet(const SurfacePatch& s, const PedalConfig3& cfg, double u,
                                     double v, double h = 1e-4) {
  auto at = [&](double du_, double dv_) { return pedal_surface_eval(s, cfg, u + du_, v + dv_); };

  auto d1 = [&](bool along_u) {
    const Vec3 m2 = along_u ? at(-2 * h, 0) : at(0, -2 * h);
    const Vec3 m1 = along_u ? at(-h, 0) : at(0, -h);
    const Vec3 p1 = along_u ? at(h, 0) : at(0, h);
    const Vec3 p2 = along_u ? at(2 * h, 0) : at(0, 2 * h);
    return (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h);
  };
  auto d2 = [&](bool along_u) {
    const Vec3 m2 = along_u ? at(-2 * h, 0) : at(0, -2 * h);
    const Vec3 m1 = along_u ? at(-h, 0) : at(0, -h);
    const Vec3 p1 = along_u ? at(h, 0) : at(0, h);
    const Vec3 p2 = along_u ? at(2 * h, 0) : at(0, 2 * h);
    return (-1.0 * m2 + 16.0 * m1 - 30.0 * at(0, 0) + 16.0 * p1 - p2) / (12.0 * h * h);
  };

  PedalPatchJet jet;
  jet.p = at(0, 0);
  jet.pu = d1(true);
  jet.pv = d1(false);
  jet.puu = d2(true);
  jet.pvv = d2(false);

  // mixed derivative: product of two 5-point first-derivative stencils
  const double w[4] = {1.0 / 12.0, -8.0 / 12.0, 8.0 / 12.0, -1.0 / 12.0};
  const double off[4] = {-2.0, -1.0, 1.0, 2.0};
  Vec3 mixed{0, 0, 0};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) mixed = mixed + (w[i] * w[j]) * at(off[i] * h, off[j] * h);
  jet.puv = mixed / (h * h);
  return jet;
}

}  // namespace detail

/// Second fundamental form of the pedal patch of `s` at (u,v), against either
/// the cross-product normal of the pedal patch or a registered implicit
/// gradient evaluated at the pedal point.
inline SecondFormEntries second_form(
    const SurfacePatch& s, const PedalConfig3& cfg, double u, double v,
    NormalSource source = NormalSource::cross_product,
    const std::function<Vec3(Vec3)>& implicit_gradient = {}, double h = 1e-4) {
  const detail::PedalPatchJet jet = detail::pedal_patch_jet(s, cfg, u, v, h);

  Vec3 normal;
  if (source == NormalSource::cross_product) {
    normal = cross(jet.pu, jet.pv);
    if (norm(normal) <= eps_regular * eps_regular)
      throw DegenerateSurface("second_form: pedal patch degenerate at (u,v)");
  } else {
    if (!implicit_gradient)
      throw MissingImplicitForm("second_form: implicit_gradient normal requested but none given");
    normal = implicit_gradient(jet.p);
    if (norm(normal) <= eps_regular)
      throw DegenerateSurface("second_form: implicit gradient vanishes at pedal point");
  }

  SecondFormEntries e;
  e.L = dot(jet.puu, normal);
  e.M = dot(jet.puv, normal);
  e.N_entry = dot(jet.pvv, normal);
  e.det2 = e.L * e.N_entry - e.M * e.M;
  e.normal_used = normal;
  return e;
}

/// Gauss-curvature proxy used as the per-point convexity margin:
/// (L N - M^2)/|p_u x p_v|^4 with the cross-product normal, which stays O(1)
/// near parametrization poles where the raw determinant scales away.  The
/// step is wider than second_form's default so that the near-boundary
/// determinant signal (quadratic in the parameter margin) stays above the
/// second-difference cancellation noise.
inline double pedal_gauss_curvature(const SurfacePatch& s, const PedalConfig3& cfg, double u,
                                    double v, double h = 7.5e-4) {
  const detail::PedalPatchJet jet = detail::pedal_patch_jet(s, cfg, u, v, h);
  const Vec3 normal = cross(jet.pu, jet.pv);
  const double area2 = dot(normal, normal);
  if (area2 <= eps_regular * eps_regular)
    throw DegenerateSurface("pedal_gauss_curvature: pedal patch degenerate at (u,v)");
  const double L = dot(jet.puu, normal);
  const double M = dot(jet.puv, normal);
  const double N = dot(jet.pvv, normal);
  return (L * N - M * M) / (area2 * area2);
}

/// Grid counts for surface sampling.
struct GridSpec {
  int nu = 128;
  int nv = 64;
  double v_inset = 1e-3;  // pole inset for spherical-type parametrizations
};

/// Grid verdict on strong convexity of the pedal surface: Gauss curvature
/// positive at every sampled interior point.  u covers the full period,
/// v is inset by `v_inset` away from parametrization poles.
inline ConvexityReport is_strongly_convex_surface(const SurfacePatch& s, const PedalConfig3& cfg,
                                                  GridSpec grid = {}) {
  if (grid.nu < 32 || grid.nv < 32)
    throw PreconditionViolated("is_strongly_convex_surface: grid of at least 32x32 required");

  const double u0 = s.domain.u0, u1 = s.domain.u1;
  const double v0 = s.domain.v0 + grid.v_inset, v1 = s.domain.v1 - grid.v_inset;

  ConvexityReport report;
  report.samples_used = static_cast<long>(grid.nu) * grid.nv;
  double kmin = std::numeric_limits<double>::infinity();
  double umin = u0, vmin = v0;
  bool any_degenerate = false;

  for (int i = 0; i < grid.nu; ++i) {
    const double u = u0 + (u1 - u0) * static_cast<double>(i) / grid.nu;
    for (int j = 0; j < grid.nv; ++j) {
      const double v = v0 + (v1 - v0) * static_cast<double>(j) / (grid.nv - 1);
      try {
        const double k = pedal_gauss_curvature(s, cfg, u, v);
        if (k < kmin) {
          kmin = k;
          umin = u;
          vmin = v;
        }
      } catch (const DegenerateSurface&) {
        any_degenerate = true;
      }
    }
  }

  if (!std::isfinite(kmin)) {
    report.verdict = Verdict::degenerate;
    report.argmin = {umin, vmin};
    return report;
  }

  // Sharpen the grid minimum by a local pattern search before the verdict:
  // the negative region near a convexity boundary can be narrower than one
  // grid cell.
  {
    auto margin = [&](double u, double v) {
      if (v < v0) v = v0;
      if (v > v1) v = v1;
      try {
        return pedal_gauss_curvature(s, cfg, u, v);
      } catch (const DegenerateSurface&) {
        return std::numeric_limits<double>::infinity();
      }
    };
    double du = (u1 - u0) / grid.nu;
    double dv = (v1 - v0) / (grid.nv - 1);
    double u = umin, v = vmin;
    double scale = 1.0;
    while (scale > 1e-3) {
      bool improved = false;
      for (const auto& [su, sv] : {std::pair{1.0, 0.0}, std::pair{-1.0, 0.0},
                                   std::pair{0.0, 1.0}, std::pair{0.0, -1.0},
                                   std::pair{1.0, 1.0}, std::pair{-1.0, -1.0},
                                   std::pair{1.0, -1.0}, std::pair{-1.0, 1.0}}) {
        const double cu = u + su * scale * du;
        const double cv = std::clamp(v + sv * scale * dv, v0, v1);
        const double val = margin(cu, cv);
        if (val < kmin) {
          kmin = val;
          u = cu;
          v = cv;
          improved = true;
        }
      }
      if (!improved) scale *= 0.5;
    }
    umin = u;
    vmin = v;
  }

  report.min_value = kmin;
  report.argmin = {umin, vmin};
  report.verdict = any_degenerate ? Verdict::degenerate
                                  : (kmin > 0.0 ? Verdict::convex : Verdict::not_convex);
  return report;
}

}  // namespace pedalfinsler
