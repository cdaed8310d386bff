#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "pedalfinsler/core.hpp"
#include "pedalfinsler/plane_curve.hpp"

namespace pedalfinsler {

/// Orthogonal projection of the pedal point onto the tangent line at t:
/// p(t) = <c - r0, N> N + r0.
inline Vec2 pedal_eval(const PlaneCurve& curve, const PedalConfig2& cfg, double t) {
  const FrenetData2 f = frenet(curve, t);
  const Vec2 c = curve.eval(t);
  return dot(c - cfg.pedal_point, f.normal) * f.normal + cfg.pedal_point;
}

/// Closed-form derivative of the pedal curve:
/// p'(t) = k_c |c'| [ <r0 - c, T> N + <r0 - c, N> T ].
inline Vec2 pedal_d1(const PlaneCurve& curve, const PedalConfig2& cfg, double t) {
  const FrenetData2 f = frenet(curve, t);
  const Vec2 w = cfg.pedal_point - curve.eval(t);
  return f.kappa * f.speed * (dot(w, f.tangent) * f.normal + dot(w, f.normal) * f.tangent);
}

namespace detail {

/// Pedal position and its first/second parameter derivatives by 5-point
/// central differences with one Richardson extrapolation level.
struct PedalJet {
  Vec2 p;
  Vec2 dp;
  Vec2 ddp;
  double stencil_amplitude = 0.0;  // max |p(t+s) - p(t)| over the stencil
  double step = 0.0;
};

inline PedalJet pedal_jet(const PlaneCurve& curve, const PedalConfig2& cfg, double t,
                          double step_factor = 2e-4) {
  const double h = step_factor * curve.period();
  auto at = [&](double s) { return pedal_eval(curve, cfg, t + s); };

  const Vec2 p0 = at(0.0);
  const Vec2 ph = at(h), pmh = at(-h);
  const Vec2 p2h = at(2.0 * h), pm2h = at(-2.0 * h);
  const Vec2 p4h = at(4.0 * h), pm4h = at(-4.0 * h);

  auto d1_5pt = [](Vec2 m2, Vec2 m1, Vec2 p1, Vec2 p2, double step) {
    return (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * step);
  };
  auto d2_5pt = [](Vec2 m2, Vec2 m1, Vec2 c0, Vec2 p1, Vec2 p2, double step) {
    return (-1.0 * m2 + 16.0 * m1 - 30.0 * c0 + 16.0 * p1 - p2) / (12.0 * step * step);
  };

  // O(h^4) stencils at steps h and 2h, extrapolated once; the doubled-step
  // pair keeps the cancellation noise of the base step instead of quadrupling
  // it the way a half-step pair would.
  const Vec2 d1_h = d1_5pt(pm2h, pmh, ph, p2h, h);
  const Vec2 d1_2h = d1_5pt(pm4h, pm2h, p2h, p4h, 2.0 * h);
  const Vec2 d2_h = d2_5pt(pm2h, pmh, p0, ph, p2h, h);
  const Vec2 d2_2h = d2_5pt(pm4h, pm2h, p0, p2h, p4h, 2.0 * h);

  PedalJet jet;
  jet.p = p0;
  jet.dp = (16.0 * d1_h - d1_2h) / 15.0;
  jet.ddp = (16.0 * d2_h - d2_2h) / 15.0;
  jet.step = h;
  for (Vec2 q : {ph, pmh, p2h, pm2h, p4h, pm4h})
    jet.stencil_amplitude = std::max(jet.stencil_amplitude, norm(q - p0));
  return jet;
}

}  // namespace detail

/// Curvature-type convexity functional of the pedal curve.
///
/// Returns sign(p x p') * (p' x p'') / |p'|^2, computed numerically from
/// pedal_eval.  The sign equals that of the strong-convexity ratio
/// (p' x p'')/(p x p'); on a limacon parametrized by polar angle the value
/// reduces to (a^2 + 3ak cos t + 2k^2)/(a^2 + 2ak cos t + k^2).
///
/// Throws DegenerateDenominator when the radial direction is tangent to the
/// pedal (p x p' vanishing after normalization) or when the pedal has a cusp
/// at t (|p'| collapsing).
inline double convexity_functional(const PlaneCurve& curve, const PedalConfig2& cfg, double t) {
  const detail::PedalJet jet = detail::pedal_jet(curve, cfg, t);

  const double speed = norm(jet.dp);
  // Cusp detector: the finite-difference derivative should move the point by
  // about |p'| h over the stencil; orders of magnitude less means collapse.
  if (speed * jet.step <= 1e-9 * jet.stencil_amplitude || jet.stencil_amplitude == 0.0)
    throw DegenerateDenominator("convexity_functional: pedal speed collapsed (cusp)");

  const double p_mag = norm(jet.p);
  if (p_mag <= 1e-9 * jet.stencil_amplitude / jet.step)
    throw DegenerateDenominator("convexity_functional: pedal point at origin");

  const double radial = cross2(jet.p, jet.dp);
  if (std::abs(radial) <= eps_denominator * norm_inf(jet.p) * norm_inf(jet.dp))
    throw DegenerateDenominator("convexity_functional: radial direction tangent to pedal");

  const double value = cross2(jet.dp, jet.ddp) / (speed * speed);
  return radial > 0.0 ? value : -value;
}

/// Classification of the pedal curve against the origin.
struct OriginClassification {
  bool passes_origin = false;
  std::optional<double> witness_t;  // parameter where |pedal| attains its minimum
  double min_distance = 0.0;
};

namespace detail {

/// Dense-grid minimum of a periodic function with golden-section refinement
/// around the best grid sample.
inline std::pair<double, double> refined_min(const std::function<double(double)>& f,
                                             double period, int n_grid) {
  double best = f(0.0);
  double best_t = 0.0;
  for (int i = 1; i < n_grid; ++i) {
    const double t = period * static_cast<double>(i) / n_grid;
    const double v = f(t);
    if (v < best) {
      best = v;
      best_t = t;
    }
  }
  const double dt = period / n_grid;
  const double t_star = golden_minimize(f, best_t - dt, best_t + dt, 1e-13);
  const double v_star = f(t_star);
  if (v_star < best) {
    best = v_star;
    best_t = t_star;
  }
  return {best, best_t};
}

}  // namespace detail

/// Decides whether the pedal curve passes through the origin.  The verdict is
/// grounded in the dense-grid minimum of |pedal_eval| (refined by
/// golden-section), which covers every way a tangent-line foot can land on
/// the origin, including tangent lines from an exterior origin.
inline OriginClassification origin_classification(const PlaneCurve& curve,
                                                  const PedalConfig2& cfg, int n_grid = 4096) {
  auto dist = [&](double t) { return norm(pedal_eval(curve, cfg, t)); };
  const auto [dmin, tmin] = detail::refined_min(dist, curve.period(), n_grid);
  OriginClassification out;
  out.min_distance = dmin;
  out.passes_origin = dmin <= eps_origin;
  if (out.passes_origin) out.witness_t = tmin;
  return out;
}

/// Grid verdict on strong convexity of the pedal curve around the origin.
///
/// Samples the convexity functional on a uniform grid; a convex verdict
/// requires every sample positive, no degenerate denominators, and the pedal
/// to actually enclose the origin once (winding number one and minimum
/// distance to the origin above the origin threshold) -- the latter two are
/// the global failure modes of the strong-convexity ratio that a uniform grid
/// cannot see through sign alone.
inline ConvexityReport is_strongly_convex(const PlaneCurve& curve, const PedalConfig2& cfg,
                                          int n_samples = 2048) {
  if (n_samples < 64) throw PreconditionViolated("is_strongly_convex: n_samples >= 64 required");

  const double period = curve.period();
  double fmin = std::numeric_limits<double>::infinity();
  double argmin_t = 0.0;
  bool any_degenerate = false;

  double dmin = std::numeric_limits<double>::infinity();
  double dmin_t = 0.0;
  double winding_sum = 0.0;
  double prev_angle = 0.0;

  for (int i = 0; i < n_samples; ++i) {
    const double t = period * static_cast<double>(i) / n_samples;
    Vec2 p;
    try {
      const double v = convexity_functional(curve, cfg, t);
      if (v < fmin) {
        fmin = v;
        argmin_t = t;
      }
      p = pedal_eval(curve, cfg, t);
    } catch (const DegenerateDenominator&) {
      any_degenerate = true;
      p = pedal_eval(curve, cfg, t);
    }

    const double d = norm(p);
    if (d < dmin) {
      dmin = d;
      dmin_t = t;
    }
    const double angle = std::atan2(p.y, p.x);
    if (i > 0) {
      double delta = angle - prev_angle;
      while (delta > std::numbers::pi) delta -= two_pi;
      while (delta < -std::numbers::pi) delta += two_pi;
      winding_sum += delta;
    }
    prev_angle = angle;
  }
  {
    // close the loop back to the first sample
    const Vec2 p0 = pedal_eval(curve, cfg, 0.0);
    double delta = std::atan2(p0.y, p0.x) - prev_angle;
    while (delta > std::numbers::pi) delta -= two_pi;
    while (delta < -std::numbers::pi) delta += two_pi;
    winding_sum += delta;
  }

  ConvexityReport report;
  report.samples_used = n_samples;

  // refine the origin distance around its grid argmin
  auto dist = [&](double t) { return norm(pedal_eval(curve, cfg, t)); };
  const double dt = period / n_samples;
  const double t_star = golden_minimize(dist, dmin_t - dt, dmin_t + dt, 1e-13);
  const double d_star = std::min(dmin, dist(t_star));

  const double winding = winding_sum / two_pi;
  const bool encloses_once = d_star > eps_origin && std::abs(winding - 1.0) < 0.25;

  if (!encloses_once) {
    report.verdict = Verdict::not_convex;
    report.min_value = std::min(std::isfinite(fmin) ? fmin : 0.0, 0.0);
    report.argmin = {d_star <= eps_origin ? (d_star < dmin ? t_star : dmin_t) : argmin_t};
    return report;
  }
  if (any_degenerate) {
    report.verdict = Verdict::degenerate;
    report.min_value = std::isfinite(fmin) ? fmin : std::numeric_limits<double>::quiet_NaN();
    report.argmin = {argmin_t};
    return report;
  }

  // near-boundary verdicts are sharpened before being issued
  if (std::abs(fmin) < 1e-6) {
    auto f = [&](double t) { return convexity_functional(curve, cfg, t); };
    try {
      const double t_ref = golden_minimize(f, argmin_t - dt, argmin_t + dt, 1e-13);
      const double v_ref = f(t_ref);
      if (v_ref < fmin) {
        fmin = v_ref;
        argmin_t = t_ref;
      }
    } catch (const DegenerateDenominator&) {
      any_degenerate = true;
    }
  }

  report.verdict = any_degenerate ? Verdict::degenerate
                                  : (fmin > 0.0 ? Verdict::convex : Verdict::not_convex);
  report.min_value = fmin;
  report.argmin = {argmin_t};
  return report;
}

}  // namespace pedalfinsler
