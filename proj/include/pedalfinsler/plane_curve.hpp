#pragma once

#include <cmath>
#include <functional>
#include <utility>

#include "pedalfinsler/core.hpp"

namespace pedalfinsler {

/// A regular closed plane curve with analytic position/velocity/acceleration
/// evaluators.  The constructor verifies closedness and orients the
/// parametrization counterclockwise (reversing it if the signed area is
/// negative), which fixes the sign convention of the normal and curvature.
class PlaneCurve {
 public:
  using EvalFn = std::function<Vec2(double)>;

  PlaneCurve(EvalFn eval, EvalFn d1, EvalFn d2, double period = two_pi)
      : eval_(std::move(eval)), d1_(std::move(d1)), d2_(std::move(d2)), period_(period) {
    if (!(period_ > 0.0)) throw PreconditionViolated("PlaneCurve: period must be positive");
    check_closed();
    orient_ccw();
  }

  Vec2 eval(double t) const { return eval_(map(t)); }
  Vec2 d1(double t) const { return reversed_ ? -d1_(map(t)) : d1_(map(t)); }
  Vec2 d2(double t) const { return d2_(map(t)); }
  double period() const { return period_; }

 private:
  double map(double t) const { return reversed_ ? period_ - t : t; }

  void check_closed() const {
    const Vec2 dp = eval_(0.0) - eval_(period_);
    const Vec2 dv = d1_(0.0) - d1_(period_);
    const double scale = 1.0 + norm(eval_(0.0)) + norm(d1_(0.0));
    if (norm(dp) > 1e-12 * scale || norm(dv) > 1e-12 * scale)
      throw PreconditionViolated("PlaneCurve: curve is not closed over its period");
  }

  void orient_ccw() {
    // signed area by the trapezoid rule on (x y' - y x')/2
    const int n = 1024;
    double area = 0.0;
    for (int i = 0; i < n; ++i) {
      const double t = period_ * static_cast<double>(i) / n;
      const Vec2 c = eval_(t);
      const Vec2 v = d1_(t);
      area += cross2(c, v);
    }
    area *= 0.5 * period_ / n;
    if (area < 0.0) reversed_ = true;
  }

  EvalFn eval_, d1_, d2_;
  double period_;
  bool reversed_ = false;
};

/// Pedal point in the plane.
struct PedalConfig2 {
  Vec2 pedal_point{0.0, 0.0};

  PedalConfig2() = default;
  explicit PedalConfig2(Vec2 p) : pedal_point(p) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
      throw PreconditionViolated("PedalConfig2: pedal point must be finite");
  }
};

/// Frenet frame data at a parameter value: unit tangent, unit normal
/// (tangent rotated 90 degrees counterclockwise), speed, signed curvature.
struct FrenetData2 {
  Vec2 tangent;
  Vec2 normal;
  double speed = 0.0;
  double kappa = 0.0;
};

inline FrenetData2 frenet(const PlaneCurve& curve, double t) {
  const Vec2 v = curve.d1(t);
  const double speed = norm(v);
  if (speed <= eps_regular)
    throw DegenerateCurve("frenet: |c'(t)| below regularity threshold");
  FrenetData2 f;
  f.tangent = v / speed;
  f.normal = rotate90ccw(f.tangent);
  f.speed = speed;
  f.kappa = dot(curve.d2(t), f.normal) / (speed * speed);
  return f;
}

}  // namespace pedalfinsler
