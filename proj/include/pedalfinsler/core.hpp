#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace pedalfinsler {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Tolerances shared across the library.
inline constexpr double eps_regular = 1e-9;     // minimum tangent/normal magnitude
inline constexpr double eps_denominator = 1e-10; // degenerate-denominator cutoff (normalized)
inline constexpr double eps_origin = 1e-8;      // "passes through origin" distance
inline constexpr double eps_pd = 1e-8;          // positive-definiteness margin (vs trace scale)

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

struct DegenerateCurve : std::runtime_error {
  explicit DegenerateCurve(const std::string& what) : std::runtime_error(what) {}
};

struct DegenerateSurface : std::runtime_error {
  explicit DegenerateSurface(const std::string& what) : std::runtime_error(what) {}
};

struct DegenerateDenominator : std::runtime_error {
  explicit DegenerateDenominator(const std::string& what) : std::runtime_error(what) {}
};

struct OutsideDomain : std::runtime_error {
  explicit OutsideDomain(const std::string& what) : std::runtime_error(what) {}
};

struct NumericalBreakdown : std::runtime_error {
  explicit NumericalBreakdown(const std::string& what) : std::runtime_error(what) {}
};

struct PreconditionViolated : std::invalid_argument {
  explicit PreconditionViolated(const std::string& what) : std::invalid_argument(what) {}
};

struct MissingImplicitForm : std::runtime_error {
  explicit MissingImplicitForm(const std::string& what) : std::runtime_error(what) {}
};

struct FamilyMismatch : std::invalid_argument {
  explicit FamilyMismatch(const std::string& what) : std::invalid_argument(what) {}
};

struct NoSignChange : std::runtime_error {
  explicit NoSignChange(const std::string& what) : std::runtime_error(what) {}
};

// ---------------------------------------------------------------------------
// Small vectors
// ---------------------------------------------------------------------------

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2() = default;
  constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
  constexpr Vec2 operator-() const { return {-x, -y}; }
};

constexpr Vec2 operator*(double s, Vec2 v) { return v * s; }

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross2(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }
inline double norm_inf(Vec2 v) { return std::max(std::abs(v.x), std::abs(v.y)); }
constexpr Vec2 rotate90ccw(Vec2 v) { return {-v.y, v.x}; }

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3() = default;
  constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

  constexpr Vec3 operator+(Vec3 o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr Vec3 operator-(Vec3 o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
  constexpr Vec3 operator-() const { return {-x, -y, -z}; }
};

constexpr Vec3 operator*(double s, Vec3 v) { return v * s; }

constexpr double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
constexpr Vec3 cross(Vec3 a, Vec3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(Vec3 v) { return std::sqrt(dot(v, v)); }
inline double norm_inf(Vec3 v) { return std::max({std::abs(v.x), std::abs(v.y), std::abs(v.z)}); }

inline double norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double c : v) s += c * c;
  return std::sqrt(s);
}

// ---------------------------------------------------------------------------
// Shared convexity report
// ---------------------------------------------------------------------------

enum class Verdict { convex, not_convex, degenerate };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::convex: return "convex";
    case Verdict::not_convex: return "not_convex";
    case Verdict::degenerate: return "degenerate";
  }
  return "unknown";
}

/// Outcome of a convexity engine.  `min_value` is the minimized margin
/// (curvature functional, Gauss-curvature proxy, or normalized eigenvalue);
/// `argmin` holds the parameter(s) or direction where it was attained.
struct ConvexityReport {
  Verdict verdict = Verdict::degenerate;
  double min_value = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> argmin;
  long samples_used = 0;
};

// ---------------------------------------------------------------------------
// 1-D numeric helpers
// ---------------------------------------------------------------------------

/// Golden-section minimization of f on [lo, hi] (f need not be smooth;
/// assumes a single local minimum inside the bracket).
inline double golden_minimize(const std::function<double(double)>& f, double lo, double hi,
                              double tol = 1e-12, int max_iter = 200) {
  constexpr double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < max_iter && (b - a) > tol * (1.0 + std::abs(a) + std::abs(b)); ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

/// Bisection for a sign change of f on [lo, hi].  Requires f(lo) and f(hi)
/// of opposite (nonzero) sign.
inline double bisect_root(const std::function<double(double)>& f, double lo, double hi,
                          double tol = 1e-14, int max_iter = 200) {
  double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0))
    throw NoSignChange("bisect_root: same sign at both endpoints");
  for (int i = 0; i < max_iter && (hi - lo) > tol * (1.0 + std::abs(lo) + std::abs(hi)); ++i) {
    double mid = 0.5 * (lo + hi);
    double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace pedalfinsler
