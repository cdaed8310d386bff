#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "pedalfinsler/core.hpp"
#include "pedalfinsler/jacobi.hpp"

namespace pedalfinsler {

enum class NormFamily {
  slope2,         // pedal of a circle about the origin
  ellipse2,       // pedal of an ellipse about the origin
  slope3,         // pedal of a sphere about the origin
  ellipsoid3,     // pedal of an ellipsoid about the origin
  slope_n,        // pedal of an (n-1)-sphere about the origin
  ellipsoid_n,    // pedal of an (n-1)-ellipsoid about the origin
  offset_circle2  // pedal of the unit circle about (a, 0)
};

inline const char* to_string(NormFamily f) {
  switch (f) {
    case NormFamily::slope2: return "slope2";
    case NormFamily::ellipse2: return "ellipse2";
    case NormFamily::slope3: return "slope3";
    case NormFamily::ellipsoid3: return "ellipsoid3";
    case NormFamily::slope_n: return "slope_n";
    case NormFamily::ellipsoid_n: return "ellipsoid_n";
    case NormFamily::offset_circle2: return "offset_circle2";
  }
  return "unknown";
}

/// Positively 1-homogeneous norm obtained by reading the pedal-locus implicit
/// equation as F(y) = 1.  Slope-type families evaluate in closed form
/// F = |y|^2 / (r |y| + k y1); the ellipse/ellipsoid families replace r |y|
/// with sqrt(sum a_i^2 y_i^2); the offset-circle family solves its quartic
/// implicit equation along the ray of y.
class MinkowskiNorm {
 public:
  NormFamily family = NormFamily::slope2;
  int dim = 2;

  // family parameters (used as applicable)
  double radial = 1.0;             // a (2D circle) or r (sphere)
  double offset = 0.0;             // k, or the pedal abscissa a for offset_circle2
  std::vector<double> axes;        // semi-axes for ellipse/ellipsoid families

  /// Denominator of the family formula at y (a 1-homogeneous function whose
  /// positivity cone is the norm's domain).  The offset-circle norm has no
  /// conic denominator; it reports |y|.
  double denominator(const std::vector<double>& y) const {
    require_dim(y);
    switch (family) {
      case NormFamily::slope2:
      case NormFamily::slope3:
      case NormFamily::slope_n:
        return radial * norm(y) + offset * y[0];
      case NormFamily::ellipse2:
      case NormFamily::ellipsoid3:
      case NormFamily::ellipsoid_n: {
        double s = 0.0;
        for (int i = 0; i < dim; ++i) s += axes[i] * axes[i] * y[i] * y[i];
        return std::sqrt(s) + offset * y[0];
      }
      case NormFamily::offset_circle2:
        return norm(y);
    }
    return 0.0;
  }

  bool in_domain(const std::vector<double>& y) const {
    const double mag = norm(y);
    return mag > 0.0 && denominator(y) > eps_denominator * mag;
  }

  double eval(const std::vector<double>& y) const {
    const double mag = norm(y);
    if (family == NormFamily::offset_circle2) {
      if (mag <= 0.0) throw OutsideDomain("norm_eval: zero vector");
      return mag / offset_circle_radius(y[0] / mag, y[1] / mag);
    }
    const double den = denominator(y);
    if (!(den > eps_denominator * mag))
      throw OutsideDomain("norm_eval: direction outside the denominator-positive cone");
    return mag * mag / den;
  }

 private:
  void require_dim(const std::vector<double>& y) const {
    if (static_cast<int>(y.size()) != dim)
      throw PreconditionViolated("MinkowskiNorm: vector has wrong dimension");
  }

  /// Radius of the offset-circle pedal locus along the unit direction
  /// (cx, cy), found by bisection on the implicit equation
  /// ((x-a)^2 + y^2 + a(x-a))^2 = (x-a)^2 + y^2.  The locus keeps distance
  /// >= 1 from the origin, so the bracket [0.9, |a| + 1.1] straddles the
  /// single crossing and avoids the spurious zero at the pedal point.
  double offset_circle_radius(double cx, double cy) const {
    const double a = offset;
    auto implicit = [&](double s) {
      const double dx = s * cx - a, dy = s * cy;
      const double q = dx * dx + dy * dy;
      const double lhs = q + a * dx;
      return lhs * lhs - q;
    };
    return bisect_root(implicit, 0.9, std::abs(a) + 1.1, 1e-15);
  }
};

inline double norm_eval(const MinkowskiNorm& norm, const std::vector<double>& y) {
  return norm.eval(y);
}

// ---------------------------------------------------------------------------
// Factories
// ---------------------------------------------------------------------------

inline MinkowskiNorm make_slope_norm(int dim, double radial, double k) {
  if (dim < 2) throw PreconditionViolated("make_slope_norm: dim >= 2 required");
  MinkowskiNorm n;
  n.family = dim == 2 ? NormFamily::slope2 : (dim == 3 ? NormFamily::slope3 : NormFamily::slope_n);
  n.dim = dim;
  n.radial = radial;
  n.offset = k;
  return n;
}

inline MinkowskiNorm make_ellipse_norm(double a, double b, double k) {
  MinkowskiNorm n;
  n.family = NormFamily::ellipse2;
  n.dim = 2;
  n.offset = k;
  n.axes = {a, b};
  return n;
}

inline MinkowskiNorm make_ellipsoid_norm(double a, double b, double c, double k) {
  MinkowskiNorm n;
  n.family = NormFamily::ellipsoid3;
  n.dim = 3;
  n.offset = k;
  n.axes = {a, b, c};
  return n;
}

inline MinkowskiNorm make_ellipsoid_norm_n(std::vector<double> axes, double k) {
  if (axes.size() < 2) throw PreconditionViolated("make_ellipsoid_norm_n: need >= 2 axes");
  MinkowskiNorm n;
  n.family = NormFamily::ellipsoid_n;
  n.dim = static_cast<int>(axes.size());
  n.offset = k;
  n.axes = std::move(axes);
  return n;
}

inline MinkowskiNorm make_offset_circle_norm(double a) {
  if (!(std::abs(a) < 0.85))
    throw PreconditionViolated("make_offset_circle_norm: |a| < 0.85 required");
  MinkowskiNorm n;
  n.family = NormFamily::offset_circle2;
  n.dim = 2;
  n.offset = a;
  return n;
}

// ---------------------------------------------------------------------------
// Fundamental tensor
// ---------------------------------------------------------------------------

/// Half the Hessian of F^2 at a base direction.
struct FundamentalTensor {
  SymMatrix g;
  std::vector<double> base_y;
};

/// Finite-difference fundamental tensor g_ij = (1/2) d^2 F^2 / dy_i dy_j,
/// with 5-point O(h^4) stencils at relative step `rel_step` * |y|.
inline FundamentalTensor fundamental_tensor(const MinkowskiNorm& norm,
                                            const std::vector<double>& y,
                                            double rel_step = 1e-3) {
  const int n = norm.dim;
  const double mag = pedalfinsler::norm(y);
  if (!(mag > 0.0)) throw PreconditionViolated("fundamental_tensor: |y| > 0 required");
  if (!norm.in_domain(y)) throw OutsideDomain("fundamental_tensor: y outside norm domain");

  const double h = rel_step * mag;
  auto G = [&](const std::vector<double>& z) {
    const double f = norm.eval(z);
    return f * f;
  };
  auto shifted = [&](int i, double si, int j, double sj) {
    std::vector<double> z = y;
    z[i] += si * h;
    if (j >= 0) z[j] += sj * h;
    return G(z);
  };

  FundamentalTensor out;
  out.g = SymMatrix(n);
  out.base_y = y;
  const double g0 = G(y);

  for (int i = 0; i < n; ++i) {
    const double d2 = (-shifted(i, -2, -1, 0) + 16.0 * shifted(i, -1, -1, 0) - 30.0 * g0 +
                       16.0 * shifted(i, 1, -1, 0) - shifted(i, 2, -1, 0)) /
                      (12.0 * h * h);
    out.g.at(i, i) = 0.5 * d2;
  }

  const double w[4] = {1.0 / 12.0, -8.0 / 12.0, 8.0 / 12.0, -1.0 / 12.0};
  const double off[4] = {-2.0, -1.0, 1.0, 2.0};
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double acc = 0.0;
      for (int p = 0; p < 4; ++p)
        for (int q = 0; q < 4; ++q) acc += w[p] * w[q] * shifted(i, off[p], j, off[q]);
      const double gij = 0.5 * acc / (h * h);
      out.g.at(i, j) = gij;
      out.g.at(j, i) = gij;
    }
  }

  double scale = std::max(out.g.max_abs(), 1e-300);
  for (double v : out.g.a)
    if (!std::isfinite(v))
      throw NumericalBreakdown("fundamental_tensor: non-finite Hessian entry");
  // symmetrize (the stencil is symmetric by construction; the averaging and
  // off-symmetry guard keep the contract explicit)
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (std::abs(out.g.at(i, j) - out.g.at(j, i)) > 1e-4 * scale)
        throw NumericalBreakdown("fundamental_tensor: off-symmetry exceeds tolerance");
      const double avg = 0.5 * (out.g.at(i, j) + out.g.at(j, i));
      out.g.at(i, j) = avg;
      out.g.at(j, i) = avg;
    }
  return out;
}

/// Positive-definiteness test via cyclic Jacobi eigenvalues.
struct PdResult {
  bool positive_definite = false;
  double min_eigenvalue = 0.0;
  double trace_scale = 0.0;
};

inline PdResult is_pd(const FundamentalTensor& t) {
  const auto eigs = jacobi_eigenvalues(t.g);
  PdResult r;
  r.min_eigenvalue = eigs.front();
  double abs_trace = 0.0;
  for (int i = 0; i < t.g.n; ++i) abs_trace += std::abs(t.g.at(i, i));
  r.trace_scale = std::max(abs_trace / t.g.n, 1e-300);
  r.positive_definite = r.min_eigenvalue > eps_pd * r.trace_scale;
  return r;
}

// ---------------------------------------------------------------------------
// Direction sampling and the convexity scan
// ---------------------------------------------------------------------------

namespace detail {

/// Quasi-uniform unit directions: uniform angles (n=2), Fibonacci sphere
/// (n=3), normalized Gaussian samples (n>3).  The signed coordinate axes are
/// always included.
inline std::vector<std::vector<double>> sample_directions(int dim, int n_dirs,
                                                          unsigned seed = 0) {
  std::vector<std::vector<double>> dirs;
  dirs.reserve(static_cast<size_t>(n_dirs) + 2 * dim);

  for (int i = 0; i < dim; ++i) {
    std::vector<double> e(dim, 0.0);
    e[i] = 1.0;
    dirs.push_back(e);
    e[i] = -1.0;
    dirs.push_back(e);
  }

  if (dim == 2) {
    for (int i = 0; i < n_dirs; ++i) {
      const double t = two_pi * static_cast<double>(i) / n_dirs;
      dirs.push_back({std::cos(t), std::sin(t)});
    }
  } else if (dim == 3) {
    const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < n_dirs; ++i) {
      const double z = 1.0 - 2.0 * (i + 0.5) / n_dirs;
      const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double phi = golden_angle * i;
      dirs.push_back({rho * std::cos(phi), rho * std::sin(phi), z});
    }
  } else {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int i = 0; i < n_dirs; ++i) {
      std::vector<double> d(dim);
      double mag = 0.0;
      do {
        for (double& c : d) c = gauss(rng);
        mag = norm(d);
      } while (mag < 1e-6);
      for (double& c : d) c /= mag;
      dirs.push_back(std::move(d));
    }
  }
  return dirs;
}

/// Local pattern-search minimization of a function of a unit direction,
/// moving along an orthonormal tangent basis and renormalizing.
inline std::pair<double, std::vector<double>> refine_on_sphere(
    const std::function<double(const std::vector<double>&)>& f, std::vector<double> d,
    double f0, double step = 0.05, double step_min = 1e-7) {
  const int n = static_cast<int>(d.size());

  auto tangent_basis = [&](const std::vector<double>& dir) {
    std::vector<std::vector<double>> basis;
    for (int i = 0; i < n && static_cast<int>(basis.size()) < n - 1; ++i) {
      std::vector<double> v(n, 0.0);
      v[i] = 1.0;
      double proj = 0.0;
      for (int j = 0; j < n; ++j) proj += v[j] * dir[j];
      for (int j = 0; j < n; ++j) v[j] -= proj * dir[j];
      for (const auto& b : basis) {
        double p = 0.0;
        for (int j = 0; j < n; ++j) p += v[j] * b[j];
        for (int j = 0; j < n; ++j) v[j] -= p * b[j];
      }
      const double mag = norm(v);
      if (mag > 1e-8) {
        for (double& c : v) c /= mag;
        basis.push_back(std::move(v));
      }
    }
    return basis;
  };

  double best = f0;
  while (step > step_min) {
    bool improved = false;
    for (const auto& t : tangent_basis(d)) {
      for (double sgn : {1.0, -1.0}) {
        std::vector<double> cand(n);
        for (int i = 0; i < n; ++i) cand[i] = d[i] + sgn * step * t[i];
        const double mag = norm(cand);
        for (double& c : cand) c /= mag;
        const double v = f(cand);
        if (v < best) {
          best = v;
          d = cand;
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return {best, d};
}

}  // namespace detail

/// Scan positive-definiteness of the fundamental tensor over quasi-uniform
/// directions; the worst direction found is sharpened by a local search
/// before the verdict.  A direction where the denominator cone is breached
/// (the norm fails to be defined on all of R^n \ {0}) yields not_convex.
inline ConvexityReport norm_convexity_scan(const MinkowskiNorm& norm, int n_dirs = 1024,
                                           unsigned seed = 0) {
  if (n_dirs < 64) throw PreconditionViolated("norm_convexity_scan: n_dirs >= 64 required");

  const auto dirs = detail::sample_directions(norm.dim, n_dirs, seed);

  auto den_margin = [&](const std::vector<double>& d) { return norm.denominator(d); };
  auto pd_margin = [&](const std::vector<double>& d) {
    try {
      const PdResult r = is_pd(fundamental_tensor(norm, d));
      return r.min_eigenvalue / r.trace_scale;
    } catch (const OutsideDomain&) {
      return -1.0;
    } catch (const NumericalBreakdown&) {
      return -1.0;
    }
  };

  double den_min = std::numeric_limits<double>::infinity();
  std::vector<double> den_argmin;
  double pd_min = std::numeric_limits<double>::infinity();
  std::vector<double> pd_argmin;

  for (const auto& d : dirs) {
    const double dm = den_margin(d);
    if (dm < den_min) {
      den_min = dm;
      den_argmin = d;
    }
    if (dm > eps_denominator) {
      const double pm = pd_margin(d);
      if (pm < pd_min) {
        pd_min = pm;
        pd_argmin = d;
      }
    }
  }

  ConvexityReport report;
  report.samples_used = static_cast<long>(dirs.size());

  if (norm.family != NormFamily::offset_circle2) {
    auto [den_ref, den_dir] = detail::refine_on_sphere(den_margin, den_argmin, den_min);
    if (den_ref <= eps_denominator) {
      report.verdict = Verdict::not_convex;
      report.min_value = std::min(pd_min, 0.0);
      report.argmin = den_dir;
      return report;
    }
  }

  if (!std::isfinite(pd_min)) {
    report.verdict = Verdict::degenerate;
    return report;
  }

  auto [pd_ref, pd_dir] = detail::refine_on_sphere(pd_margin, pd_argmin, pd_min);
  report.min_value = pd_ref;
  report.argmin = pd_dir;
  report.verdict = pd_ref > eps_pd ? Verdict::convex : Verdict::not_convex;
  return report;
}

/// Maximum of |F(sample) - 1| over pedal-locus samples belonging to
/// `sampler_family`.  Throws FamilyMismatch when the samples come from a
/// different family than the norm encodes.
inline double indicatrix_consistency(const MinkowskiNorm& norm, NormFamily sampler_family,
                                     const std::vector<std::vector<double>>& samples) {
  if (norm.family != sampler_family)
    throw FamilyMismatch("indicatrix_consistency: sampler family does not match the norm");
  double worst = 0.0;
  for (const auto& p : samples) worst = std::max(worst, std::abs(norm.eval(p) - 1.0));
  return worst;
}

}  // namespace pedalfinsler
