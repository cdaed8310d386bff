#pragma once

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "pedalfinsler/core.hpp"
#include "pedalfinsler/curve_catalog.hpp"
#include "pedalfinsler/minkowski.hpp"
#include "pedalfinsler/plane_pedal.hpp"
#include "pedalfinsler/surface_catalog.hpp"
#include "pedalfinsler/surface_pedal.hpp"

namespace pedalfinsler {

enum class CatalogFamily { limacon, offset_circle, ellipse, sphere, ellipsoid, slope_n };

inline const char* to_string(CatalogFamily f) {
  switch (f) {
    case CatalogFamily::limacon: return "limacon";
    case CatalogFamily::offset_circle: return "offset_circle";
    case CatalogFamily::ellipse: return "ellipse";
    case CatalogFamily::sphere: return "sphere";
    case CatalogFamily::ellipsoid: return "ellipsoid";
    case CatalogFamily::slope_n: return "slope_n";
  }
  return "unknown";
}

enum class SweepEngine { curve_functional, surface_det2, hessian_scan, closed_form };

inline const char* to_string(SweepEngine e) {
  switch (e) {
    case SweepEngine::curve_functional: return "curve_functional";
    case SweepEngine::surface_det2: return "surface_det2";
    case SweepEngine::hessian_scan: return "hessian_scan";
    case SweepEngine::closed_form: return "closed_form";
  }
  return "unknown";
}

/// Named parameters of a catalog family (unused fields ignored).
struct FamilyParams {
  double a = 0.0, b = 0.0, c = 0.0, k = 0.0, r = 0.0;
  int n = 2;

  double& by_name(const std::string& name) {
    if (name == "a") return a;
    if (name == "b") return b;
    if (name == "c") return c;
    if (name == "k") return k;
    if (name == "r") return r;
    throw PreconditionViolated("FamilyParams: unknown parameter '" + name + "'");
  }
};

/// Engine resolution knobs.
struct EngineOptions {
  int curve_samples = 2048;
  GridSpec surface_grid{64, 32, 1e-3};
  int scan_dirs = 1024;
  unsigned seed = 0;
};

struct EngineResult {
  Verdict verdict = Verdict::degenerate;
  double margin = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> argmin;  // parameter(s) or worst direction, when the engine reports one
};

// ---------------------------------------------------------------------------
// Engine dispatch
// ---------------------------------------------------------------------------

inline MinkowskiNorm norm_for(CatalogFamily fam, const FamilyParams& p) {
  switch (fam) {
    case CatalogFamily::limacon: return make_slope_norm(2, p.a, p.k);
    case CatalogFamily::offset_circle: return make_offset_circle_norm(p.a);
    case CatalogFamily::ellipse: return make_ellipse_norm(p.a, p.b, p.k);
    case CatalogFamily::sphere: return make_slope_norm(3, p.r, p.k);
    case CatalogFamily::ellipsoid: return make_ellipsoid_norm(p.a, p.b, p.c, p.k);
    case CatalogFamily::slope_n: return make_slope_norm(p.n, p.r, p.k);
  }
  throw PreconditionViolated("norm_for: unknown family");
}

inline double closed_form_margin(CatalogFamily fam, const FamilyParams& p) {
  switch (fam) {
    case CatalogFamily::limacon: return p.a - 2.0 * p.k;
    case CatalogFamily::offset_circle: return 0.5 - std::abs(p.a);
    case CatalogFamily::sphere:
    case CatalogFamily::slope_n: return p.r - 2.0 * p.k;
    case CatalogFamily::ellipse: {
      if (!(p.a > p.b))
        throw PreconditionViolated("closed_form_margin: ellipse bound requires a > b");
      const double bound_sq = ellipse_pedal_bound_sq(p.a, p.k);
      return bound_sq < 0.0 ? p.b : p.b - std::sqrt(bound_sq);
    }
    case CatalogFamily::ellipsoid:
      throw MissingImplicitForm("closed_form_margin: no closed-form ellipsoid predicate");
  }
  throw PreconditionViolated("closed_form_margin: unknown family");
}

inline EngineResult evaluate_engine(CatalogFamily fam, const FamilyParams& p, SweepEngine engine,
                                    const EngineOptions& opt = {}) {
  auto squash = [](double v) { return v / (1.0 + std::abs(v)); };
  EngineResult out;
  switch (engine) {
    case SweepEngine::curve_functional: {
      ConvexityReport rep;
      if (fam == CatalogFamily::limacon)
        rep = is_strongly_convex(make_curve(CircleSpec{p.k, p.a}), pedal_at_origin(),
                                 opt.curve_samples);
      else if (fam == CatalogFamily::offset_circle) {
        OffsetPedalCircleSpec spec{p.a};
        rep = is_strongly_convex(make_curve(spec), pedal_config(spec), opt.curve_samples);
      } else if (fam == CatalogFamily::ellipse)
        rep = is_strongly_convex(make_curve(EllipseSpec{p.k, p.a, p.b}), pedal_at_origin(),
                                 opt.curve_samples);
      else
        throw PreconditionViolated("curve_functional engine: family is not a plane curve");
      out.verdict = rep.verdict;
      out.margin = squash(rep.min_value);
      out.argmin = rep.argmin;
      return out;
    }
    case SweepEngine::surface_det2: {
      ConvexityReport rep;
      if (fam == CatalogFamily::sphere)
        rep = is_strongly_convex_surface(make_surface(SphereSpec{p.k, p.r}), PedalConfig3{},
                                         opt.surface_grid);
      else if (fam == CatalogFamily::ellipsoid)
        rep = is_strongly_convex_surface(make_surface(EllipsoidSpec{p.k, p.a, p.b, p.c}),
                                         PedalConfig3{}, opt.surface_grid);
      else
        throw PreconditionViolated("surface_det2 engine: family is not a surface");
      out.verdict = rep.verdict;
      out.margin = squash(rep.min_value);
      out.argmin = rep.argmin;
      return out;
    }
    case SweepEngine::hessian_scan: {
      const ConvexityReport rep = norm_convexity_scan(norm_for(fam, p), opt.scan_dirs, opt.seed);
      out.verdict = rep.verdict;
      out.margin = squash(rep.min_value);
      out.argmin = rep.argmin;
      return out;
    }
    case SweepEngine::closed_form: {
      const double m = closed_form_margin(fam, p);
      out.verdict = m > 0.0 ? Verdict::convex : Verdict::not_convex;
      out.margin = squash(m);
      return out;
    }
  }
  throw PreconditionViolated("evaluate_engine: unknown engine");
}

// ---------------------------------------------------------------------------
// Sweeps
// ---------------------------------------------------------------------------

struct SweepSpec {
  CatalogFamily family = CatalogFamily::limacon;
  FamilyParams fixed;
  std::string param = "a";
  double lo = 0.0;
  double hi = 1.0;
  int resolution = 16;
  SweepEngine engine = SweepEngine::curve_functional;
  EngineOptions options;
};

struct SweepRow {
  double value = 0.0;
  Verdict verdict = Verdict::degenerate;
  double margin = std::numeric_limits<double>::quiet_NaN();
};

namespace detail {

inline unsigned worker_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("PEDALFINSLER_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return n;
}

inline EngineResult evaluate_row(const SweepSpec& spec, double value) {
  FamilyParams p = spec.fixed;
  p.by_name(spec.param) = value;
  EngineResult res = evaluate_engine(spec.family, p, spec.engine, spec.options);

  // rows near a flip get re-evaluated at 4x sampling density
  if (std::isfinite(res.margin) && std::abs(res.margin) < 1e-6 &&
      spec.engine != SweepEngine::closed_form) {
    EngineOptions dense = spec.options;
    dense.curve_samples *= 4;
    dense.surface_grid.nu *= 2;
    dense.surface_grid.nv *= 2;
    dense.scan_dirs *= 4;
    res = evaluate_engine(spec.family, p, spec.engine, dense);
  }
  return res;
}

}  // namespace detail

/// One verdict row per grid value over [lo, hi] (endpoints included).  Rows
/// evaluate independently (optionally in parallel; PEDALFINSLER_THREADS caps
/// the worker count) and are assembled in grid order.  A row whose engine
/// throws is marked degenerate and the sweep continues.
inline std::vector<SweepRow> sweep(const SweepSpec& spec) {
  if (!(spec.hi > spec.lo)) throw PreconditionViolated("sweep: range must be non-degenerate");
  if (spec.resolution < 8) throw PreconditionViolated("sweep: resolution >= 8 required");

  std::vector<SweepRow> rows(spec.resolution);
  std::atomic<int> next{0};

  auto work = [&]() {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= spec.resolution) return;
      const double value = spec.lo + (spec.hi - spec.lo) * static_cast<double>(i) /
                                         (spec.resolution - 1);
      rows[i].value = value;
      try {
        const EngineResult res = detail::evaluate_row(spec, value);
        rows[i].verdict = res.verdict;
        rows[i].margin = res.margin;
      } catch (const std::exception&) {
        rows[i].verdict = Verdict::degenerate;
        rows[i].margin = std::numeric_limits<double>::quiet_NaN();
      }
    }
  };

  const unsigned workers = std::min<unsigned>(detail::worker_count(),
                                              static_cast<unsigned>(spec.resolution));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  return rows;
}

/// CSV emitter: header `param,verdict,margin,engine`, one row per grid value,
/// LF line endings, 17 significant digits.
inline void write_sweep_csv(std::ostream& os, const SweepSpec& spec,
                            const std::vector<SweepRow>& rows) {
  os << "param,verdict,margin,engine\n";
  char buf[64];
  for (const auto& row : rows) {
    std::snprintf(buf, sizeof buf, "%.17g", row.value);
    os << buf << ',' << to_string(row.verdict) << ',';
    std::snprintf(buf, sizeof buf, "%.17g", row.margin);
    os << buf << ',' << to_string(spec.engine) << '\n';
  }
}

// ---------------------------------------------------------------------------
// Boundary detection
// ---------------------------------------------------------------------------

struct BoundaryResult {
  double boundary_value = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  std::vector<std::pair<SweepEngine, bool>> engine_agreement;
};

/// Bisection on the swept parameter for the convex/non-convex flip.  The
/// endpoint verdicts must differ.  `cross_engines` are re-evaluated at the
/// final bracket endpoints and flagged for agreement with the primary engine.
inline BoundaryResult find_boundary(const SweepSpec& spec, double tol,
                                    const std::vector<SweepEngine>& cross_engines = {}) {
  if (!(tol > 0.0)) throw PreconditionViolated("find_boundary: tol must be positive");

  auto convex_at = [&](double value, SweepEngine engine) {
    FamilyParams p = spec.fixed;
    p.by_name(spec.param) = value;
    EngineOptions opt = spec.options;
    return evaluate_engine(spec.family, p, engine, opt).verdict == Verdict::convex;
  };

  double lo = spec.lo, hi = spec.hi;
  const bool at_lo = convex_at(lo, spec.engine);
  const bool at_hi = convex_at(hi, spec.engine);
  if (at_lo == at_hi)
    throw NoSignChange("find_boundary: verdicts agree at both range endpoints");

  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (convex_at(mid, spec.engine) == at_lo)
      lo = mid;
    else
      hi = mid;
  }

  BoundaryResult out;
  out.bracket_lo = lo;
  out.bracket_hi = hi;
  out.boundary_value = 0.5 * (lo + hi);
  for (SweepEngine e : cross_engines) {
    bool agrees = false;
    try {
      agrees = convex_at(lo, e) == at_lo && convex_at(hi, e) == at_hi;
    } catch (const std::exception&) {
      agrees = false;
    }
    out.engine_agreement.emplace_back(e, agrees);
  }
  return out;
}

}  // namespace pedalfinsler
