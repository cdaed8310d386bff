// pedal: construct pedal curves/surfaces of conics and quadrics, evaluate the
// Minkowski norms they induce, and verify strong convexity by independent
// engines.
//
// Exit codes: 0 ok/convex, 1 not convex, 2 usage error, 3 I/O failure,
// 4 engine disagreement.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pedalfinsler/curve_catalog.hpp"
#include "pedalfinsler/minkowski.hpp"
#include "pedalfinsler/obj_writer.hpp"
#include "pedalfinsler/plane_pedal.hpp"
#include "pedalfinsler/surface_catalog.hpp"
#include "pedalfinsler/surface_pedal.hpp"
#include "pedalfinsler/svg_writer.hpp"
#include "pedalfinsler/sweep.hpp"

namespace pf = pedalfinsler;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNotConvex = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitDisagreement = 4;

struct Options {
  std::string family;
  pf::FamilyParams params;
  double x0 = 0.0, y0 = 0.0;  // pedal point override for `curve`
  bool pedal_given = false;
  int samples = 1024;
  int nu = 128, nv = 64;
  std::string out_path, csv_path;
  std::string engine = "all";
  int check_samples = 2048;
  int dirs = 1024;
  unsigned seed = 0;
  // sweep
  std::string param = "a";
  double lo = 0.0, hi = 1.0;
  int steps = 16;
  bool boundary = false;
  double tol = 1e-3;
  // norm
  std::string y_csv;
};

pf::CatalogFamily parse_family(const std::string& name) {
  if (name == "limacon") return pf::CatalogFamily::limacon;
  if (name == "offset_circle") return pf::CatalogFamily::offset_circle;
  if (name == "ellipse") return pf::CatalogFamily::ellipse;
  if (name == "sphere") return pf::CatalogFamily::sphere;
  if (name == "ellipsoid") return pf::CatalogFamily::ellipsoid;
  if (name == "slope_n") return pf::CatalogFamily::slope_n;
  throw pf::PreconditionViolated("unknown family '" + name + "'");
}

bool is_plane_family(pf::CatalogFamily f) {
  return f == pf::CatalogFamily::limacon || f == pf::CatalogFamily::offset_circle ||
         f == pf::CatalogFamily::ellipse;
}

bool is_surface_family(pf::CatalogFamily f) {
  return f == pf::CatalogFamily::sphere || f == pf::CatalogFamily::ellipsoid;
}

std::pair<pf::PlaneCurve, pf::PedalConfig2> plane_scene(pf::CatalogFamily fam,
                                                         const Options& opt) {
  switch (fam) {
    case pf::CatalogFamily::limacon: {
      pf::CircleSpec spec{opt.params.k, opt.params.a};
      pf::PedalConfig2 cfg = opt.pedal_given ? pf::PedalConfig2{{opt.x0, opt.y0}}
                                             : pf::pedal_at_origin();
      return {pf::make_curve(spec), cfg};
    }
    case pf::CatalogFamily::offset_circle: {
      pf::OffsetPedalCircleSpec spec{opt.params.a};
      return {pf::make_curve(spec), pf::pedal_config(spec)};
    }
    case pf::CatalogFamily::ellipse: {
      pf::EllipseSpec spec{opt.params.k, opt.params.a, opt.params.b};
      pf::PedalConfig2 cfg = opt.pedal_given ? pf::PedalConfig2{{opt.x0, opt.y0}}
                                             : pf::pedal_at_origin();
      return {pf::make_curve(spec), cfg};
    }
    default:
      throw pf::PreconditionViolated("family is not a plane curve");
  }
}

pf::SurfacePatch surface_scene(pf::CatalogFamily fam, const Options& opt) {
  if (fam == pf::CatalogFamily::sphere)
    return pf::make_surface(pf::SphereSpec{opt.params.k, opt.params.r});
  if (fam == pf::CatalogFamily::ellipsoid)
    return pf::make_surface(
        pf::EllipsoidSpec{opt.params.k, opt.params.a, opt.params.b, opt.params.c});
  throw pf::PreconditionViolated("family is not a surface");
}

std::ofstream open_output(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::ios_base::failure("cannot open '" + path + "' for writing");
  return os;
}

// ---------------------------------------------------------------------------

int cmd_curve(const Options& opt) {
  const pf::CatalogFamily fam = parse_family(opt.family);
  if (!is_plane_family(fam)) throw pf::PreconditionViolated("curve: need a 2D family");
  if (opt.out_path.empty() && opt.csv_path.empty())
    throw pf::PreconditionViolated("curve: need --out and/or --csv");
  if (opt.samples < 16) throw pf::PreconditionViolated("curve: --samples >= 16 required");

  auto [curve, cfg] = plane_scene(fam, opt);

  std::vector<pf::Vec2> points(opt.samples);
  std::vector<double> kp(opt.samples);
  std::vector<double> ts(opt.samples);
  for (int i = 0; i < opt.samples; ++i) {
    const double t = curve.period() * static_cast<double>(i) / opt.samples;
    ts[i] = t;
    points[i] = pf::pedal_eval(curve, cfg, t);
    try {
      kp[i] = pf::convexity_functional(curve, cfg, t);
    } catch (const pf::DegenerateDenominator&) {
      kp[i] = std::numeric_limits<double>::quiet_NaN();
    }
  }

  if (!opt.out_path.empty()) {
    auto os = open_output(opt.out_path);
    pf::write_curve_svg(os, points);
    if (!os) return kExitIo;
  }
  if (!opt.csv_path.empty()) {
    auto os = open_output(opt.csv_path);
    os << "t,x,y,kp\n";
    char buf[256];
    for (int i = 0; i < opt.samples; ++i) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", ts[i], points[i].x,
                    points[i].y, kp[i]);
      os << buf;
    }
    if (!os) return kExitIo;
  }
  return kExitOk;
}

int cmd_surface(const Options& opt) {
  const pf::CatalogFamily fam = parse_family(opt.family);
  if (!is_surface_family(fam)) throw pf::PreconditionViolated("surface: need a 3D family");
  if (opt.out_path.empty()) throw pf::PreconditionViolated("surface: need --out");
  if (opt.nu < 16 || opt.nv < 16)
    throw pf::PreconditionViolated("surface: grid of at least 16x16 required");

  const pf::SurfacePatch s = surface_scene(fam, opt);
  const pf::PedalConfig3 cfg{};
  const double v_inset = 1e-3;
  const double v0 = s.domain.v0 + v_inset, v1 = s.domain.v1 - v_inset;

  std::vector<pf::MeshVertex> vertices;
  vertices.reserve(static_cast<size_t>(opt.nu) * opt.nv);
  for (int i = 0; i < opt.nu; ++i) {
    const double u = s.domain.u0 + (s.domain.u1 - s.domain.u0) * static_cast<double>(i) / opt.nu;
    for (int j = 0; j < opt.nv; ++j) {
      const double v = v0 + (v1 - v0) * static_cast<double>(j) / (opt.nv - 1);
      pf::MeshVertex mv;
      mv.position = pf::pedal_surface_eval(s, cfg, u, v);
      try {
        const double g = pf::pedal_gauss_curvature(s, cfg, u, v);
        mv.det2_sign = g > 0.0 ? 1 : (g < 0.0 ? -1 : 0);
      } catch (const pf::DegenerateSurface&) {
        mv.det2_sign = 0;
      }
      vertices.push_back(mv);
    }
  }

  auto os = open_output(opt.out_path);
  pf::write_grid_obj(os, vertices, opt.nu, opt.nv);
  return os ? kExitOk : kExitIo;
}

std::vector<pf::SweepEngine> engines_for(pf::CatalogFamily fam, const std::string& requested) {
  using E = pf::SweepEngine;
  std::vector<E> all;
  if (is_plane_family(fam)) all.push_back(E::curve_functional);
  if (is_surface_family(fam)) all.push_back(E::surface_det2);
  all.push_back(E::hessian_scan);
  if (fam != pf::CatalogFamily::ellipsoid) all.push_back(E::closed_form);

  if (requested == "all") return all;
  E wanted;
  if (requested == "curve") wanted = E::curve_functional;
  else if (requested == "surface") wanted = E::surface_det2;
  else if (requested == "hessian") wanted = E::hessian_scan;
  else if (requested == "closed") wanted = E::closed_form;
  else throw pf::PreconditionViolated("unknown engine '" + requested + "'");
  for (E e : all)
    if (e == wanted) return {wanted};
  throw pf::PreconditionViolated("engine '" + requested + "' does not apply to this family");
}

int cmd_check(const Options& opt) {
  const pf::CatalogFamily fam = parse_family(opt.family);
  pf::EngineOptions eng_opt;
  eng_opt.curve_samples = opt.check_samples;
  eng_opt.scan_dirs = opt.dirs;
  eng_opt.seed = opt.seed;
  eng_opt.surface_grid = pf::GridSpec{std::max(32, opt.nu / 2), std::max(32, opt.nv / 2), 1e-3};

  const auto engines = engines_for(fam, opt.engine);
  int n_convex = 0, n_not = 0;
  char buf[64];
  for (pf::SweepEngine e : engines) {
    const pf::EngineResult res = pf::evaluate_engine(fam, opt.params, e, eng_opt);
    std::snprintf(buf, sizeof buf, "%.12g", res.margin);
    std::cout << "engine=" << pf::to_string(e) << " verdict=" << pf::to_string(res.verdict)
              << " margin=" << buf;
    if (!res.argmin.empty()) {
      std::cout << (e == pf::SweepEngine::hessian_scan ? " worst_direction=" : " argmin=");
      for (size_t i = 0; i < res.argmin.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.12g", res.argmin[i]);
        std::cout << (i ? "," : "") << buf;
      }
    }
    std::cout << "\n";
    if (res.verdict == pf::Verdict::convex)
      ++n_convex;
    else
      ++n_not;
  }
  if (n_convex > 0 && n_not > 0) {
    std::cout << "engines disagree\n";
    return kExitDisagreement;
  }
  return n_convex > 0 ? kExitOk : kExitNotConvex;
}

int cmd_sweep(const Options& opt) {
  const pf::CatalogFamily fam = parse_family(opt.family);
  pf::SweepSpec spec;
  spec.family = fam;
  spec.fixed = opt.params;
  spec.param = opt.param;
  spec.lo = opt.lo;
  spec.hi = opt.hi;
  spec.resolution = opt.steps;
  spec.options.seed = opt.seed;

  const auto engines = engines_for(fam, opt.engine == "all" ? "closed" : opt.engine);
  spec.engine = engines.front();
  if (opt.engine == "all")
    throw pf::PreconditionViolated("sweep: pick one engine (curve/surface/hessian/closed)");

  const auto rows = pf::sweep(spec);

  std::ostringstream csv;
  pf::write_sweep_csv(csv, spec, rows);

  std::string boundary_line;
  if (opt.boundary) {
    const pf::BoundaryResult b = pf::find_boundary(spec, opt.tol);
    char buf[160];
    std::snprintf(buf, sizeof buf, "# boundary %s=%.17g bracket=[%.17g,%.17g]\n",
                  opt.param.c_str(), b.boundary_value, b.bracket_lo, b.bracket_hi);
    boundary_line = buf;
    std::cout << buf;
  }

  if (!opt.out_path.empty()) {
    auto os = open_output(opt.out_path);
    os << csv.str() << boundary_line;
    if (!os) return kExitIo;
  } else {
    std::cout << csv.str();
  }
  return kExitOk;
}

int cmd_norm(const Options& opt) {
  const pf::CatalogFamily fam = parse_family(opt.family);
  const pf::MinkowskiNorm norm = pf::norm_for(fam, opt.params);

  std::vector<double> y;
  std::stringstream ss(opt.y_csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) y.push_back(std::stod(tok));
  if (static_cast<int>(y.size()) != norm.dim)
    throw pf::PreconditionViolated("norm: --y needs " + std::to_string(norm.dim) +
                                   " components for this family");

  const double f = norm.eval(y);
  const pf::PdResult pd = pf::is_pd(pf::fundamental_tensor(norm, y));
  char buf[128];
  std::snprintf(buf, sizeof buf, "F=%.17g min_eig=%.17g\n", f, pd.min_eigenvalue);
  std::cout << buf;
  return pd.positive_definite ? kExitOk : kExitNotConvex;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pedal curves/surfaces of conics and quadrics, induced Minkowski norms, and "
               "strong-convexity checks"};
  app.require_subcommand(1);

  Options opt;

  auto add_family_params = [&](CLI::App* cmd) {
    cmd->add_option("--family", opt.family, "limacon|offset_circle|ellipse|sphere|ellipsoid|slope_n")
        ->required();
    cmd->add_option("--a", opt.params.a, "semi-axis / radius / pedal abscissa");
    cmd->add_option("--b", opt.params.b, "semi-axis b");
    cmd->add_option("--c", opt.params.c, "semi-axis c");
    cmd->add_option("--k", opt.params.k, "center offset");
    cmd->add_option("--r", opt.params.r, "radius");
    cmd->add_option("--n", opt.params.n, "dimension (slope_n)");
  };

  CLI::App* curve = app.add_subcommand("curve", "emit the pedal curve as SVG and/or CSV");
  add_family_params(curve);
  curve->add_option("--x0", opt.x0, "pedal point x (default origin)");
  auto* y0_opt = curve->add_option("--y0", opt.y0, "pedal point y (default origin)");
  curve->add_option("--samples", opt.samples, "sample count (default 1024)");
  curve->add_option("--out", opt.out_path, "SVG output path");
  curve->add_option("--csv", opt.csv_path, "CSV output path (t,x,y,kp)");
  curve->callback([&] {
    opt.pedal_given = curve->count("--x0") > 0 || y0_opt->count() > 0;
  });

  CLI::App* surface = app.add_subcommand("surface", "emit the pedal surface as an OBJ mesh");
  add_family_params(surface);
  surface->add_option("--nu", opt.nu, "grid count along u (default 128)");
  surface->add_option("--nv", opt.nv, "grid count along v (default 64)");
  surface->add_option("--out", opt.out_path, "OBJ output path")->required();

  CLI::App* check = app.add_subcommand("check", "strong-convexity verdict");
  add_family_params(check);
  check->add_option("--engine", opt.engine, "curve|surface|hessian|closed|all (default all)");
  check->add_option("--samples", opt.check_samples, "curve-engine grid (default 2048)");
  check->add_option("--dirs", opt.dirs, "hessian-engine directions (default 1024)");
  check->add_option("--nu", opt.nu, "surface-engine grid along u");
  check->add_option("--nv", opt.nv, "surface-engine grid along v");
  check->add_option("--seed", opt.seed, "direction-sampling seed (default 0)");

  CLI::App* sweepc = app.add_subcommand("sweep", "sweep one parameter and emit a verdict table");
  add_family_params(sweepc);
  sweepc->add_option("--param", opt.param, "swept parameter name")->required();
  sweepc->add_option("--lo", opt.lo, "range start")->required();
  sweepc->add_option("--hi", opt.hi, "range end")->required();
  sweepc->add_option("--steps", opt.steps, "grid resolution (default 16)");
  sweepc->add_option("--engine", opt.engine, "curve|surface|hessian|closed")->required();
  sweepc->add_option("--out", opt.out_path, "CSV output path (default stdout)");
  sweepc->add_flag("--boundary", opt.boundary, "bisect the convexity boundary");
  sweepc->add_option("--tol", opt.tol, "boundary bracket tolerance (default 1e-3)");
  sweepc->add_option("--seed", opt.seed, "direction-sampling seed (default 0)");

  CLI::App* normc = app.add_subcommand("norm", "evaluate F and the minimum eigenvalue of g");
  add_family_params(normc);
  normc->add_option("--y", opt.y_csv, "direction, comma separated")->required();
  normc->add_option("--seed", opt.seed, "direction-sampling seed (default 0)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (curve->parsed()) return cmd_curve(opt);
    if (surface->parsed()) return cmd_surface(opt);
    if (check->parsed()) return cmd_check(opt);
    if (sweepc->parsed()) return cmd_sweep(opt);
    if (normc->parsed()) return cmd_norm(opt);
  } catch (const pf::PreconditionViolated& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
