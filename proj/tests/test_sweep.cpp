#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <sstream>

#include "pedalfinsler/sweep.hpp"

using namespace pedalfinsler;

namespace {

SweepSpec limacon_sweep(SweepEngine engine, double lo = 1.5, double hi = 3.0, int res = 16) {
  SweepSpec spec;
  spec.family = CatalogFamily::limacon;
  spec.fixed.k = 1.0;
  spec.param = "a";
  spec.lo = lo;
  spec.hi = hi;
  spec.resolution = res;
  spec.engine = engine;
  spec.options.curve_samples = 512;
  return spec;
}

int count_flips(const std::vector<SweepRow>& rows) {
  int flips = 0;
  for (size_t i = 1; i < rows.size(); ++i) {
    const bool was = rows[i - 1].verdict == Verdict::convex;
    const bool now = rows[i].verdict == Verdict::convex;
    if (was != now) ++flips;
  }
  return flips;
}

}  // namespace

TEST_CASE("sweep tables") {
  SUBCASE("limacon verdict flips once around a = 2k") {
    for (SweepEngine engine : {SweepEngine::curve_functional, SweepEngine::closed_form}) {
      const auto rows = sweep(limacon_sweep(engine));
      REQUIRE(rows.size() == 16);
      CHECK(rows.front().verdict == Verdict::not_convex);
      CHECK(rows.back().verdict == Verdict::convex);
      CHECK(count_flips(rows) == 1);
      for (size_t i = 1; i < rows.size(); ++i)
        if (rows[i].verdict == Verdict::convex)
          CHECK(rows[i].value > 2.0 - 0.11);
    }
  }

  SUBCASE("engines agree row by row away from the boundary") {
    const auto numeric = sweep(limacon_sweep(SweepEngine::curve_functional));
    const auto closed = sweep(limacon_sweep(SweepEngine::closed_form));
    for (size_t i = 0; i < numeric.size(); ++i) {
      if (std::abs(numeric[i].value - 2.0) < 0.05) continue;
      CHECK(numeric[i].verdict == closed[i].verdict);
    }
  }

  SUBCASE("exactly one flip over the long range [k/2, 5k]") {
    const auto rows = sweep(limacon_sweep(SweepEngine::curve_functional, 0.5, 5.0, 33));
    CHECK(count_flips(rows) == 1);
  }

  SUBCASE("deterministic across worker counts") {
    const SweepSpec spec = limacon_sweep(SweepEngine::curve_functional);
    setenv("PEDALFINSLER_THREADS", "1", 1);
    const auto serial = sweep(spec);
    setenv("PEDALFINSLER_THREADS", "4", 1);
    const auto parallel = sweep(spec);
    unsetenv("PEDALFINSLER_THREADS");
    REQUIRE(serial.size() == parallel.size());
    for (size_t i = 0; i < serial.size(); ++i) {
      CHECK(serial[i].value == parallel[i].value);
      CHECK(serial[i].verdict == parallel[i].verdict);
      CHECK(serial[i].margin == parallel[i].margin);
    }
  }

  SUBCASE("rows that cannot be evaluated are degenerate and the sweep continues") {
    SweepSpec spec;
    spec.family = CatalogFamily::ellipsoid;
    spec.fixed = {2.0, 2.0, 4.0, 1.0 / 3.0, 0.0, 2};
    spec.param = "c";
    spec.lo = 2.0;
    spec.hi = 4.0;
    spec.resolution = 8;
    spec.engine = SweepEngine::closed_form;  // no closed form exists for ellipsoids
    const auto rows = sweep(spec);
    for (const auto& row : rows) CHECK(row.verdict == Verdict::degenerate);
  }

  SUBCASE("csv format") {
    const SweepSpec spec = limacon_sweep(SweepEngine::closed_form, 1.5, 3.0, 8);
    const auto rows = sweep(spec);
    std::ostringstream os;
    write_sweep_csv(os, spec, rows);
    const std::string text = os.str();
    CHECK(text.rfind("param,verdict,margin,engine\n", 0) == 0);
    CHECK(text.find("\r") == std::string::npos);
    CHECK(text.find("closed_form") != std::string::npos);
    int lines = 0;
    for (char ch : text)
      if (ch == '\n') ++lines;
    CHECK(lines == 9);

    // 17 significant digits round-trip
    std::istringstream is(text);
    std::string line;
    std::getline(is, line);  // header
    std::getline(is, line);
    const double v = std::strtod(line.c_str(), nullptr);
    CHECK(v == rows.front().value);
  }
}

TEST_CASE("boundary detection") {
  SUBCASE("limacon boundary at a = 2 for k = 1") {
    SweepSpec spec = limacon_sweep(SweepEngine::curve_functional);
    spec.options.curve_samples = 2048;
    const BoundaryResult b = find_boundary(
        spec, 5e-4, {SweepEngine::closed_form, SweepEngine::hessian_scan});
    CHECK(std::abs(b.boundary_value - 2.0) <= 1e-3);
    CHECK(b.bracket_lo < b.boundary_value);
    CHECK(b.boundary_value < b.bracket_hi);
    CHECK(b.bracket_hi - b.bracket_lo <= 5e-4 * 1.001);
    for (const auto& [engine, agrees] : b.engine_agreement) CHECK(agrees);
  }

  SUBCASE("offset circle boundaries at +/- 0.5") {
    SweepSpec spec;
    spec.family = CatalogFamily::offset_circle;
    spec.param = "a";
    spec.engine = SweepEngine::curve_functional;
    spec.options.curve_samples = 1024;

    spec.lo = 0.1;
    spec.hi = 0.8;
    CHECK(std::abs(find_boundary(spec, 5e-4).boundary_value - 0.5) <= 1e-3);

    spec.lo = -0.8;
    spec.hi = -0.1;
    CHECK(std::abs(find_boundary(spec, 5e-4).boundary_value + 0.5) <= 1e-3);
  }

  SUBCASE("sphere boundary at r = 2k via the surface engine") {
    SweepSpec spec;
    spec.family = CatalogFamily::sphere;
    spec.fixed.k = 1.0 / 3.0;
    spec.param = "r";
    spec.lo = 0.4;
    spec.hi = 1.0;
    spec.engine = SweepEngine::surface_det2;
    spec.options.surface_grid = GridSpec{128, 64, 1e-3};
    const BoundaryResult b = find_boundary(spec, 5e-4);
    CHECK(std::abs(b.boundary_value - 2.0 / 3.0) <= 1e-3);
  }

  SUBCASE("ellipse numeric boundary stays below the sufficient bound") {
    SweepSpec spec;
    spec.family = CatalogFamily::ellipse;
    spec.fixed.a = 10.0;
    spec.fixed.k = 2.0;
    spec.param = "b";
    spec.lo = 6.0;
    spec.hi = 9.0;
    spec.engine = SweepEngine::curve_functional;
    spec.options.curve_samples = 1024;
    const BoundaryResult b = find_boundary(spec, 5e-4);
    CHECK(b.boundary_value <= std::sqrt(76.0) + 1e-3);
  }

  SUBCASE("no sign change is reported") {
    SweepSpec spec = limacon_sweep(SweepEngine::closed_form, 3.0, 4.0);
    CHECK_THROWS_AS(find_boundary(spec, 1e-3), NoSignChange);
  }
}
