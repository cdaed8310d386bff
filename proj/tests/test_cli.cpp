#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "pedalfinsler/core.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_pedal(const std::string& args) {
  const fs::path out = fs::temp_directory_path() / "pedal_cli_stdout.txt";
  const std::string cmd = std::string(PEDAL_BIN) + " " + args + " > " + out.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
  std::ifstream is(out);
  std::stringstream ss;
  ss << is.rdbuf();
  r.output = ss.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

fs::path temp_file(const std::string& name) {
  return fs::temp_directory_path() / name;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("check subcommand verdicts and exit codes") {
  SUBCASE("convex limacon under all engines") {
    const RunResult r = run_pedal("check --family limacon --a 3 --k 1 --engine all");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("engine=curve_functional verdict=convex") != std::string::npos);
    CHECK(r.output.find("engine=hessian_scan verdict=convex") != std::string::npos);
    CHECK(r.output.find("engine=closed_form verdict=convex") != std::string::npos);
  }

  SUBCASE("non-convex limacon") {
    const RunResult r = run_pedal("check --family limacon --a 1 --k 1 --engine all");
    CHECK(r.exit_code == 1);
  }

  SUBCASE("slope_n in dimension 5") {
    CHECK(run_pedal("check --family slope_n --n 5 --r 1 --k 0.6 --engine hessian").exit_code == 1);
    CHECK(run_pedal("check --family slope_n --n 5 --r 1 --k 0.4 --engine hessian").exit_code == 0);
  }

  SUBCASE("ellipsoid figure parameters") {
    CHECK(run_pedal("check --family ellipsoid --a 2 --b 2 --c 2.449489742783178 "
                    "--k 0.3333333333333333 --nu 64 --nv 64")
              .exit_code == 0);
    CHECK(run_pedal("check --family ellipsoid --a 2 --b 2 --c 4 --k 0.3333333333333333 "
                    "--nu 64 --nv 64")
              .exit_code == 1);
  }

  SUBCASE("usage errors exit with 2") {
    CHECK(run_pedal("check --family klein_bottle --a 1").exit_code == 2);
    CHECK(run_pedal("check").exit_code == 2);
    CHECK(run_pedal("frobnicate --family limacon").exit_code == 2);
  }
}

TEST_CASE("curve subcommand emits SVG and CSV") {
  const fs::path svg = temp_file("fig1_left.svg");
  const fs::path csv = temp_file("fig1_left.csv");
  const RunResult r = run_pedal("curve --family limacon --a 3 --k 1 --out " + svg.string() +
                                " --csv " + csv.string());
  REQUIRE(r.exit_code == 0);

  SUBCASE("svg is structurally well formed") {
    const std::string text = slurp(svg);
    CHECK(text.rfind("<?xml", 0) == 0);
    CHECK(text.find("<svg ") != std::string::npos);
    CHECK(text.find("<polyline") != std::string::npos);
    CHECK(text.find("</svg>") != std::string::npos);
    CHECK(text.find("<circle") != std::string::npos);  // origin marker
  }

  SUBCASE("csv has the t,x,y,kp layout with one row per sample") {
    const auto lines = split_lines(slurp(csv));
    REQUIRE(lines.size() == 1025);
    CHECK(lines[0] == "t,x,y,kp");
  }

  SUBCASE("kp column is all-positive exactly when check reports convex") {
    struct Case {
      std::string flags;
      bool expect_convex;
    };
    for (const Case& c : {Case{"--a 3 --k 1", true}, Case{"--a 1 --k 1", false}}) {
      const fs::path f = temp_file("kp_case.csv");
      REQUIRE(run_pedal("curve --family limacon " + c.flags + " --csv " + f.string()).exit_code ==
              0);
      const auto lines = split_lines(slurp(f));
      bool all_positive = true;
      for (size_t i = 1; i < lines.size(); ++i) {
        const auto last_comma = lines[i].rfind(',');
        const double kp = std::strtod(lines[i].c_str() + last_comma + 1, nullptr);
        if (!(kp > 0.0)) all_positive = false;
      }
      const int check_code =
          run_pedal("check --family limacon " + c.flags + " --engine curve").exit_code;
      CHECK(all_positive == c.expect_convex);
      CHECK((check_code == 0) == c.expect_convex);
    }
  }

  SUBCASE("byte-identical output for identical invocations") {
    const fs::path again = temp_file("fig1_left_again.svg");
    REQUIRE(run_pedal("curve --family limacon --a 3 --k 1 --out " + again.string()).exit_code ==
            0);
    const fs::path once_more = temp_file("fig1_left_thrice.svg");
    REQUIRE(run_pedal("curve --family limacon --a 3 --k 1 --out " + once_more.string())
                .exit_code == 0);
    CHECK(slurp(again) == slurp(once_more));
  }

  SUBCASE("unwritable output path exits with 3") {
    CHECK(run_pedal("curve --family limacon --a 3 --k 1 --out /nonexistent_dir/x.svg")
              .exit_code == 3);
  }
}

TEST_CASE("surface subcommand emits OBJ meshes") {
  SUBCASE("convex sphere pedal: correct vertex count, faces in range, all signs positive") {
    const fs::path obj = temp_file("sphere_pedal.obj");
    REQUIRE(run_pedal("surface --family sphere --k 0.3333333333333333 --r 1 --nu 48 --nv 24 "
                      "--out " +
                      obj.string())
                .exit_code == 0);
    const auto lines = split_lines(slurp(obj));
    int vertices = 0, faces = 0, positive = 0, negative = 0;
    for (const std::string& line : lines) {
      if (line.rfind("v ", 0) == 0) ++vertices;
      if (line.rfind("# det2_sign ", 0) == 0) {
        const int sign = std::atoi(line.c_str() + 12);
        if (sign > 0) ++positive;
        if (sign < 0) ++negative;
      }
      if (line.rfind("f ", 0) == 0) {
        ++faces;
        std::stringstream ss(line.substr(2));
        int idx = 0;
        while (ss >> idx) {
          CHECK(idx >= 1);
          CHECK(idx <= 48 * 24);
        }
      }
    }
    CHECK(vertices == 48 * 24);
    CHECK(faces == 48 * 23);
    CHECK(positive == vertices);
    CHECK(negative == 0);
  }

  SUBCASE("non-convex ellipsoid pedal has mixed signs") {
    const fs::path obj = temp_file("ellipsoid_pedal.obj");
    REQUIRE(run_pedal("surface --family ellipsoid --a 2 --b 2 --c 4 --k 0.3333333333333333 "
                      "--nu 48 --nv 24 --out " +
                      obj.string())
                .exit_code == 0);
    int positive = 0, negative = 0;
    for (const std::string& line : split_lines(slurp(obj))) {
      if (line.rfind("# det2_sign ", 0) == 0) {
        const int sign = std::atoi(line.c_str() + 12);
        if (sign > 0) ++positive;
        if (sign < 0) ++negative;
      }
    }
    CHECK(positive > 0);
    CHECK(negative > 0);
  }
}

TEST_CASE("sweep subcommand") {
  SUBCASE("csv table with boundary report") {
    const fs::path csv = temp_file("limacon_sweep.csv");
    const RunResult r =
        run_pedal("sweep --family limacon --k 1 --param a --lo 1.5 --hi 3 --steps 16 "
                  "--engine closed --boundary --tol 1e-3 --out " +
                  csv.string());
    REQUIRE(r.exit_code == 0);
    const std::string text = slurp(csv);
    CHECK(text.rfind("param,verdict,margin,engine\n", 0) == 0);
    const auto pos = text.find("# boundary a=");
    REQUIRE(pos != std::string::npos);
    const double a_star = std::strtod(text.c_str() + pos + 13, nullptr);
    CHECK(std::abs(a_star - 2.0) <= 1e-3);
  }

  SUBCASE("identical invocations give identical bytes") {
    const fs::path c1 = temp_file("sweep_a.csv"), c2 = temp_file("sweep_b.csv");
    const std::string base = "sweep --family limacon --k 1 --param a --lo 1.5 --hi 3 --steps 12 "
                             "--engine curve --out ";
    REQUIRE(run_pedal(base + c1.string()).exit_code == 0);
    REQUIRE(run_pedal(base + c2.string()).exit_code == 0);
    CHECK(slurp(c1) == slurp(c2));
  }
}

TEST_CASE("norm subcommand") {
  const RunResult r = run_pedal("norm --family limacon --a 3 --k 1 --y 4,0");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("F=1 ") != std::string::npos);
  CHECK(r.output.find("min_eig=") != std::string::npos);

  CHECK(run_pedal("norm --family limacon --a 3 --k 1 --y 1,2,3").exit_code == 2);
}
