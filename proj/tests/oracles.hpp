// Test-side oracles, independent of the library's differentiation paths:
// plain stencil differences evaluated straight from the public evaluators.
#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "pedalfinsler/core.hpp"

namespace oracles {

using pedalfinsler::Vec2;
using pedalfinsler::Vec3;

/// 5-point central first derivative of a Vec2-valued map.
inline Vec2 fd_d1(const std::function<Vec2(double)>& f, double t, double h = 1e-5) {
  return (f(t - 2 * h) - 8.0 * f(t - h) + 8.0 * f(t + h) - f(t + 2 * h)) / (12.0 * h);
}

/// 5-point central second derivative of a Vec2-valued map.
inline Vec2 fd_d2(const std::function<Vec2(double)>& f, double t, double h = 1e-4) {
  return (-1.0 * f(t - 2 * h) + 16.0 * f(t - h) - 30.0 * f(t) + 16.0 * f(t + h) -
          f(t + 2 * h)) /
         (12.0 * h * h);
}

/// Scalar second difference.
inline double fd_d2(const std::function<double(double)>& f, double t, double h = 1e-4) {
  return (-f(t - 2 * h) + 16.0 * f(t - h) - 30.0 * f(t) + 16.0 * f(t + h) - f(t + 2 * h)) /
         (12.0 * h * h);
}

/// Eigenvalues of a symmetric 2x2 matrix in closed form (ascending).
inline std::pair<double, double> eig2x2(double a, double b, double d) {
  const double mean = 0.5 * (a + d);
  const double disc = std::sqrt(0.25 * (a - d) * (a - d) + b * b);
  return {mean - disc, mean + disc};
}

/// Deterministic uniform samples in [lo, hi].
class Uniform {
 public:
  explicit Uniform(unsigned seed = 12345) : rng_(seed) {}
  double operator()(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }

 private:
  std::mt19937_64 rng_;
};

inline double rel_diff(double got, double want) {
  return std::abs(got - want) / (1.0 + std::abs(want));
}

}  // namespace oracles
