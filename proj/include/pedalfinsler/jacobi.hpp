#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "pedalfinsler/core.hpp"

namespace pedalfinsler {

/// Dense symmetric matrix, row-major.
struct SymMatrix {
  int n = 0;
  std::vector<double> a;  // n*n entries

  SymMatrix() = default;
  explicit SymMatrix(int dim) : n(dim), a(static_cast<size_t>(dim) * dim, 0.0) {}

  double& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
  double at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }

  double trace() const {
    double t = 0.0;
    for (int i = 0; i < n; ++i) t += at(i, i);
    return t;
  }

  double max_abs() const {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::abs(v));
    return m;
  }
};

/// Eigenvalues of a small dense symmetric matrix by cyclic Jacobi rotations.
/// Returns the eigenvalues sorted ascending.
inline std::vector<double> jacobi_eigenvalues(SymMatrix m, double tol = 1e-14,
                                              int max_sweeps = 64) {
  const int n = m.n;
  if (n == 1) return {m.at(0, 0)};

  const double scale = std::max(m.max_abs(), 1e-300);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += m.at(i, j) * m.at(i, j);
    if (std::sqrt(off) <= tol * scale) break;

    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = m.at(p, q);
        if (std::abs(apq) <= 1e-300) continue;
        const double theta = (m.at(q, q) - m.at(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (int i = 0; i < n; ++i) {
          const double aip = m.at(i, p), aiq = m.at(i, q);
          m.at(i, p) = c * aip - s * aiq;
          m.at(i, q) = s * aip + c * aiq;
        }
        for (int i = 0; i < n; ++i) {
          const double api = m.at(p, i), aqi = m.at(q, i);
          m.at(p, i) = c * api - s * aqi;
          m.at(q, i) = s * api + c * aqi;
        }
      }
    }
  }

  std::vector<double> eigs(n);
  for (int i = 0; i < n; ++i) eigs[i] = m.at(i, i);
  std::sort(eigs.begin(), eigs.end());
  return eigs;
}

}  // namespace pedalfinsler
