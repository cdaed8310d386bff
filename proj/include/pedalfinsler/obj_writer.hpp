#pragma once

#include <cstdio>
#include <ostream>
#include <vector>

#include "pedalfinsler/core.hpp"

namespace pedalfinsler {

/// One mesh vertex of a pedal-surface grid with the sign of the convexity
/// determinant at its parameters.
struct MeshVertex {
  Vec3 position;
  int det2_sign = 0;  // +1, -1, or 0 (degenerate)
};

/// Wavefront OBJ emitter for an (nu x nv) parametric grid: one vertex per
/// grid node (u wraps around, v does not), quad faces, and a per-vertex
/// comment line carrying the sign of the second-form determinant.
inline void write_grid_obj(std::ostream& os, const std::vector<MeshVertex>& vertices, int nu,
                           int nv) {
  char buf[160];
  os << "# pedal surface grid " << nu << "x" << nv << "\n";
  for (const MeshVertex& mv : vertices) {
    std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", mv.position.x, mv.position.y,
                  mv.position.z);
    os << buf;
    os << "# det2_sign " << mv.det2_sign << "\n";
  }
  for (int i = 0; i < nu; ++i) {
    const int inext = (i + 1) % nu;  // seam closes around u
    for (int j = 0; j + 1 < nv; ++j) {
      const int v00 = i * nv + j + 1;
      const int v01 = i * nv + j + 2;
      const int v10 = inext * nv + j + 1;
      const int v11 = inext * nv + j + 2;
      os << "f " << v00 << ' ' << v10 << ' ' << v11 << ' ' << v01 << "\n";
    }
  }
}

}  // namespace pedalfinsler
