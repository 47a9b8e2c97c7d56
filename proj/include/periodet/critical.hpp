#pragma once

#include <utility>
#include <vector>

#include "periodet/poly.hpp"

namespace periodet {

struct CriticalData {
  /// One entry per critical point counted with multiplicity (n^2 in total).
  std::vector<std::pair<cplx, cplx>> points;
  std::vector<cplx> values;
  /// |grad h| at each point.
  std::vector<double> residuals;
  /// True when some points coincide (e.g. h homogeneous).
  bool degenerate = false;
};

/// Critical points of h via Res_y(h_x, h_y), back-substitution into h_y and a
/// two-dimensional Newton polish. `tol` bounds |grad h| relative to the
/// coefficient scale of h.
CriticalData critical_data(const BivarPoly& h, double tol = 1e-9);

}  // namespace periodet
