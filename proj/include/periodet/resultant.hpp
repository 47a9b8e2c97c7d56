#pragma once

#include <span>

#include "periodet/poly.hpp"

namespace periodet {

/// Determinant of the Sylvester matrix of two univariate polynomials given
/// with their formal degrees (coefficient vectors are ascending and may carry
/// a zero leading entry). Rows of `p` come first, each row lists coefficients
/// from the highest power down. With this layout Res(y - x, y + x) = 2x.
cplx sylvester_resultant(std::span<const cplx> p, std::span<const cplx> q);

/// Resultant eliminating y, as a univariate polynomial in x (ascending).
/// Uses the formal y-degrees of `p` and `q`; a y-degree of zero is allowed and
/// gives Res(c, q) = c^deg(q). Computed by evaluation at points on the unit
/// circle followed by discrete Fourier interpolation; coefficients below
/// 1e-11 of the largest are treated as zero, and the whole result is zero
/// when its largest coefficient is below 1e-12 of a Hadamard bound.
UniPoly resultant_y(const BivarPoly& p, const BivarPoly& q);

/// Discriminant of a univariate polynomial, a_d^(2d-2) prod_{i<j} (r_i - r_j)^2.
cplx univariate_discriminant(std::span<const cplx> c);

struct SigmaOptions {
  /// |Sigma| <= rel * scale^(2n) flags the top part as nongeneric.
  double generic_rel = 1e-10;
};

struct SigmaResult {
  cplx value;
  bool generic;
};

/// Sigma(H) = h_0^(2n) prod_{j<i} (b_i - b_j)^2, evaluated as the discriminant
/// of H(x, 1). Requires h_0 != 0 (unsupported-chart otherwise).
SigmaResult discriminant_sigma(const HomogeneousTop& top, const SigmaOptions& opts = {});

}  // namespace periodet
