#pragma once

#include <Eigen/Dense>
#include <vector>

#include "periodet/poly.hpp"
#include "periodet/sign.hpp"

namespace periodet {

/// E_{n,k}(H) = [[A, B], [C, D]]: four triangular k x k blocks, each entry a
/// fixed integer multiple of one coefficient h_s. Rows correspond to
/// x^(k-j) y^(j-1) H_x and x^(k-j) y^(j-1) H_y, columns to the degree n+k-1
/// monomials that are not canonical (x^(n+k-l) y^(l-1), x^(k-l) y^(n+l-1)).
struct BlockMatrixE {
  int n;
  int k;
  Eigen::MatrixXcd entries;

  cplx det() const { return entries.partialPivLu().determinant(); }
};

BlockMatrixE build_E(const HomogeneousTop& top, int k);

/// (n+k) x (n+k) coefficient matrix of the rows
///   d(y q_j)/dy                        j = 1 .. n-k
///   x^(n-j) y^(j-n+k-1) dH/dx          j = n-k+1 .. n
///   x^(k-j+n) y^(j-n-1) dH/dy          j = n+1 .. n+k
/// over the columns x^(n+k-s) y^(s-1), s = 1 .. n+k.
struct DefOneMatrix {
  int n;
  int k;
  Eigen::MatrixXcd entries;

  cplx det() const { return entries.partialPivLu().determinant(); }
};

DefOneMatrix build_A(int k, const HomogeneousTop& top, const std::vector<BivarPoly>& q);

/// The canonical monomials e_j of degree n+k-1, in increasing j.
std::vector<BivarPoly> canonical_q(int n, int k);

/// c_n with the sign factor (-1)^(n(3n-1)/4) read as exp(i pi n(3n-1)/4).
cplx c_constant(int n);

/// c_n * Sigma(H)^(1/2 - n) * prod_{k=1}^{n-1} det E_{n,k}(H), principal
/// branch of the power. Defined up to sign.
SignAmbiguous C_of_H(const HomogeneousTop& top);

struct DegeneracyOptions {
  /// |det E| < rel * (largest |entry|)^(2k) counts as degenerate.
  double rel = 1e-10;
};

/// True iff some nonzero combination of the canonical monomials of degree
/// n+k-1 lies in the gradient ideal of H, i.e. det E_{n,k}(H) vanishes.
bool gradient_ideal_degenerate(const HomogeneousTop& top, int k, const DegeneracyOptions& opts = {});

}  // namespace periodet
