#pragma once
// Independent checks for the closed-form side: random tops, the SVD rank test
// for gradient-ideal degeneracy, and tops placed on a root of det E.

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include <Eigen/SVD>

#include "periodet/closedform.hpp"
#include "periodet/resultant.hpp"
#include "periodet/roots.hpp"
#include "test_util.hpp"

namespace periodet::testing {

inline HomogeneousTop random_top(int n, std::mt19937_64& rng) {
  std::vector<cplx> h(static_cast<std::size_t>(n + 2));
  for (auto& v : h) v = random_cplx(rng);
  return HomogeneousTop(n, h);
}

/// Coefficients of x^(k-1-i) y^i H_x and H_y on the degree-(n+k-1) monomials
/// x^a y^b with a >= n or b >= n, built by polynomial multiplication.
inline Eigen::MatrixXcd gradient_slice_matrix(const HomogeneousTop& top, int k) {
  const int n = top.n();
  const int deg = n + k - 1;
  const BivarPoly h = top.as_poly();
  std::vector<std::pair<int, int>> cols;
  for (int b = 0; b <= deg; ++b) {
    const int a = deg - b;
    if (a >= n || b >= n) cols.emplace_back(a, b);
  }
  std::vector<BivarPoly> rows;
  for (int i = 0; i < k; ++i) rows.push_back(BivarPoly::monomial(k - 1 - i, i) * h.dx());
  for (int i = 0; i < k; ++i) rows.push_back(BivarPoly::monomial(k - 1 - i, i) * h.dy());
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r].coeff(cols[c].first, cols[c].second);
  return m;
}

inline bool rank_oracle_degenerate(const HomogeneousTop& top, int k) {
  const Eigen::MatrixXcd m = gradient_slice_matrix(top, k);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& s = svd.singularValues();
  const Eigen::Index full = 2 * k;
  if (m.rows() < full || m.cols() < full) return true;
  return s(full - 1) < 1e-9 * s(0);
}

/// Moves one coefficient of H onto a root of det E_{n,k}, keeping Sigma != 0.
inline HomogeneousTop make_degenerate(int n, int k, std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 20; ++attempt) {
    auto h = random_top(n, rng).coeffs();
    const int s = 1 + attempt % n;  // interior coefficient
    // det E is a polynomial of degree <= 2k in h_s; interpolate it.
    const int pts = 2 * k + 1;
    Eigen::MatrixXcd vdm(pts, pts);
    Eigen::VectorXcd vals(pts);
    for (int p = 0; p < pts; ++p) {
      const cplx z = std::polar(1.0, 2.0 * std::numbers::pi * p / pts);
      h[static_cast<std::size_t>(s)] = z;
      vals(p) = build_E(HomogeneousTop(n, h), k).det();
      for (int c = 0; c < pts; ++c) vdm(p, c) = std::pow(z, c);
    }
    const Eigen::VectorXcd coeffs = vdm.partialPivLu().solve(vals);
    UniPoly poly(coeffs.data(), coeffs.data() + coeffs.size());
    poly = uni::trimmed(poly, 1e-12);
    if (poly.size() < 2) continue;
    for (const auto& root : root_values(poly)) {
      auto cand = h;
      cand[static_cast<std::size_t>(s)] = newton_polish(poly, root);
      const HomogeneousTop top(n, cand);
      if (discriminant_sigma(top).generic) return top;
    }
  }
  throw std::runtime_error("could not construct a degenerate top");
}

}  // namespace periodet::testing
