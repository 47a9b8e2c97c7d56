#include "periodet/closedform.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>

#include "periodet/error.hpp"
#include "periodet/resultant.hpp"

namespace periodet {

namespace {

void check_k(int n, int k) {
  if (n < 2 || k < 1 || k > n - 1)
    throw Error(ErrorKind::InvalidParameter,
                "k = " + std::to_string(k) + " outside 1..n-1 for n = " + std::to_string(n));
}

/// log of m! : exact through 20!, log-gamma beyond.
double log_factorial(int m) {
  if (m <= 20) {
    std::uint64_t f = 1;
    for (int i = 2; i <= m; ++i) f *= static_cast<std::uint64_t>(i);
    return std::log(static_cast<double>(f));
  }
  return std::lgamma(m + 1.0);
}

}  // namespace

BlockMatrixE build_E(const HomogeneousTop& top, int k) {
  const int n = top.n();
  check_k(n, k);
  Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(2 * k, 2 * k);
  for (int i = 0; i < k; ++i) {
    for (int c = i; c < k; ++c) {
      const int d = c - i;
      e(i, c) = static_cast<double>(n + 1 - d) * top[d];           // A
      e(k + i, c) = static_cast<double>(d + 1) * top[d + 1];       // C
    }
    for (int c = 0; c <= i; ++c) {
      const int d = i - c;
      e(i, k + c) = static_cast<double>(d + 1) * top[n - d];        // B
      e(k + i, k + c) = static_cast<double>(n + 1 - d) * top[n + 1 - d];  // D
    }
  }
  return {n, k, std::move(e)};
}

DefOneMatrix build_A(int k, const HomogeneousTop& top, const std::vector<BivarPoly>& q) {
  const int n = top.n();
  check_k(n, k);
  if (static_cast<int>(q.size()) != n - k)
    throw Error(ErrorKind::InvalidParameter, "Definition matrix needs n-k = " + std::to_string(n - k) + " polynomials");
  const int deg = n + k - 1;
  for (const auto& p : q) {
    if (p.is_zero()) throw Error(ErrorKind::InvalidParameter, "zero polynomial in q");
    for (const auto& [key, v] : p.coeffs())
      if (key.first + key.second != deg)
        throw Error(ErrorKind::InvalidParameter, "q must be homogeneous of degree n+k-1 = " + std::to_string(deg));
  }

  const BivarPoly h = top.as_poly();
  const BivarPoly hx = h.dx();
  const BivarPoly hy = h.dy();
  const BivarPoly y = BivarPoly::monomial(0, 1);

  std::vector<BivarPoly> rows;
  rows.reserve(static_cast<std::size_t>(n + k));
  for (const auto& p : q) rows.push_back((y * p).dy());
  for (int j = n - k + 1; j <= n; ++j) rows.push_back(BivarPoly::monomial(n - j, j - n + k - 1) * hx);
  for (int j = n + 1; j <= n + k; ++j) rows.push_back(BivarPoly::monomial(k - j + n, j - n - 1) * hy);

  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n + k, n + k);
  for (int r = 0; r < n + k; ++r)
    for (int s = 1; s <= n + k; ++s) a(r, s - 1) = rows[static_cast<std::size_t>(r)].coeff(n + k - s, s - 1);
  return {n, k, std::move(a)};
}

std::vector<BivarPoly> canonical_q(int n, int k) {
  check_k(n, k);
  std::vector<BivarPoly> out;
  const MonomialBasis basis(n);
  for (const auto& e : basis.entries())
    if (e.d == n + k - 1) out.push_back(BivarPoly::monomial(e.l, e.m));
  return out;
}

cplx c_constant(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidParameter, "c_n needs n >= 1");
  const double q = n * (3.0 * n - 1.0) / 4.0;
  double log_mag = 0.5 * n * (n + 1) * std::log(2.0 * std::numbers::pi) +
                   0.5 * (static_cast<double>(n) * n + n - 4.0) * std::log(n + 1.0) + n * log_factorial(n + 1);
  for (int m = 1; m <= n - 1; ++m) log_mag -= log_factorial(m + n + 1);
  if (log_mag > std::log(std::numeric_limits<double>::max()) || log_mag < std::log(std::numeric_limits<double>::min()))
    throw Error(ErrorKind::RangeError, "c_n out of double range for n = " + std::to_string(n));
  // exp(i pi q): q is a multiple of 1/4, take the angle modulo 2.
  const double angle = std::fmod(q, 2.0) * std::numbers::pi;
  cplx phase = std::polar(1.0, angle);
  if (std::fmod(q, 0.5) == 0.0) phase = {std::round(phase.real()), std::round(phase.imag())};
  return phase * std::exp(log_mag);
}

SignAmbiguous C_of_H(const HomogeneousTop& top) {
  const int n = top.n();
  const SigmaResult sigma = discriminant_sigma(top);
  if (!sigma.generic) throw Error(ErrorKind::NongenericInput, "Sigma(H) vanishes: H has a repeated linear factor");
  cplx product = 1.0;
  for (int k = 1; k <= n - 1; ++k) product *= build_E(top, k).det();
  const cplx power = std::exp((0.5 - n) * std::log(sigma.value));
  return {c_constant(n) * power * product, "c_n Sigma^(1/2-n) prod det E, principal branch"};
}

bool gradient_ideal_degenerate(const HomogeneousTop& top, int k, const DegeneracyOptions& opts) {
  const auto e = build_E(top, k);
  const double scale = e.entries.cwiseAbs().maxCoeff();
  return std::abs(e.det()) < opts.rel * std::pow(scale, 2 * k);
}

}  // namespace periodet
