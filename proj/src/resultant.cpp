#include "periodet/resultant.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "periodet/error.hpp"

namespace periodet {

cplx sylvester_resultant(std::span<const cplx> p, std::span<const cplx> q) {
  if (p.empty() || q.empty()) throw Error(ErrorKind::InvalidParameter, "empty coefficient vector");
  const int m = static_cast<int>(p.size()) - 1;
  const int n = static_cast<int>(q.size()) - 1;
  const int size = m + n;
  if (size == 0) return 1.0;
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(size, size);
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= m; ++k) s(r, r + k) = p[static_cast<std::size_t>(m - k)];
  for (int r = 0; r < m; ++r)
    for (int k = 0; k <= n; ++k) s(n + r, r + k) = q[static_cast<std::size_t>(n - k)];
  return s.partialPivLu().determinant();
}

UniPoly resultant_y(const BivarPoly& p, const BivarPoly& q) {
  if (p.is_zero() || q.is_zero()) throw Error(ErrorKind::InvalidParameter, "resultant of the zero polynomial");
  const int m = p.degree_y();
  const int n = q.degree_y();
  const int bound = n * std::max(p.degree_x(), 0) + m * std::max(q.degree_x(), 0);
  const int samples = bound + 1;
  std::vector<cplx> values(static_cast<std::size_t>(samples));
  for (int k = 0; k < samples; ++k) {
    const cplx x = std::polar(1.0, 2.0 * std::numbers::pi * k / samples);
    values[static_cast<std::size_t>(k)] = sylvester_resultant(p.in_y(x), q.in_y(x));
  }
  UniPoly coeffs(static_cast<std::size_t>(samples), 0.0);
  for (int j = 0; j < samples; ++j) {
    cplx acc = 0.0;
    for (int k = 0; k < samples; ++k)
      acc += values[static_cast<std::size_t>(k)] * std::polar(1.0, -2.0 * std::numbers::pi * ((j * k) % samples) / samples);
    coeffs[static_cast<std::size_t>(j)] = acc / static_cast<double>(samples);
  }
  double big = 0.0;
  for (const auto& c : coeffs) big = std::max(big, std::abs(c));
  // Hadamard-type bound on |Res| over the unit circle; far below it the
  // resultant is rounding noise of an identically zero one.
  auto l1 = [](const BivarPoly& f) {
    double acc = 0.0;
    for (const auto& [key, v] : f.coeffs()) acc += std::abs(v);
    return acc;
  };
  const double hadamard = std::pow(l1(p), n) * std::pow(l1(q), m);
  if (big <= 1e-12 * hadamard) big = std::numeric_limits<double>::infinity();
  for (auto& c : coeffs)
    if (std::abs(c) <= 1e-11 * big) c = 0.0;
  UniPoly out = uni::trimmed(std::move(coeffs));
  if (out.empty()) out.push_back(0.0);
  return out;
}

cplx univariate_discriminant(std::span<const cplx> c) {
  const UniPoly f = uni::trimmed(UniPoly(c.begin(), c.end()));
  if (f.size() < 2) throw Error(ErrorKind::InvalidParameter, "discriminant needs degree >= 1");
  const int d = static_cast<int>(f.size()) - 1;
  if (d == 1) return 1.0;
  const UniPoly df = uni::derivative(f);
  const cplx res = sylvester_resultant(f, df);
  const double sign = ((d * (d - 1) / 2) % 2 == 0) ? 1.0 : -1.0;
  return sign * res / f.back();
}

SigmaResult discriminant_sigma(const HomogeneousTop& top, const SigmaOptions& opts) {
  const int n = top.n();
  const double scale = top.scale();
  if (std::abs(top[0]) <= 1e-14 * scale)
    throw Error(ErrorKind::UnsupportedChart,
                "h_0 = 0 (coefficient of x^(n+1) vanishes); apply a linear change of variables first");
  // H(x, 1) = sum_s h_s x^(n+1-s), ascending coefficient k is h_(n+1-k).
  UniPoly f(static_cast<std::size_t>(n + 2));
  for (int k = 0; k <= n + 1; ++k) f[static_cast<std::size_t>(k)] = top[n + 1 - k];
  const cplx res = sylvester_resultant(f, uni::derivative(f));
  const int d = n + 1;
  const double sign = ((d * (d - 1) / 2) % 2 == 0) ? 1.0 : -1.0;
  SigmaResult out;
  out.value = sign * res / top[0];
  out.generic = std::abs(out.value) > opts.generic_rel * std::pow(scale, 2 * n);
  return out;
}

}  // namespace periodet
