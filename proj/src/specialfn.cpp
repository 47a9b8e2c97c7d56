#include "periodet/specialfn.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "periodet/error.hpp"

namespace periodet {

namespace {

constexpr double kPi = std::numbers::pi;

constexpr std::array<double, 9> kLanczos{
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

bool is_pole(cplx z) {
  if (z.real() > 0.5 || std::abs(z.imag()) > 1e-14) return false;
  return std::abs(z.real() - std::round(z.real())) < 1e-14;
}

double log_factorial(int k) { return std::lgamma(static_cast<double>(k) + 1.0); }

double sign_pow(long long e) { return (e % 2 == 0) ? 1.0 : -1.0; }

}  // namespace

cplx gamma(cplx z) {
  if (is_pole(z)) throw Error(ErrorKind::PoleError, "gamma has a pole at " + std::to_string(z.real()));
  if (z.real() < 0.5) return kPi / (std::sin(kPi * z) * gamma(1.0 - z));
  z -= 1.0;
  cplx x = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  const cplx t = z + 7.5;
  return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

cplx beta(cplx a, cplx b) { return gamma(a) * gamma(b) / gamma(a + b); }

RootOfUnity::RootOfUnity(int n) : n_(n) {
  if (n < 1) throw Error(ErrorKind::InvalidParameter, "root of unity needs n >= 1");
  powers_.resize(static_cast<std::size_t>(n + 1));
  for (int k = 0; k <= n; ++k) {
    // Exact values on the axes keep products like (1 - eps^l) free of 1e-17 noise.
    const int q = (4 * k) % (n + 1) == 0 ? (4 * k) / (n + 1) : -1;
    switch (q) {
      case 0: powers_[static_cast<std::size_t>(k)] = {1.0, 0.0}; break;
      case 1: powers_[static_cast<std::size_t>(k)] = {0.0, 1.0}; break;
      case 2: powers_[static_cast<std::size_t>(k)] = {-1.0, 0.0}; break;
      case 3: powers_[static_cast<std::size_t>(k)] = {0.0, -1.0}; break;
      default: powers_[static_cast<std::size_t>(k)] = std::polar(1.0, 2.0 * kPi * k / (n + 1));
    }
  }
}

cplx RootOfUnity::pow(long long k) const {
  const long long m = static_cast<long long>(powers_.size());
  return powers_[static_cast<std::size_t>(((k % m) + m) % m)];
}

double fermat_Ij(int n, int j) {
  const MonomialBasis basis(n);
  if (j < 1 || j > basis.size()) throw Error(ErrorKind::InvalidParameter, "form index out of range");
  const auto& e = basis[j];
  const double a = (e.l + 1.0) / (n + 1.0);
  const double b = (e.m + 1.0) / (n + 1.0) + 1.0;
  return beta(a, b).real() / (n + 1.0);
}

TwoRoute fermat_IP(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidParameter, "IP needs n >= 1");
  double product = 1.0;
  for (int j = 1; j <= n * n; ++j) product *= fermat_Ij(n, j);
  double log_closed = 0.5 * n * (n + 1) * std::log(2.0 * kPi) - 0.5 * (n * n + 4.0 * n + 3.0) * std::log(n + 1.0) +
                      n * log_factorial(n + 1);
  for (int m = 1; m <= n - 1; ++m) log_closed -= log_factorial(m + n + 1);
  return {product, std::exp(log_closed)};
}

TwoRoute sigma_value(int n) {
  const RootOfUnity eps(n);
  cplx product = 1.0;
  for (int k = 1; k <= n + 1; ++k)
    for (int l = 1; l < k; ++l) {
      const cplx d = eps.pow(k) - eps.pow(l);
      product *= d * d;
    }
  const double closed = sign_pow(static_cast<long long>(n) * (n - 1) / 2) * std::pow(n + 1.0, n + 1);
  return {product, closed};
}

GMatrix::GMatrix(int n) : n_(n) {
  const MonomialBasis basis(n);
  const RootOfUnity eps(n);
  const int size = n * n;
  g_.resize(size, size);
  for (int j = 1; j <= size; ++j)
    for (int r = 1; r <= size; ++r) g_(j - 1, r - 1) = eps.pow(exponent(j, r));
}

int GMatrix::exponent(int j, int r) const {
  const int lj = (j - 1) / n_, mj = (j - 1) % n_;
  const int lr = (r - 1) / n_, mr = (r - 1) % n_;
  return lr * (lj + 1) + mr * (mj + 1);
}

GMatrix build_G(int n) { return GMatrix(n); }

DetGResult det_G(int n) {
  const GMatrix g(n);
  const RootOfUnity eps(n);
  DetGResult out;
  const cplx sigma = sigma_value(n).closed;
  out.det.direct = g.entries().partialPivLu().determinant();
  out.det.closed = std::pow(n + 1.0, -2.0 * n) * std::pow(sigma, n);

  const Eigen::MatrixXcd q = g.leading_block(1);
  const cplx det_q = q.partialPivLu().determinant();
  cplx vdm = 1.0;
  for (int k = 1; k <= n; ++k)
    for (int l = 1; l < k; ++l) vdm *= eps.pow(k) - eps.pow(l);
  out.vandermonde = {det_q, vdm};

  cplx prev = det_q;
  for (int s = 2; s <= n; ++s) {
    const cplx det_s = g.leading_block(s).partialPivLu().determinant();
    cplx factor = 1.0;
    for (int l = 1; l < s; ++l) factor *= eps.pow(s) - eps.pow(l);
    const cplx predicted = std::pow(factor, n) * det_q * prev;
    out.recurrence_residuals.push_back(std::abs(det_s - predicted) / std::abs(det_s));
    prev = det_s;
  }
  return out;
}

cplx roots_of_unity_product(int n) {
  const RootOfUnity eps(n);
  cplx p = 1.0;
  for (int l = 1; l <= n; ++l) p *= 1.0 - eps.pow(l);
  return p;
}

double gauss_legendre_check(int n, cplx z) {
  if (n < 1) throw Error(ErrorKind::InvalidParameter, "multiplication formula needs n >= 1");
  cplx lhs = 1.0;
  for (int l = 0; l <= n; ++l) lhs *= gamma(z + static_cast<double>(l) / (n + 1));
  const cplx rhs = std::pow(2.0 * kPi, n / 2.0) * std::pow(cplx(n + 1.0), 0.5 - (n + 1.0) * z) * gamma((n + 1.0) * z);
  return std::abs(lhs - rhs) / std::abs(rhs);
}

SignAmbiguous fermat_C(int n) {
  const cplx sigma = sigma_value(n).closed;
  return {std::pow(sigma, n) * fermat_IP(n).closed, "sigma^n * IP (Fermat top)"};
}

}  // namespace periodet
