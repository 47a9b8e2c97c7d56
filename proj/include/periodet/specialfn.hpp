#pragma once

#include <Eigen/Dense>
#include <vector>

#include "periodet/poly.hpp"
#include "periodet/sign.hpp"

namespace periodet {

/// Gamma function: Lanczos approximation (g = 7, nine terms) with the
/// reflection formula for Re z < 1/2. About 15 significant digits on the
/// positive real axis. Throws pole-error at non-positive integers.
cplx gamma(cplx z);

/// B(a, b) = Gamma(a) Gamma(b) / Gamma(a + b).
cplx beta(cplx a, cplx b);

/// epsilon = exp(2 pi i / (n+1)) and its powers, reduced mod n+1 so that
/// every power is evaluated directly from its angle.
class RootOfUnity {
 public:
  explicit RootOfUnity(int n);

  int n() const { return n_; }
  cplx value() const { return powers_[1 % powers_.size()]; }
  cplx pow(long long k) const;
  const std::vector<cplx>& powers() const { return powers_; }

 private:
  int n_;
  std::vector<cplx> powers_;
};

/// Values computed along two independent routes.
struct TwoRoute {
  cplx direct;
  cplx closed;
  double rel_diff() const { return std::abs(direct - closed) / std::abs(closed); }
};

/// I_j = int_0^1 x^l (1 - x^(n+1))^((m+1)/(n+1)) dx
///     = B((l+1)/(n+1), (m+1)/(n+1) + 1) / (n+1).
double fermat_Ij(int n, int j);

/// Product of all I_j: direct product versus the factorial closed form.
TwoRoute fermat_IP(int n);

/// sigma = prod_{1<=l<k<=n+1} (eps^k - eps^l)^2: double product versus
/// (-1)^(n(n-1)/2) (n+1)^(n+1).
TwoRoute sigma_value(int n);

/// g_jr = eps^(l(r)(l(j)+1) + m(r)(m(j)+1)) over the lexicographic pairs.
class GMatrix {
 public:
  explicit GMatrix(int n);

  int n() const { return n_; }
  const Eigen::MatrixXcd& entries() const { return g_; }
  /// Q_s: the leading ns x ns block (Q_1 = Q, Q_n = G).
  Eigen::MatrixXcd leading_block(int s) const { return g_.topLeftCorner(n_ * s, n_ * s); }
  /// Exponent of eps in g_jr, 1-based indices.
  int exponent(int j, int r) const;

 private:
  int n_;
  Eigen::MatrixXcd g_;
};

GMatrix build_G(int n);

struct DetGResult {
  TwoRoute det;  // LU determinant versus (n+1)^(-2n) sigma^n
  /// |det Q_s - (prod_{l<s} (eps^s - eps^l))^n det Q det Q_(s-1)| / |det Q_s|, s = 2..n.
  std::vector<double> recurrence_residuals;
  /// det Q versus prod_{1<=l<k<=n} (eps^k - eps^l).
  TwoRoute vandermonde;
};

DetGResult det_G(int n);

/// prod_{l=1}^n (1 - eps^l); equals n+1.
cplx roots_of_unity_product(int n);

/// Relative residual of the multiplication formula
/// prod_{l=0}^n Gamma(z + l/(n+1)) = (2 pi)^(n/2) (n+1)^(1/2 - (n+1) z) Gamma((n+1) z).
double gauss_legendre_check(int n, cplx z);

/// sigma^n * IP, the period determinant of x^(n+1) + y^(n+1) at t = 1.
SignAmbiguous fermat_C(int n);

}  // namespace periodet
