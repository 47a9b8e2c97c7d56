#include "periodet/identities.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "periodet/error.hpp"
#include "periodet/poly.hpp"
#include "periodet/resultant.hpp"
#include "periodet/specialfn.hpp"

namespace periodet {

namespace {

constexpr double kPi = std::numbers::pi;

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

std::vector<IdentityCheck> identity_suite(int n, double tol) {
  if (n < 1) throw Error(ErrorKind::InvalidParameter, "identity suite needs n >= 1");
  const double np1 = n + 1.0;
  std::vector<IdentityCheck> out;
  auto add = [&](std::string name, std::string statement, double r) {
    out.push_back({std::move(name), std::move(statement), r, r < tol});
  };

  add("sigma", "prod (eps^k - eps^l)^2 = (-1)^(n(n-1)/2) (n+1)^(n+1)", sigma_value(n).rel_diff());
  {
    const cplx disc = discriminant_sigma(HomogeneousTop::fermat(n)).value;
    const cplx expect = (n % 2 == 0 ? 1.0 : -1.0) * sigma_value(n).closed;
    add("fermat_discriminant", "Sigma(x^(n+1) + y^(n+1)) = (-1)^n sigma", rel(disc, expect));
  }
  add("IP", "prod_j I_j = factorial closed form", fermat_IP(n).rel_diff());

  const DetGResult g = det_G(n);
  add("det_G", "det G = (n+1)^(-2n) sigma^n", g.det.rel_diff());
  add("vandermonde", "det Q = prod (eps^k - eps^l)", g.vandermonde.rel_diff());
  double rec = 0.0;
  for (double r : g.recurrence_residuals) rec = std::max(rec, r);
  add("det_Q_recurrence", "det Q_s = (prod (eps^s - eps^l))^n det Q det Q_(s-1)", rec);

  add("roots_of_unity_product", "prod_{l=1}^n (1 - eps^l) = n+1", rel(roots_of_unity_product(n), np1));

  double mult = 0.0;
  for (const cplx z : {cplx(0.5), cplx(1.0 / np1), cplx((n + 2.0) / np1), cplx(0.3, 0.7), cplx(2.25, -0.4)})
    mult = std::max(mult, gauss_legendre_check(n, z));
  add("multiplication_formula", "prod_l Gamma(z + l/(n+1)) = (2pi)^(n/2) (n+1)^(1/2-(n+1)z) Gamma((n+1)z)", mult);

  {
    cplx p = 1.0, q = 1.0;
    for (int l = 0; l < n; ++l) {
      p *= gamma(cplx((l + 1.0) / np1));
      q *= gamma(cplx((l + 1.0) / np1 + 1.0));
    }
    add("gamma_product", "prod_{l<n} Gamma((l+1)/(n+1)) = (2pi)^(n/2) (n+1)^(-1/2)",
        rel(p, std::pow(2 * kPi, n / 2.0) * std::pow(np1, -0.5)));
    add("gamma_product_shifted", "prod_{l<n} Gamma((l+1)/(n+1) + 1) = (2pi)^(n/2) (n+1)^(1/2-(n+2)) (n+1)!",
        rel(q, std::pow(2 * kPi, n / 2.0) * std::pow(np1, 0.5 - (n + 2.0)) * factorial(n + 1)));
  }
  {
    cplx d = 1.0;
    for (int l = 0; l < n; ++l)
      for (int m = 0; m < n; ++m) d *= gamma(cplx((l + m + 2.0) / np1 + 1.0));
    double f = 1.0;
    for (int m = 1; m <= n - 1; ++m) f *= factorial(m + n + 1);
    const double expect = std::pow(2 * kPi, (n * n - n) / 2.0) * std::pow(np1, -1.5 * (n * n - 1.0)) * f;
    add("gamma_double_product",
        "prod_{l,m<n} Gamma((l+m+2)/(n+1) + 1) = (2pi)^((n^2-n)/2) (n+1)^(-3(n^2-1)/2) prod_{m=1}^{n-1} (m+n+1)!",
        rel(d, expect));
  }
  return out;
}

}  // namespace periodet
