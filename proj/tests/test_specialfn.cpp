#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "periodet/closedform.hpp"
#include "periodet/error.hpp"
#include "periodet/resultant.hpp"
#include "periodet/specialfn.hpp"
#include "test_util.hpp"

using namespace periodet;
using periodet::testing::near;
using periodet::testing::rel_near;
using periodet::testing::tanh_sinh01;

namespace {

constexpr double kPi = std::numbers::pi;

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

TEST_CASE("gamma") {
  CHECK(near(periodet::gamma(1.0), cplx(1.0), 1e-15));
  for (int n = 0; n <= 15; ++n) CHECK(rel_near(periodet::gamma(n + 2.0), cplx(factorial(n + 1)), 1e-13));

  const double oracle_half = periodet::testing::gamma_by_quadrature(0.5);
  CHECK(std::abs(oracle_half - std::sqrt(kPi)) < 1e-12);
  CHECK(rel_near(periodet::gamma(0.5), cplx(oracle_half), 1e-12));

  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> dom(0.05, 20.0);
  for (int trial = 0; trial < 40; ++trial) {
    const double z = dom(rng);
    const double oracle = periodet::testing::gamma_by_quadrature(z);
    CHECK(rel_near(periodet::gamma(z), cplx(oracle), 1e-12));
    CHECK(rel_near(periodet::gamma(z), cplx(std::tgamma(z)), 1e-12));
  }

  // Reflection region.
  CHECK(rel_near(periodet::gamma(-0.5), cplx(-2.0 * std::sqrt(kPi)), 1e-13));

  for (double pole : {0.0, -1.0, -4.0}) {
    try {
      (void)periodet::gamma(pole);
      FAIL("expected pole-error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::PoleError);
    }
  }
}

TEST_CASE("beta") {
  CHECK(near(beta(1.0, 1.0), cplx(1.0), 1e-14));

  const double oracle = tanh_sinh01([](double x, double xc) { return std::pow(x, -0.5) * std::pow(xc, 0.5); });
  CHECK(std::abs(oracle - kPi / 2.0) < 1e-12);
  CHECK(rel_near(beta(0.5, 1.5), cplx(oracle), 1e-12));

  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> dom(0.2, 4.0);
  for (int trial = 0; trial < 30; ++trial) {
    const double a = dom(rng), b = dom(rng);
    const double q = tanh_sinh01([&](double x, double xc) { return std::pow(x, a - 1.0) * std::pow(xc, b - 1.0); });
    CHECK(rel_near(beta(a, b), cplx(q), 1e-10));
    CHECK(rel_near(beta(a, b), periodet::gamma(a) * periodet::gamma(b) / periodet::gamma(a + b), 1e-14));
  }
}

TEST_CASE("fermat I_j matches direct quadrature of its defining integral") {
  CHECK(std::abs(fermat_Ij(1, 1) - kPi / 4.0) < 1e-14);
  CHECK(std::abs(fermat_Ij(2, 1) - beta(1.0 / 3.0, 4.0 / 3.0).real() / 3.0) < 1e-15);

  for (int n = 1; n <= 5; ++n) {
    const MonomialBasis basis(n);
    for (const auto& e : basis.entries()) {
      const double p = (e.m + 1.0) / (n + 1.0);
      // 1 - x^(n+1) = (1 - x)(1 + x + ... + x^n), kept accurate near x = 1.
      const double q = tanh_sinh01([&](double x, double xc) {
        double geom = 0.0;
        for (int i = 0; i <= n; ++i) geom += std::pow(x, i);
        return std::pow(x, e.l) * std::pow(xc * geom, p);
      });
      const double ij = fermat_Ij(n, e.j);
      CHECK(std::abs(ij - q) <= 1e-10 * q);
      CHECK(ij > 0.0);
      CHECK(ij < 1.0);
    }
  }
}

TEST_CASE("IP two routes") {
  const auto ip1 = fermat_IP(1);
  CHECK(std::abs(ip1.closed.real() - kPi / 4.0) < 1e-14);
  CHECK(ip1.rel_diff() < 1e-13);
  CHECK(fermat_IP(2).rel_diff() < 1e-10);
  CHECK(fermat_IP(3).rel_diff() < 1e-9);
  for (int n = 1; n <= 5; ++n) CHECK(fermat_IP(n).rel_diff() < 1e-9);
}

TEST_CASE("sigma two routes and the discriminant relation") {
  CHECK(near(sigma_value(1).direct, cplx(4.0), 1e-13));
  CHECK(near(sigma_value(1).closed, cplx(4.0), 0.0));
  CHECK(near(sigma_value(2).closed, cplx(-27.0), 0.0));
  for (int n = 1; n <= 6; ++n) {
    const auto s = sigma_value(n);
    CHECK(s.rel_diff() < 1e-12);
    const cplx big_sigma = discriminant_sigma(HomogeneousTop::fermat(n)).value;
    const double sign = n % 2 == 0 ? 1.0 : -1.0;
    CHECK(rel_near(big_sigma, sign * s.closed, 1e-12));
  }
}

TEST_CASE("root of unity powers") {
  for (int n = 1; n <= 8; ++n) {
    const RootOfUnity eps(n);
    CHECK(std::abs(std::pow(eps.value(), n + 1) - 1.0) < 1e-14);
    for (int a = 0; a <= n; ++a)
      for (int b = a + 1; b <= n; ++b) CHECK(std::abs(eps.pow(a) - eps.pow(b)) > 1e-3);
    CHECK(eps.pow(-1) == eps.pow(n));
  }
}

TEST_CASE("G matrix") {
  const auto g1 = build_G(1);
  CHECK(g1.entries().rows() == 1);
  CHECK(near(g1.entries()(0, 0), cplx(1.0), 0.0));

  const auto g2 = build_G(2);
  const RootOfUnity eps(2);
  // g_12 = eps^(l(2)(l(1)+1) + m(2)(m(1)+1)) = eps^(0 + 1).
  CHECK(near(g2.entries()(0, 1), eps.value(), 1e-15));
  CHECK(g2.exponent(1, 2) == 1);
  // g_44: (l,m) = (1,1) for both -> 1*2 + 1*2 = 4.
  CHECK(g2.exponent(4, 4) == 4);

  for (int n = 1; n <= 5; ++n) {
    const auto g = build_G(n);
    for (int s = 1; s <= n - 1; ++s)
      for (int j = 1; j <= n; ++j)
        for (int r = 1; r <= n; ++r) CHECK(near(g.entries()(j + s * n - 1, r - 1), g.entries()(j - 1, r - 1), 1e-14));
  }
}

TEST_CASE("det G: LU, closed form, recurrence, Vandermonde") {
  const auto d1 = det_G(1);
  CHECK(near(d1.det.direct, cplx(1.0), 1e-15));
  CHECK(near(d1.det.closed, cplx(1.0), 1e-15));
  CHECK(det_G(2).det.rel_diff() < 1e-12);
  for (int n = 1; n <= 6; ++n) {
    const auto d = det_G(n);
    CHECK(d.det.rel_diff() < 1e-9);
    CHECK(d.vandermonde.rel_diff() < 1e-12);
    CHECK(static_cast<int>(d.recurrence_residuals.size()) == n - 1);
    for (double r : d.recurrence_residuals) CHECK(r < 1e-10);
  }
}

TEST_CASE("product of 1 - eps^l") {
  CHECK(near(roots_of_unity_product(1), cplx(2.0), 1e-15));
  CHECK(near(roots_of_unity_product(2), cplx(3.0), 1e-14));
  CHECK(near(roots_of_unity_product(6), cplx(7.0), 1e-12));
}

TEST_CASE("Gauss-Legendre multiplication formula and its Gamma products") {
  CHECK(gauss_legendre_check(1, 0.5) < 1e-11);
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> dom(0.1, 3.0);
  for (int n = 1; n <= 6; ++n) {
    CHECK(gauss_legendre_check(n, dom(rng)) < 1e-12);
    CHECK(gauss_legendre_check(n, cplx(dom(rng), 0.5)) < 1e-12);
  }
  CHECK_THROWS_AS((void)gauss_legendre_check(2, -1.0 / 3.0), Error);

  for (int n = 1; n <= 4; ++n) {
    const double np1 = n + 1.0;
    CHECK(gauss_legendre_check(n, 1.0 / np1) < 1e-12);
    CHECK(gauss_legendre_check(n, (n + 2.0) / np1) < 1e-12);

    cplx p37 = 1.0, p38 = 1.0;
    for (int l = 0; l < n; ++l) {
      p37 *= periodet::gamma((l + 1.0) / np1);
      p38 *= periodet::gamma((l + 1.0) / np1 + 1.0);
    }
    CHECK(rel_near(p37, std::pow(2 * kPi, n / 2.0) * std::pow(np1, -0.5), 1e-12));
    CHECK(rel_near(p38, std::pow(2 * kPi, n / 2.0) * std::pow(np1, 0.5 - (n + 2)) * factorial(n + 1), 1e-12));

    cplx p39 = 1.0;
    for (int l = 0; l < n; ++l)
      for (int m = 0; m < n; ++m) p39 *= periodet::gamma((l + m + 2.0) / np1 + 1.0);
    double rhs = std::pow(2 * kPi, (n * n - n) / 2.0) * std::pow(np1, -1.5 * (n * n - 1));
    for (int m = 1; m <= n - 1; ++m) rhs *= factorial(m + n + 1);
    CHECK(rel_near(p39, cplx(rhs), 1e-9));
  }
}

TEST_CASE("Fermat constant sigma^n IP") {
  CHECK(near(fermat_C(1).value, cplx(kPi), 1e-13));
  CHECK(rel_near(fermat_C(2).value, 729.0 * fermat_IP(2).direct, 1e-12));
  for (int n = 1; n <= 4; ++n) CHECK(C_of_H(HomogeneousTop::fermat(n)).rel_error(fermat_C(n).value) < 1e-9);
}
