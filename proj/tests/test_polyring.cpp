#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "periodet/critical.hpp"
#include "periodet/error.hpp"
#include "periodet/poly.hpp"
#include "periodet/resultant.hpp"
#include "periodet/roots.hpp"
#include "test_util.hpp"

using namespace periodet;
using periodet::testing::near;
using periodet::testing::random_cplx;

TEST_CASE("monomial basis is lexicographic") {
  const auto b = monomial_basis(2);
  REQUIRE(b.size() == 4);
  CHECK(b[1].l == 0);
  CHECK(b[1].m == 0);
  CHECK(b[2].l == 0);
  CHECK(b[2].m == 1);
  CHECK(b[3].l == 1);
  CHECK(b[3].m == 0);
  CHECK(b[4].d == 2);
  CHECK_THROWS_AS(monomial_basis(0), Error);

  for (int n = 1; n <= 7; ++n) {
    const auto basis = monomial_basis(n);
    for (const auto& e : basis.entries()) {
      CHECK(basis.index(e.l, e.m) == e.j);
      CHECK(e.d == e.l + e.m);
    }
  }
}

TEST_CASE("bivariate polynomial invariants") {
  const BivarPoly zero;
  CHECK(zero.is_zero());
  CHECK_FALSE(zero.degree().has_value());

  // Coefficients far below the largest are pruned.
  const BivarPoly p({{{2, 0}, 1.0}, {{0, 1}, 1e-20}});
  CHECK(p.coeffs().size() == 1);
  CHECK(*p.degree() == 2);

  const BivarPoly q({{{3, 0}, 1.0}, {{1, 2}, 2.0}, {{0, 0}, 5.0}});
  CHECK(*q.degree() == 3);
  CHECK(q.degree_x() == 3);
  CHECK(q.degree_y() == 2);
  CHECK(near(q(cplx(1, 1), cplx(0, 2)), std::pow(cplx(1, 1), 3) + 2.0 * cplx(1, 1) * cplx(-4, 0) + 5.0, 1e-14));
}

TEST_CASE("gradient by the monomial rule") {
  const BivarPoly circle({{{2, 0}, 1.0}, {{0, 2}, 1.0}});
  auto [gx, gy] = gradient(circle);
  CHECK(gx == BivarPoly::monomial(1, 0, 2.0));
  CHECK(gy == BivarPoly::monomial(0, 1, 2.0));

  const BivarPoly h({{{3, 0}, 1.0}, {{0, 3}, 1.0}, {{1, 0}, -3.0}, {{0, 1}, -6.0}});
  auto [hx, hy] = gradient(h);
  CHECK(hx == BivarPoly({{{2, 0}, 3.0}, {{0, 0}, -3.0}}));
  CHECK(hy == BivarPoly({{{0, 2}, 3.0}, {{0, 0}, -6.0}}));

  auto [cx, cy] = gradient(BivarPoly::constant(5.0));
  CHECK(cx.is_zero());
  CHECK(cy.is_zero());
}

TEST_CASE("univariate roots") {
  SUBCASE("x^2 + 1") {
    const UniPoly c{1.0, 0.0, 1.0};
    auto r = root_values(c);
    REQUIRE(r.size() == 2);
    std::sort(r.begin(), r.end(), [](cplx a, cplx b) { return a.imag() < b.imag(); });
    CHECK(near(r[0], cplx(0, -1), 1e-14));
    CHECK(near(r[1], cplx(0, 1), 1e-14));
  }
  SUBCASE("cube roots of unity") {
    const UniPoly c{-1.0, 0.0, 0.0, 1.0};
    const auto r = root_values(c);
    REQUIRE(r.size() == 3);
    for (int k = 0; k < 3; ++k) {
      const cplx w = std::polar(1.0, 2.0 * std::numbers::pi * k / 3.0);
      CHECK(std::any_of(r.begin(), r.end(), [&](cplx z) { return std::abs(z - w) < 1e-13; }));
    }
  }
  SUBCASE("double root is flagged as a cluster") {
    // (x-1)^2 (x-2) = x^3 - 4x^2 + 5x - 2
    const UniPoly c{-2.0, 5.0, -4.0, 1.0};
    const auto r = univariate_roots(c, RootOptions{.tol = 1e-12});
    REQUIRE(r.size() == 3);
    int near_one = 0;
    for (const auto& root : r) {
      if (std::abs(root.value - 1.0) < 1e-6) {
        ++near_one;
        CHECK(root.multiplicity == 2);
      } else {
        CHECK(near(root.value, cplx(2.0), 1e-13));
        CHECK(root.multiplicity == 1);
      }
    }
    CHECK(near_one == 2);
  }
  SUBCASE("degree zero has no roots") {
    const UniPoly c{3.0};
    try {
      (void)univariate_roots(c);
      FAIL("expected no-roots");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NoRoots);
    }
  }
  SUBCASE("random polynomials: residual and count") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
      const int deg = 2 + trial % 12;
      UniPoly c(static_cast<std::size_t>(deg + 1));
      for (auto& v : c) v = random_cplx(rng);
      const auto r = univariate_roots(c);
      CHECK(static_cast<int>(r.size()) == deg);
      for (const auto& root : r) CHECK(root.residual <= 1e-12);
    }
  }
}

TEST_CASE("sylvester resultant, p rows first") {
  // p = y^2 - x, q = y - 1: Res = 1 - x (3x3 determinant by hand).
  const BivarPoly p({{{0, 2}, 1.0}, {{1, 0}, -1.0}});
  const BivarPoly q({{{0, 1}, 1.0}, {{0, 0}, -1.0}});
  const auto r = resultant_y(p, q);
  REQUIRE(r.size() == 2);
  CHECK(near(r[0], cplx(1.0), 1e-13));
  CHECK(near(r[1], cplx(-1.0), 1e-13));

  // p = y - x, q = y + x: det [[1, -x], [1, x]] = 2x.
  const auto r2 = resultant_y(BivarPoly({{{0, 1}, 1.0}, {{1, 0}, -1.0}}), BivarPoly({{{0, 1}, 1.0}, {{1, 0}, 1.0}}));
  REQUIRE(r2.size() == 2);
  CHECK(near(r2[0], cplx(0.0), 1e-13));
  CHECK(near(r2[1], cplx(2.0), 1e-13));

  // Common factor: identically zero.
  const BivarPoly s({{{0, 2}, 1.0}, {{0, 0}, 1.0}});
  const auto r3 = resultant_y(s, s);
  CHECK(uni::degree(r3) == -1);

  CHECK_THROWS_AS(resultant_y(BivarPoly(), q), Error);
}

TEST_CASE("resultant oracle: product over the roots of p") {
  // Res(p, q) = a_m^deg(q) * prod_{p(alpha)=0} q(alpha), evaluated pointwise.
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    BivarPoly::CoeffMap pm, qm;
    const int dp = 1 + trial % 3;
    const int dq = 1 + (trial / 3) % 3;
    for (int i = 0; i <= dp; ++i)
      for (int j = 0; i + j <= dp; ++j) pm[{i, j}] = random_cplx(rng);
    for (int i = 0; i <= dq; ++i)
      for (int j = 0; i + j <= dq; ++j) qm[{i, j}] = random_cplx(rng);
    const BivarPoly p(pm), q(qm);
    const auto res = resultant_y(p, q);
    for (int s = 0; s < 3; ++s) {
      const cplx x0 = random_cplx(rng);
      const UniPoly py = p.in_y(x0);
      const UniPoly qy = q.in_y(x0);
      cplx oracle = std::pow(py.back(), static_cast<double>(qy.size() - 1));
      for (const auto& alpha : root_values(py)) oracle *= uni::eval(qy, alpha);
      CHECK(near(uni::eval(res, x0), oracle, 1e-9 * std::max(1.0, std::abs(oracle))));
    }
    // Vanishing at x0 iff the fibers share a root.
    const auto xs = root_values(res);
    for (const auto& x0 : xs) {
      const auto pr = root_values(p.in_y(x0), RootOptions{.tol = 1e-9});
      const auto qr = root_values(q.in_y(x0), RootOptions{.tol = 1e-9});
      double best = 1e300;
      for (const auto& a : pr)
        for (const auto& b : qr) best = std::min(best, std::abs(a - b));
      CHECK(best < 1e-6);
    }
  }
}

TEST_CASE("critical data") {
  SUBCASE("x^2 + y^2") {
    const auto cd = critical_data(BivarPoly({{{2, 0}, 1.0}, {{0, 2}, 1.0}}));
    REQUIRE(cd.points.size() == 1);
    CHECK(std::abs(cd.points[0].first) < 1e-14);
    CHECK(std::abs(cd.points[0].second) < 1e-14);
    CHECK(std::abs(cd.values[0]) < 1e-14);
  }
  SUBCASE("x^3 + y^3 - 3x - 6y") {
    const BivarPoly h({{{3, 0}, 1.0}, {{0, 3}, 1.0}, {{1, 0}, -3.0}, {{0, 1}, -6.0}});
    const auto cd = critical_data(h);
    REQUIRE(cd.values.size() == 4);
    const double r2 = std::sqrt(2.0);
    for (const double expect : {-2 - 4 * r2, -2 + 4 * r2, 2 - 4 * r2, 2 + 4 * r2})
      CHECK(std::any_of(cd.values.begin(), cd.values.end(), [&](cplx v) { return std::abs(v - expect) < 1e-10; }));
    for (std::size_t k = 0; k < 4; ++k) {
      CHECK(cd.residuals[k] < 1e-10);
      CHECK(near(h(cd.points[k].first, cd.points[k].second), cd.values[k], 1e-12));
    }
  }
  SUBCASE("Fermat: one degenerate point at the origin") {
    for (int n = 1; n <= 3; ++n) {
      const auto cd = critical_data(HomogeneousTop::fermat(n).as_poly());
      REQUIRE(static_cast<int>(cd.values.size()) == n * n);
      for (const auto& v : cd.values) CHECK(std::abs(v) < 1e-12);
      CHECK(cd.degenerate == (n > 1));
    }
  }
  SUBCASE("random generic h: gradient and value consistency") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
      const int n = 1 + trial % 3;
      BivarPoly::CoeffMap m;
      for (int i = 0; i <= n + 1; ++i)
        for (int j = 0; i + j <= n + 1; ++j) m[{i, j}] = random_cplx(rng);
      const BivarPoly h(m);
      const auto cd = critical_data(h);
      REQUIRE(static_cast<int>(cd.points.size()) == n * n);
      auto [hx, hy] = gradient(h);
      for (std::size_t k = 0; k < cd.points.size(); ++k) {
        const auto [x, y] = cd.points[k];
        CHECK(std::hypot(std::abs(hx(x, y)), std::abs(hy(x, y))) < 1e-9);
        CHECK(near(h(x, y), cd.values[k], 1e-9));
      }
    }
  }
}

TEST_CASE("discriminant sigma") {
  CHECK(near(discriminant_sigma(HomogeneousTop(1, {1.0, 0.0, 1.0})).value, cplx(-4.0), 1e-13));
  for (int n = 1; n <= 6; ++n) {
    const double expect = ((n * (n + 1) / 2) % 2 == 0 ? 1.0 : -1.0) * std::pow(n + 1.0, n + 1);
    CHECK(near(discriminant_sigma(HomogeneousTop::fermat(n)).value, cplx(expect), 1e-10 * std::abs(expect)));
  }
  CHECK(near(discriminant_sigma(HomogeneousTop::fermat(2)).value, cplx(-27.0), 1e-12));

  // (x - y)(x - 2y)(x - 3y) = x^3 - 6x^2 y + 11 x y^2 - 6 y^3
  CHECK(near(discriminant_sigma(HomogeneousTop(2, {1.0, -6.0, 11.0, -6.0})).value, cplx(4.0), 1e-12));

  // Squared linear factor: (x - y)^2 (x + y) = x^3 - x^2 y - x y^2 + y^3.
  const auto sq = discriminant_sigma(HomogeneousTop(2, {1.0, -1.0, -1.0, 1.0}));
  CHECK(std::abs(sq.value) < 1e-12);
  CHECK_FALSE(sq.generic);

  try {
    (void)discriminant_sigma(HomogeneousTop(2, {0.0, 1.0, 0.0, 1.0}));
    FAIL("expected unsupported-chart");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnsupportedChart);
  }

  SUBCASE("homogeneity of degree 2n") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 40; ++trial) {
      const int n = 1 + trial % 5;
      std::vector<cplx> h(static_cast<std::size_t>(n + 2));
      for (auto& v : h) v = random_cplx(rng);
      const HomogeneousTop top(n, h);
      const cplx b = random_cplx(rng);
      const cplx lhs = discriminant_sigma(top.scaled(b)).value;
      const cplx rhs = std::pow(b, 2 * n) * discriminant_sigma(top).value;
      CHECK(near(lhs, rhs, 1e-12 * std::abs(rhs)));
    }
  }
}
