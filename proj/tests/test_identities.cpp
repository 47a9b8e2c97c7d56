#include "doctest.h"
#include "periodet/error.hpp"
#include "periodet/identities.hpp"

using namespace periodet;

TEST_CASE("every identity holds for n up to 6") {
  for (int n = 1; n <= 6; ++n) {
    CAPTURE(n);
    const auto checks = identity_suite(n);
    CHECK(checks.size() >= 10);
    for (const auto& c : checks) {
      CAPTURE(c.name);
      CHECK(c.pass);
      CHECK(c.residual < 1e-9);
      CHECK_FALSE(c.statement.empty());
    }
  }
}

TEST_CASE("a tolerance below the residuals fails the affected checks") {
  const auto checks = identity_suite(4, 1e-300);
  bool any_fail = false;
  for (const auto& c : checks) any_fail = any_fail || (!c.pass && c.residual > 1e-300);
  CHECK(any_fail);
  CHECK_THROWS_AS(identity_suite(0), Error);
}
