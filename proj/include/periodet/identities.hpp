#pragma once

#include <string>
#include <vector>

namespace periodet {

struct IdentityCheck {
  std::string name;
  std::string statement;
  double residual = 0.0;  // relative
  bool pass = false;
};

/// Every closed-form identity behind the Fermat determinant, each evaluated
/// along two independent routes for the given n. A check passes when its
/// relative residual is below tol.
std::vector<IdentityCheck> identity_suite(int n, double tol = 1e-9);

}  // namespace periodet
