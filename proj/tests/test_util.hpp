#pragma once

#include <complex>
#include <random>

namespace periodet::testing {

inline bool near(std::complex<double> a, std::complex<double> b, double tol) { return std::abs(a - b) <= tol; }

inline bool rel_near(std::complex<double> a, std::complex<double> b, double rel) {
  return std::abs(a - b) <= rel * std::abs(b);
}

/// Up to multiplication by -1.
inline double rel_err_up_to_sign(std::complex<double> a, std::complex<double> b) {
  return std::min(std::abs(a - b), std::abs(a + b)) / std::abs(b);
}

/// Uniform in the square [-1, 1]^2 of the complex plane.
inline std::complex<double> random_cplx(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double re = u(rng);
  return {re, u(rng)};
}

}  // namespace periodet::testing
