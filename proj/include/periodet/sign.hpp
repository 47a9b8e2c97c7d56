#pragma once

#include <complex>
#include <string>

namespace periodet {

/// A quantity known only up to multiplication by -1 (orientation of the
/// homology basis, branch of a square root).
struct SignAmbiguous {
  std::complex<double> value;
  std::string note;

  /// +1 or -1: the sign s minimizing |other - s * value|.
  int matching_sign(std::complex<double> other) const {
    return std::abs(other - value) <= std::abs(other + value) ? 1 : -1;
  }

  /// min over s = +-1 of |other - s * value| / |value|.
  double rel_error(std::complex<double> other) const {
    return std::abs(other - static_cast<double>(matching_sign(other)) * value) / std::abs(value);
  }

  bool matches(std::complex<double> other, double rel_tol) const { return rel_error(other) <= rel_tol; }
};

}  // namespace periodet
