#pragma once

#include <complex>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace periodet {

using cplx = std::complex<double>;

/// Dense univariate polynomial, coefficients in ascending order of power.
using UniPoly = std::vector<cplx>;

namespace uni {

cplx eval(std::span<const cplx> c, cplx x);

/// Value together with first derivative, one Horner pass.
std::pair<cplx, cplx> eval_with_derivative(std::span<const cplx> c, cplx x);

UniPoly derivative(std::span<const cplx> c);

/// Drops leading coefficients that are exactly zero or below `rel` times the
/// largest coefficient magnitude.
UniPoly trimmed(UniPoly c, double rel = 0.0);

/// Index of the highest nonzero coefficient, -1 for the zero polynomial.
int degree(std::span<const cplx> c);

UniPoly multiply(std::span<const cplx> a, std::span<const cplx> b);

}  // namespace uni

/// Lexicographic pairs (l, m), 0 <= l, m < n, indexing the n^2 canonical
/// forms x^l y^(m+1) dx. Index j is 1-based: j = l*n + m + 1.
struct MonomialEntry {
  int j;
  int l;
  int m;
  int d;
};

class MonomialBasis {
 public:
  explicit MonomialBasis(int n);

  int n() const { return n_; }
  int size() const { return static_cast<int>(entries_.size()); }
  const MonomialEntry& operator[](int j) const { return entries_.at(j - 1); }
  const std::vector<MonomialEntry>& entries() const { return entries_; }

  int index(int l, int m) const;

 private:
  int n_;
  std::vector<MonomialEntry> entries_;
};

MonomialBasis monomial_basis(int n);

class BivarPoly;

/// Degree-(n+1) homogeneous part, H = sum_s h_s x^(n+1-s) y^s.
class HomogeneousTop {
 public:
  HomogeneousTop(int n, std::vector<cplx> coeffs);

  int n() const { return n_; }
  const std::vector<cplx>& coeffs() const { return h_; }
  cplx operator[](int s) const { return h_.at(static_cast<std::size_t>(s)); }
  double scale() const;

  HomogeneousTop scaled(cplx b) const;
  BivarPoly as_poly() const;

  /// x^(n+1) + y^(n+1).
  static HomogeneousTop fermat(int n);

 private:
  int n_;
  std::vector<cplx> h_;
};

class BivarPoly {
 public:
  using Key = std::pair<int, int>;
  using CoeffMap = std::map<Key, cplx>;

  static constexpr double kPruneRel = 1e-14;

  BivarPoly() = default;
  explicit BivarPoly(CoeffMap coeffs);

  static BivarPoly constant(cplx c);
  static BivarPoly monomial(int i, int j, cplx c = 1.0);

  const CoeffMap& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  std::optional<int> degree() const { return degree_; }
  int degree_x() const;
  int degree_y() const;
  cplx coeff(int i, int j) const;
  double scale() const;

  cplx operator()(cplx x, cplx y) const;

  /// Coefficients of y -> p(x, y), ascending in y, of length degree_y() + 1.
  UniPoly in_y(cplx x) const;
  /// Coefficients of x -> p(x, y), ascending in x, of length degree_x() + 1.
  UniPoly in_x(cplx y) const;

  BivarPoly dx() const;
  BivarPoly dy() const;

  /// Homogeneous component of top total degree.
  HomogeneousTop top() const;

  BivarPoly operator+(const BivarPoly& o) const;
  BivarPoly operator-(const BivarPoly& o) const;
  BivarPoly operator*(const BivarPoly& o) const;
  BivarPoly operator*(cplx s) const;
  BivarPoly operator-() const { return *this * cplx(-1.0); }

  bool operator==(const BivarPoly& o) const { return coeffs_ == o.coeffs_; }

 private:
  CoeffMap coeffs_;
  std::optional<int> degree_;
};

inline BivarPoly operator*(cplx s, const BivarPoly& p) { return p * s; }

std::pair<BivarPoly, BivarPoly> gradient(const BivarPoly& p);

/// (1 - s) a + s b with a complex interpolation parameter.
BivarPoly lerp(const BivarPoly& a, const BivarPoly& b, cplx s);

}  // namespace periodet
