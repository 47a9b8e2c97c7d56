#include "periodet/poly.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "periodet/error.hpp"

namespace periodet {

namespace uni {

cplx eval(std::span<const cplx> c, cplx x) {
  cplx acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::pair<cplx, cplx> eval_with_derivative(std::span<const cplx> c, cplx x) {
  cplx p = 0.0;
  cplx dp = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    dp = dp * x + p;
    p = p * x + *it;
  }
  return {p, dp};
}

UniPoly derivative(std::span<const cplx> c) {
  if (c.size() <= 1) return {cplx(0.0)};
  UniPoly d(c.size() - 1);
  for (std::size_t k = 1; k < c.size(); ++k) d[k - 1] = c[k] * static_cast<double>(k);
  return d;
}

UniPoly trimmed(UniPoly c, double rel) {
  double big = 0.0;
  for (const auto& v : c) big = std::max(big, std::abs(v));
  const double cut = rel * big;
  while (!c.empty() && (c.back() == cplx(0.0) || std::abs(c.back()) <= cut)) c.pop_back();
  return c;
}

int degree(std::span<const cplx> c) {
  for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k)
    if (c[static_cast<std::size_t>(k)] != cplx(0.0)) return k;
  return -1;
}

UniPoly multiply(std::span<const cplx> a, std::span<const cplx> b) {
  if (a.empty() || b.empty()) return {};
  UniPoly r(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k) r[i + k] += a[i] * b[k];
  return r;
}

}  // namespace uni

MonomialBasis::MonomialBasis(int n) : n_(n) {
  if (n < 1) throw Error(ErrorKind::InvalidParameter, "monomial basis needs n >= 1, got " + std::to_string(n));
  entries_.reserve(static_cast<std::size_t>(n * n));
  for (int l = 0; l < n; ++l)
    for (int m = 0; m < n; ++m) entries_.push_back({l * n + m + 1, l, m, l + m});
}

int MonomialBasis::index(int l, int m) const {
  if (l < 0 || m < 0 || l >= n_ || m >= n_)
    throw Error(ErrorKind::InvalidParameter, "pair (l, m) outside 0..n-1");
  return l * n_ + m + 1;
}

MonomialBasis monomial_basis(int n) { return MonomialBasis(n); }

HomogeneousTop::HomogeneousTop(int n, std::vector<cplx> coeffs) : n_(n), h_(std::move(coeffs)) {
  if (n < 1) throw Error(ErrorKind::InvalidParameter, "homogeneous top needs n >= 1");
  if (h_.size() != static_cast<std::size_t>(n + 2))
    throw Error(ErrorKind::InvalidParameter, "homogeneous top of degree n+1 needs n+2 coefficients");
  if (std::all_of(h_.begin(), h_.end(), [](cplx v) { return v == cplx(0.0); }))
    throw Error(ErrorKind::InvalidParameter, "homogeneous top is identically zero");
}

double HomogeneousTop::scale() const {
  double s = 0.0;
  for (const auto& v : h_) s = std::max(s, std::abs(v));
  return s;
}

HomogeneousTop HomogeneousTop::scaled(cplx b) const {
  auto c = h_;
  for (auto& v : c) v *= b;
  return HomogeneousTop(n_, std::move(c));
}

BivarPoly HomogeneousTop::as_poly() const {
  BivarPoly::CoeffMap m;
  for (int s = 0; s <= n_ + 1; ++s)
    if (h_[static_cast<std::size_t>(s)] != cplx(0.0)) m[{n_ + 1 - s, s}] = h_[static_cast<std::size_t>(s)];
  return BivarPoly(std::move(m));
}

HomogeneousTop HomogeneousTop::fermat(int n) {
  std::vector<cplx> c(static_cast<std::size_t>(n + 2), 0.0);
  c.front() = 1.0;
  c.back() = 1.0;
  return HomogeneousTop(n, std::move(c));
}

BivarPoly::BivarPoly(CoeffMap coeffs) {
  double big = 0.0;
  for (const auto& [k, v] : coeffs) {
    if (k.first < 0 || k.second < 0) throw Error(ErrorKind::InvalidParameter, "negative exponent");
    big = std::max(big, std::abs(v));
  }
  const double cut = kPruneRel * big;
  for (const auto& [k, v] : coeffs) {
    if (v == cplx(0.0) || std::abs(v) <= cut) continue;
    coeffs_.emplace(k, v);
    const int d = k.first + k.second;
    if (!degree_ || d > *degree_) degree_ = d;
  }
}

BivarPoly BivarPoly::constant(cplx c) { return BivarPoly(CoeffMap{{{0, 0}, c}}); }

BivarPoly BivarPoly::monomial(int i, int j, cplx c) { return BivarPoly(CoeffMap{{{i, j}, c}}); }

int BivarPoly::degree_x() const {
  int d = -1;
  for (const auto& [k, v] : coeffs_) d = std::max(d, k.first);
  return d;
}

int BivarPoly::degree_y() const {
  int d = -1;
  for (const auto& [k, v] : coeffs_) d = std::max(d, k.second);
  return d;
}

cplx BivarPoly::coeff(int i, int j) const {
  auto it = coeffs_.find({i, j});
  return it == coeffs_.end() ? cplx(0.0) : it->second;
}

double BivarPoly::scale() const {
  double s = 0.0;
  for (const auto& [k, v] : coeffs_) s = std::max(s, std::abs(v));
  return s;
}

cplx BivarPoly::operator()(cplx x, cplx y) const { return uni::eval(in_y(x), y); }

UniPoly BivarPoly::in_y(cplx x) const {
  const int dy = degree_y();
  if (dy < 0) return {cplx(0.0)};
  UniPoly c(static_cast<std::size_t>(dy + 1), 0.0);
  // Powers of x are built incrementally; keys are sorted by x exponent.
  cplx xp = 1.0;
  int cur = 0;
  for (const auto& [k, v] : coeffs_) {
    while (cur < k.first) {
      xp *= x;
      ++cur;
    }
    c[static_cast<std::size_t>(k.second)] += v * xp;
  }
  return c;
}

UniPoly BivarPoly::in_x(cplx y) const {
  const int dx = degree_x();
  if (dx < 0) return {cplx(0.0)};
  UniPoly c(static_cast<std::size_t>(dx + 1), 0.0);
  for (const auto& [k, v] : coeffs_) c[static_cast<std::size_t>(k.first)] += v * std::pow(y, k.second);
  return c;
}

BivarPoly BivarPoly::dx() const {
  CoeffMap m;
  for (const auto& [k, v] : coeffs_)
    if (k.first > 0) m[{k.first - 1, k.second}] += v * static_cast<double>(k.first);
  return BivarPoly(std::move(m));
}

BivarPoly BivarPoly::dy() const {
  CoeffMap m;
  for (const auto& [k, v] : coeffs_)
    if (k.second > 0) m[{k.first, k.second - 1}] += v * static_cast<double>(k.second);
  return BivarPoly(std::move(m));
}

HomogeneousTop BivarPoly::top() const {
  if (!degree_ || *degree_ < 2)
    throw Error(ErrorKind::InvalidParameter, "top part needs a polynomial of degree >= 2");
  const int n = *degree_ - 1;
  std::vector<cplx> h(static_cast<std::size_t>(n + 2), 0.0);
  for (int s = 0; s <= n + 1; ++s) h[static_cast<std::size_t>(s)] = coeff(n + 1 - s, s);
  return HomogeneousTop(n, std::move(h));
}

BivarPoly BivarPoly::operator+(const BivarPoly& o) const {
  CoeffMap m = coeffs_;
  for (const auto& [k, v] : o.coeffs_) m[k] += v;
  return BivarPoly(std::move(m));
}

BivarPoly BivarPoly::operator-(const BivarPoly& o) const {
  CoeffMap m = coeffs_;
  for (const auto& [k, v] : o.coeffs_) m[k] -= v;
  return BivarPoly(std::move(m));
}

BivarPoly BivarPoly::operator*(const BivarPoly& o) const {
  CoeffMap m;
  for (const auto& [a, va] : coeffs_)
    for (const auto& [b, vb] : o.coeffs_) m[{a.first + b.first, a.second + b.second}] += va * vb;
  return BivarPoly(std::move(m));
}

BivarPoly BivarPoly::operator*(cplx s) const {
  CoeffMap m = coeffs_;
  for (auto& [k, v] : m) v *= s;
  return BivarPoly(std::move(m));
}

std::pair<BivarPoly, BivarPoly> gradient(const BivarPoly& p) { return {p.dx(), p.dy()}; }

BivarPoly lerp(const BivarPoly& a, const BivarPoly& b, cplx s) {
  if (s == cplx(0.0)) return a;
  if (s == cplx(1.0)) return b;
  BivarPoly::CoeffMap m;
  for (const auto& [k, v] : a.coeffs()) m[k] += (1.0 - s) * v;
  for (const auto& [k, v] : b.coeffs()) m[k] += s * v;
  return BivarPoly(std::move(m));
}

}  // namespace periodet
