#include "periodet/roots.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

#include "periodet/error.hpp"

namespace periodet {

namespace {
std::atomic<std::uint64_t> g_root_seed{0x5eed};
}  // namespace

std::uint64_t default_root_seed() { return g_root_seed.load(std::memory_order_relaxed); }
void set_default_root_seed(std::uint64_t seed) { g_root_seed.store(seed, std::memory_order_relaxed); }

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double abs_eval(std::span<const cplx> c, double r) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * r + std::abs(*it);
  return acc;
}

double backward_residual(std::span<const cplx> c, cplx z) {
  const double denom = abs_eval(c, std::abs(z));
  return denom == 0.0 ? 0.0 : std::abs(uni::eval(c, z)) / denom;
}

bool at_rounding_level(std::span<const cplx> c, cplx z) { return backward_residual(c, z) <= 16.0 * kEps; }

struct Normalized {
  UniPoly poly;  // zero roots factored out
  int zero_roots = 0;
};

Normalized normalize(std::span<const cplx> c) {
  UniPoly p = uni::trimmed(UniPoly(c.begin(), c.end()));
  if (p.size() <= 1) throw Error(ErrorKind::NoRoots, "polynomial of degree 0 has no roots");
  Normalized out;
  std::size_t first = 0;
  while (first < p.size() && p[first] == cplx(0.0)) ++first;
  out.zero_roots = static_cast<int>(first);
  out.poly.assign(p.begin() + static_cast<std::ptrdiff_t>(first), p.end());
  return out;
}

/// One Aberth sweep; returns the largest relative correction.
double aberth_sweep(std::span<const cplx> c, std::vector<cplx>& z, std::vector<char>& done) {
  double worst = 0.0;
  const std::size_t d = z.size();
  for (std::size_t k = 0; k < d; ++k) {
    if (done[k]) continue;
    auto [p, dp] = uni::eval_with_derivative(c, z[k]);
    if (p == cplx(0.0)) {
      done[k] = 1;
      continue;
    }
    cplx s = 0.0;
    for (std::size_t j = 0; j < d; ++j)
      if (j != k) s += 1.0 / (z[k] - z[j]);
    const cplx ratio = dp == cplx(0.0) ? cplx(0.0) : p / dp;
    cplx w;
    if (dp == cplx(0.0)) {
      w = -1.0 / s;
    } else {
      w = ratio / (1.0 - ratio * s);
    }
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) w = ratio;
    z[k] -= w;
    const double rel = std::abs(w) / (1.0 + std::abs(z[k]));
    worst = std::max(worst, rel);
    if (rel <= 4.0 * kEps || at_rounding_level(c, z[k])) done[k] = 1;
  }
  return worst;
}

std::vector<cplx> aberth(std::span<const cplx> c, std::vector<cplx> z, int max_iterations, bool& converged) {
  std::vector<char> done(z.size(), 0);
  converged = false;
  for (int it = 0; it < max_iterations; ++it) {
    aberth_sweep(c, z, done);
    if (std::all_of(done.begin(), done.end(), [](char f) { return f != 0; })) {
      converged = true;
      break;
    }
  }
  return z;
}

std::vector<cplx> initial_circle(std::span<const cplx> c, std::uint64_t seed) {
  const std::size_t d = c.size() - 1;
  // Geometric mean of root moduli, nudged so no start lands on a symmetric axis.
  const double radius = std::pow(std::abs(c.front() / c.back()), 1.0 / static_cast<double>(d));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double offset = 2.0 * std::numbers::pi * unit(rng);
  std::vector<cplx> z(d);
  for (std::size_t k = 0; k < d; ++k) {
    const double ang = offset + 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(d);
    const double r = (radius > 0.0 ? radius : 1.0) * (1.0 + 0.05 * unit(rng));
    z[k] = std::polar(r, ang);
  }
  return z;
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t a) {
  while (parent[a] != a) {
    parent[a] = parent[parent[a]];
    a = parent[a];
  }
  return a;
}

}  // namespace

cplx newton_polish(std::span<const cplx> c, cplx z, double tol, int max_iterations) {
  double last = std::numeric_limits<double>::infinity();
  for (int it = 0; it < max_iterations; ++it) {
    auto [p, dp] = uni::eval_with_derivative(c, z);
    if (p == cplx(0.0) || dp == cplx(0.0)) break;
    const cplx step = p / dp;
    const double size = std::abs(step);
    if (!(size < last) && it > 2) break;
    z -= step;
    last = size;
    if (size <= tol * (1.0 + std::abs(z))) break;
  }
  return z;
}

std::vector<Root> univariate_roots(std::span<const cplx> coeffs, const RootOptions& opts) {
  const Normalized norm = normalize(coeffs);
  const UniPoly full = uni::trimmed(UniPoly(coeffs.begin(), coeffs.end()));
  std::vector<cplx> z(static_cast<std::size_t>(norm.zero_roots), cplx(0.0));

  if (norm.poly.size() > 1) {
    const std::span<const cplx> c(norm.poly);
    bool converged = false;
    auto found = aberth(c, initial_circle(c, opts.seed), opts.max_iterations, converged);
    if (!converged) {
      // A second start usually escapes the rare symmetric stall.
      found = aberth(c, initial_circle(c, opts.seed ^ 0x9e3779b97f4a7c15ULL), opts.max_iterations, converged);
    }
    for (const auto& r : found)
      if (!std::isfinite(r.real()) || !std::isfinite(r.imag()))
        throw Error(ErrorKind::SolverFailure, "root iteration diverged (non-finite iterate)");
    z.insert(z.end(), found.begin(), found.end());
  }

  const std::size_t d = z.size();
  const std::span<const cplx> c(full);
  std::vector<double> bound(d);
  for (std::size_t k = 0; k < d; ++k) {
    auto [p, dp] = uni::eval_with_derivative(c, z[k]);
    bound[k] = p == cplx(0.0) ? 0.0
               : dp == cplx(0.0) ? std::numeric_limits<double>::infinity()
                                 : static_cast<double>(d) * std::abs(p / dp);
  }

  std::vector<std::size_t> parent(d);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = a + 1; b < d; ++b) {
      const double dist = std::abs(z[a] - z[b]);
      const double scale = std::max({1.0, std::abs(z[a]), std::abs(z[b])});
      const double overlap = bound[a] + bound[b];
      if (dist < opts.cluster_rel * scale || (std::isfinite(overlap) && dist < overlap) ||
          (!std::isfinite(overlap) && dist < 1e-6 * scale)) {
        parent[find_root(parent, a)] = find_root(parent, b);
      }
    }
  }

  std::vector<int> cluster_id(d, -1);
  std::vector<int> cluster_size;
  std::vector<int> rep_to_cluster(d, -1);
  for (std::size_t k = 0; k < d; ++k) {
    const std::size_t rep = find_root(parent, k);
    if (rep_to_cluster[rep] < 0) {
      rep_to_cluster[rep] = static_cast<int>(cluster_size.size());
      cluster_size.push_back(0);
    }
    cluster_id[k] = rep_to_cluster[rep];
    ++cluster_size[static_cast<std::size_t>(cluster_id[k])];
  }

  std::vector<Root> out;
  out.reserve(d);
  for (std::size_t k = 0; k < d; ++k) {
    cplx v = z[k];
    const int mult = cluster_size[static_cast<std::size_t>(cluster_id[k])];
    if (mult == 1) {
      double nearest = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < d; ++j)
        if (j != k) nearest = std::min(nearest, std::abs(z[j] - z[k]));
      const cplx polished = newton_polish(c, v);
      if (std::abs(polished - v) < 0.1 * nearest) v = polished;
    }
    auto [p, dp] = uni::eval_with_derivative(c, v);
    Root r;
    r.value = v;
    r.residual = backward_residual(c, v);
    r.error_bound = p == cplx(0.0) ? 0.0
                    : dp == cplx(0.0) ? std::numeric_limits<double>::infinity()
                                      : static_cast<double>(d) * std::abs(p / dp);
    r.cluster = cluster_id[k];
    r.multiplicity = mult;
    if (r.residual > opts.tol)
      throw Error(ErrorKind::SolverFailure, "root " + std::to_string(k) + " residual " + std::to_string(r.residual) +
                                                " above tolerance after polish");
    out.push_back(r);
  }
  return out;
}

std::vector<cplx> root_values(std::span<const cplx> c, const RootOptions& opts) {
  std::vector<cplx> v;
  for (const auto& r : univariate_roots(c, opts)) v.push_back(r.value);
  return v;
}

std::vector<cplx> refine_roots(std::span<const cplx> coeffs, std::vector<cplx> guess, double tol, int max_iterations) {
  UniPoly c = uni::trimmed(UniPoly(coeffs.begin(), coeffs.end()));
  if (c.size() <= 1) throw Error(ErrorKind::NoRoots, "polynomial of degree 0 has no roots");
  if (guess.size() != c.size() - 1)
    throw Error(ErrorKind::InvalidParameter, "warm start size does not match polynomial degree");
  std::vector<char> done(guess.size(), 0);
  for (int it = 0; it < max_iterations; ++it) {
    const double worst = aberth_sweep(c, guess, done);
    if (worst <= tol || std::all_of(done.begin(), done.end(), [](char f) { return f != 0; })) return guess;
  }
  for (const auto& z : guess)
    if (!at_rounding_level(c, z) && backward_residual(c, z) > 1e-10)
      throw Error(ErrorKind::SolverFailure, "warm-started root refinement did not converge");
  return guess;
}

}  // namespace periodet
