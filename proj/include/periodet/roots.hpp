#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "periodet/poly.hpp"

namespace periodet {

/// Seed of the random starting circle for default-constructed options;
/// process-wide, 0x5eed unless changed.
std::uint64_t default_root_seed();
void set_default_root_seed(std::uint64_t seed);

struct RootOptions {
  /// Relative backward residual |p(z)| / sum |c_k| |z|^k required after polish.
  double tol = 1e-12;
  /// Roots closer than cluster_rel * max(1, |z|) are grouped as one cluster.
  double cluster_rel = 1e-8;
  int max_iterations = 800;
  std::uint64_t seed = default_root_seed();
};

struct Root {
  cplx value;
  /// Inclusion radius deg * |p(z) / p'(z)|; a root of p lies within it.
  double error_bound;
  double residual;
  /// Roots sharing a cluster id approximate one multiple root.
  int cluster;
  int multiplicity;
};

/// All roots of the polynomial with ascending coefficients `c`: simultaneous
/// Aberth-Ehrlich iteration from a seeded random circle, then Newton polish.
std::vector<Root> univariate_roots(std::span<const cplx> c, const RootOptions& opts = {});

/// Plain root values, same algorithm.
std::vector<cplx> root_values(std::span<const cplx> c, const RootOptions& opts = {});

/// Aberth iteration warm-started from `guess` (size must equal the degree).
/// Used on slowly varying families where the previous roots are excellent
/// starts. Throws solver-failure when the iteration does not settle.
std::vector<cplx> refine_roots(std::span<const cplx> c, std::vector<cplx> guess, double tol = 1e-14,
                               int max_iterations = 200);

/// Newton iterations on a single root; stops when the update is below
/// tol * (1 + |z|) or progress stalls.
cplx newton_polish(std::span<const cplx> c, cplx z, double tol = 1e-15, int max_iterations = 60);

}  // namespace periodet
