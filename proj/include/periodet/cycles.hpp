#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "periodet/cover.hpp"
#include "periodet/poly.hpp"

namespace periodet {

/// An oriented x-path with the y-value where its lift starts. `weight` is the
/// signed multiplicity of the link in the chain (-1 traverses it backwards).
struct Link {
  XPath path;
  cplx y_start;
  int weight = 1;
};

/// A 1-cycle on {h = t} given as lifted x-paths. The links form one or more
/// closed loops in order: each link ends where the next one starts, and a loop
/// ends where it began.
struct LiftedChain {
  std::vector<Link> links;

  LiftedChain reversed() const;
  /// Every path refined k-fold; the cycle is unchanged.
  LiftedChain refined(int k) const;
};

struct ChainTracks {
  std::vector<BranchTrack> tracks;
  /// Largest endpoint mismatch between consecutive links, in x and in y.
  double x_mismatch = 0.0;
  double y_mismatch = 0.0;
  int loops = 0;
};

/// Tracks every link and measures closure.
ChainTracks track_chain(const PlaneCurve& f, const LiftedChain& chain, const TrackOptions& opts = {});

struct CycleBasis {
  int n = 0;
  BivarPoly h;
  cplx t;
  std::vector<LiftedChain> cycles;
  std::string provenance;
};

/// Loop homologous to gamma_0 - gamma_1: out along eps*[0, 1-delta] and back
/// along [0, 1-delta] on the branch through (0, 1), once counterclockwise
/// around x = 1 (radius delta), back along the eps*y branch, once clockwise
/// around x = eps. For x^(n+1) + y^(n+1) at t = 1.
LiftedChain fermat_alpha1(int n, double delta = 1e-2);

/// Cycle r is the image of alpha_1 under (x, y) -> (eps^l(r) x, eps^m(r) y).
CycleBasis fermat_basis(int n, double delta = 1e-2);

/// A Fermat circle radius that leaves room for the branch points to split
/// and drift under moderate deformations: a quarter of |1 - eps|.
double fermat_deform_radius(int n);

struct DeformOptions {
  /// Initial number of homotopy steps; the step is halved on failure at most
  /// max_halvings times below 1/steps.
  int steps = 16;
  int max_halvings = 10;
  /// The coefficient path is s(tau) = tau + i bend tau (1 - tau).
  double bend = 0.2;
  /// Required distance between a branch-point site and every path.
  double clearance = 1e-2;
  /// Paths follow the flow to within this distance.
  double fidelity = 2e-3;
  TrackOptions track;
};

/// Isotopy of the x-plane that drags all paths along with the branch points
/// while the curve moves through `family(tau)`, tau in [0, 1]. Link y-starts
/// are continued along. Errors: homotopy-failure (step underflow, clearance
/// lost, closure broken), invalid-homotopy (branch points lost to infinity or
/// the level becoming critical).
CycleBasis deform_along(const CycleBasis& basis, const std::function<PlaneCurve(double)>& family, const BivarPoly& h_to,
                        cplx t_to, const std::string& label, const DeformOptions& opts = {});

/// Coefficient homotopy from h_from to h_to at fixed level t.
CycleBasis deform_basis(const CycleBasis& basis, const BivarPoly& h_from, const BivarPoly& h_to, cplx t,
                        const DeformOptions& opts = {});

/// Moves the level from basis.t through the given nodes (polyline in t).
CycleBasis transport_t(const CycleBasis& basis, const std::vector<cplx>& t_nodes, const DeformOptions& opts = {});

/// Cycles recombined by an integer matrix: new cycle r = sum_k U(k, r) old cycle k.
CycleBasis combine(const CycleBasis& basis, const Eigen::MatrixXi& u);

}  // namespace periodet
