#pragma once

#include <functional>
#include <variant>
#include <vector>

#include "periodet/poly.hpp"

namespace periodet {

struct Segment {
  cplx a;
  cplx b;
};

/// Circular arc center + radius * exp(i (start_angle + sweep * s)), s in [0, 1].
struct Arc {
  cplx center;
  double radius;
  double start_angle;
  double sweep;
};

using PathPiece = std::variant<Segment, Arc>;

cplx piece_point(const PathPiece& p, double s);
/// dx/ds.
cplx piece_tangent(const PathPiece& p, double s);
double piece_length(const PathPiece& p);

/// Oriented piecewise path in the x-plane.
class XPath {
 public:
  static constexpr double kJoinTol = 1e-12;

  XPath() = default;
  /// Throws invalid-parameter if consecutive pieces do not join or the total
  /// length is zero.
  explicit XPath(std::vector<PathPiece> pieces);

  static XPath segment(cplx a, cplx b);
  static XPath arc(cplx center, double radius, double start_angle, double sweep);
  /// Straight pieces through consecutive nodes.
  static XPath polyline(const std::vector<cplx>& nodes);

  const std::vector<PathPiece>& pieces() const { return pieces_; }
  bool empty() const { return pieces_.empty(); }
  cplx start() const;
  cplx end() const;
  double length() const;

  XPath reversed() const;
  /// Image under x -> c x.
  XPath rotated(cplx c) const;
  XPath then(const XPath& next) const;
  /// Every piece split into k equal parameter pieces; the traced curve is unchanged.
  XPath refined(int k) const;
  /// Distance from z to the traced curve.
  double distance_to(cplx z) const;

 private:
  std::vector<PathPiece> pieces_;
};

/// f(x, y) = h(x, y) - t stored densely for fast repeated evaluation.
class PlaneCurve {
 public:
  struct Jet {
    cplx f;
    cplx fx;
    cplx fy;
  };

  PlaneCurve(const BivarPoly& h, cplx t);

  /// (1 - s) a + s b, coefficientwise.
  static PlaneCurve blend(const PlaneCurve& a, const PlaneCurve& b, cplx s);

  int degree_x() const { return dx_; }
  int degree_y() const { return dy_; }
  cplx coeff(int i, int j) const { return c_[static_cast<std::size_t>(i * (dy_ + 1) + j)]; }
  double scale() const;

  /// Ascending coefficients of y -> f(x, y).
  UniPoly y_poly(cplx x) const;
  cplx value(cplx x, cplx y) const;
  Jet jet(cplx x, cplx y) const;
  BivarPoly as_poly() const;

 private:
  PlaneCurve(int dx, int dy, std::vector<cplx> c) : dx_(dx), dy_(dy), c_(std::move(c)) {}

  int dx_;
  int dy_;
  std::vector<cplx> c_;
};

/// Roots of y -> h(x, y) - t, Newton polished, sorted by (real, imag).
/// Multiple roots over a branch point are returned repeated.
std::vector<cplx> y_fiber(const PlaneCurve& f, cplx x);
std::vector<cplx> y_fiber(const BivarPoly& h, cplx t, cplx x);

struct BranchPointSet {
  cplx t;
  /// Distinct x-values (clusters of resultant roots collapsed).
  std::vector<cplx> points;
  /// Multiplicity of each point as a root of Res_y(h - t, h_y).
  std::vector<int> multiplicity;
  /// Largest number of fiber roots meeting over each point (2 for a simple
  /// branch point, n+1 for full ramification).
  std::vector<int> ramification;
  /// |Res(x)| / (sum |r_k| |x|^k) at each point.
  std::vector<double> residuals;

  bool simple(std::size_t i) const { return ramification[i] == 2; }
  /// Distance from z to the closest point and its index.
  std::pair<double, std::size_t> nearest(cplx z) const;
};

/// x-roots of Res_y(h - t, dh/dy). Requires the y-degree of h - t to equal its
/// total degree; an identically zero resultant is invalid-input.
BranchPointSet branch_points(const BivarPoly& h, cplx t);

struct TrackOptions {
  /// Newton corrector stops below tol * (1 + |y|).
  double tol = 1e-13;
  /// Accept a corrected root only if |y_corrected - y_predicted| is below
  /// guard times the distance to the nearest other fiber root.
  double guard = 0.3;
  double initial_step = 1.0 / 32;
  double max_step = 1.0 / 16;
  /// Parameter steps below this count as underflow.
  double min_step = 1e-11;
  int max_newton = 8;
};

struct TrackSample {
  int piece;
  double s;
  cplx x;
  cplx y;
  cplx dydx;
  /// Distance from y to the nearest other fiber root.
  double gap;
};

/// One y-branch continued along an XPath.
class BranchTrack {
 public:
  BranchTrack(PlaneCurve curve, XPath path, std::vector<TrackSample> samples, double error_estimate);

  const XPath& path() const { return path_; }
  const PlaneCurve& curve() const { return curve_; }
  const std::vector<TrackSample>& samples() const { return samples_; }
  cplx y_start() const { return samples_.front().y; }
  cplx y_end() const { return samples_.back().y; }
  /// Sum over steps of the last Newton correction.
  double error_estimate() const { return error_estimate_; }
  double min_gap() const;

  /// y on the tracked branch at parameter s of piece `piece`: Hermite
  /// interpolation between neighbouring samples, then Newton polish. Throws
  /// tracking-failure if the polish leaves the interpolation's basin.
  cplx y_at(int piece, double s) const;

 private:
  PlaneCurve curve_;
  XPath path_;
  std::vector<TrackSample> samples_;
  double error_estimate_;
};

/// Predictor-corrector continuation of the root y0 of f(path start, .) along
/// the path. Step underflow raises proximity-error naming the closest branch
/// point; a diverging corrector raises tracking-failure.
BranchTrack continue_branch(const PlaneCurve& f, const XPath& path, cplx y0, const TrackOptions& opts = {});
BranchTrack continue_branch(const BivarPoly& h, cplx t, const XPath& path, cplx y0, const TrackOptions& opts = {});

/// Continues the root y0 of family(0) to a root of family(1), where family(tau)
/// gives ascending coefficients varying continuously in tau. Same step
/// control and sheet guard as continue_branch.
cplx continue_root(const std::function<UniPoly(double)>& family, cplx y0, const TrackOptions& opts = {});

}  // namespace periodet
