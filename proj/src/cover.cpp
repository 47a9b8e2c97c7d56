#include "periodet/cover.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include "periodet/error.hpp"
#include "periodet/resultant.hpp"
#include "periodet/roots.hpp"

namespace periodet {

namespace {

constexpr double kPi = std::numbers::pi;

double abs_eval(std::span<const cplx> c, double r) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * r + std::abs(*it);
  return acc;
}

std::string fmt(cplx z) {
  std::ostringstream os;
  os.precision(10);
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

double segment_distance(cplx a, cplx b, cplx z) {
  const cplx d = b - a;
  const double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(z - a);
  const double u = std::clamp(((z - a) * std::conj(d)).real() / len2, 0.0, 1.0);
  return std::abs(z - (a + u * d));
}

double arc_distance(const Arc& arc, cplx z) {
  const cplx rel = z - arc.center;
  if (std::abs(arc.sweep) >= 2.0 * kPi || std::abs(rel) == 0.0) return std::abs(std::abs(rel) - arc.radius);
  // Angle of z measured from the start in the sweep direction.
  double ang = std::arg(rel) - arc.start_angle;
  if (arc.sweep < 0) ang = -ang;
  ang = std::fmod(ang, 2.0 * kPi);
  if (ang < 0) ang += 2.0 * kPi;
  if (ang <= std::abs(arc.sweep)) return std::abs(std::abs(rel) - arc.radius);
  const PathPiece p = arc;
  return std::min(std::abs(z - piece_point(p, 0.0)), std::abs(z - piece_point(p, 1.0)));
}

/// Polished root closest to `y` plus the distance to the nearest other root.
struct FiberFix {
  std::vector<cplx> fiber;
  double gap;
};

FiberFix fiber_around(std::span<const cplx> p, cplx y, const std::vector<cplx>& warm) {
  std::vector<cplx> fiber;
  const std::size_t deg = static_cast<std::size_t>(uni::degree(p));
  if (warm.size() == deg) {
    try {
      fiber = refine_roots(p, warm);
    } catch (const Error&) {
      fiber.clear();
    }
  }
  if (fiber.size() != deg) fiber = root_values(p);
  std::size_t self = 0;
  for (std::size_t k = 1; k < fiber.size(); ++k)
    if (std::abs(fiber[k] - y) < std::abs(fiber[self] - y)) self = k;
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < fiber.size(); ++k)
    if (k != self) gap = std::min(gap, std::abs(fiber[k] - y));
  // The warm start lost track of y: the fiber roots are unreliable, redo cold.
  if (!warm.empty() && std::abs(fiber[self] - y) > 1e-6 * (1.0 + std::abs(y)) && warm.size() == deg)
    return fiber_around(p, y, {});
  return {std::move(fiber), gap};
}

struct Corrected {
  cplx y;
  double last_update;
  bool finite;
};

std::optional<Corrected> newton_correct(std::span<const cplx> p, cplx y, const TrackOptions& opts) {
  for (int it = 0; it < opts.max_newton; ++it) {
    auto [v, dv] = uni::eval_with_derivative(p, y);
    if (dv == cplx(0.0)) return Corrected{y, 0.0, false};
    const cplx step = v / dv;
    y -= step;
    if (!std::isfinite(y.real()) || !std::isfinite(y.imag())) return Corrected{y, 0.0, false};
    if (std::abs(step) <= opts.tol * (1.0 + std::abs(y))) return Corrected{y, std::abs(step), true};
  }
  return std::nullopt;
}

/// One predictor-corrector attempt on the polynomial `p`.
struct StepResult {
  enum Kind { Accepted, Rejected, Diverged } kind;
  cplx y;
  FiberFix fix;
  double update;
};

/// Besides the sheet guard, the root may move by at most guard times the
/// smaller of the gaps at the two ends of the step: a root cannot then pass
/// through a collision with its neighbours between the ends.
StepResult attempt(std::span<const cplx> p, cplx y_pred, cplx y_prev, double gap_prev, const std::vector<cplx>& warm,
                   const TrackOptions& opts) {
  const auto corr = newton_correct(p, y_pred, opts);
  if (!corr) return {StepResult::Rejected, y_pred, {}, 0.0};
  if (!corr->finite) return {StepResult::Diverged, y_pred, {}, 0.0};
  FiberFix fix = fiber_around(p, corr->y, warm);
  if (std::abs(corr->y - y_pred) >= opts.guard * fix.gap) return {StepResult::Rejected, y_pred, {}, 0.0};
  if (std::abs(corr->y - y_prev) >= opts.guard * std::min(fix.gap, gap_prev))
    return {StepResult::Rejected, y_pred, {}, 0.0};
  return {StepResult::Accepted, corr->y, std::move(fix), corr->last_update};
}

[[noreturn]] void underflow(const PlaneCurve& f, cplx x) {
  std::string where = "step underflow at x = " + fmt(x);
  try {
    const auto bp = branch_points(f.as_poly(), 0.0);
    const auto [dist, idx] = bp.nearest(x);
    where += "; closest branch point " + fmt(bp.points[idx]) + " at distance " + std::to_string(dist);
  } catch (const Error&) {
  }
  throw Error(ErrorKind::ProximityError, where);
}

}  // namespace

cplx piece_point(const PathPiece& p, double s) {
  if (const auto* seg = std::get_if<Segment>(&p)) return seg->a + s * (seg->b - seg->a);
  const auto& arc = std::get<Arc>(p);
  return arc.center + std::polar(arc.radius, arc.start_angle + arc.sweep * s);
}

cplx piece_tangent(const PathPiece& p, double s) {
  if (const auto* seg = std::get_if<Segment>(&p)) return seg->b - seg->a;
  const auto& arc = std::get<Arc>(p);
  return cplx(0.0, arc.sweep) * std::polar(arc.radius, arc.start_angle + arc.sweep * s);
}

double piece_length(const PathPiece& p) {
  if (const auto* seg = std::get_if<Segment>(&p)) return std::abs(seg->b - seg->a);
  const auto& arc = std::get<Arc>(p);
  return std::abs(arc.sweep) * arc.radius;
}

XPath::XPath(std::vector<PathPiece> pieces) : pieces_(std::move(pieces)) {
  if (pieces_.empty()) throw Error(ErrorKind::InvalidParameter, "empty path");
  for (std::size_t k = 1; k < pieces_.size(); ++k) {
    const cplx a = piece_point(pieces_[k - 1], 1.0);
    const cplx b = piece_point(pieces_[k], 0.0);
    if (std::abs(a - b) > kJoinTol * std::max(1.0, std::abs(a)))
      throw Error(ErrorKind::InvalidParameter, "path pieces do not join at " + fmt(a));
  }
  if (!(length() > 0.0)) throw Error(ErrorKind::InvalidParameter, "path has zero length");
}

XPath XPath::segment(cplx a, cplx b) { return XPath({Segment{a, b}}); }

XPath XPath::arc(cplx center, double radius, double start_angle, double sweep) {
  return XPath({Arc{center, radius, start_angle, sweep}});
}

XPath XPath::polyline(const std::vector<cplx>& nodes) {
  std::vector<PathPiece> pieces;
  for (std::size_t k = 1; k < nodes.size(); ++k) pieces.push_back(Segment{nodes[k - 1], nodes[k]});
  return XPath(std::move(pieces));
}

cplx XPath::start() const { return piece_point(pieces_.front(), 0.0); }
cplx XPath::end() const { return piece_point(pieces_.back(), 1.0); }

double XPath::length() const {
  double total = 0.0;
  for (const auto& p : pieces_) total += piece_length(p);
  return total;
}

XPath XPath::reversed() const {
  std::vector<PathPiece> out;
  for (auto it = pieces_.rbegin(); it != pieces_.rend(); ++it) {
    if (const auto* seg = std::get_if<Segment>(&*it)) {
      out.push_back(Segment{seg->b, seg->a});
    } else {
      const auto& arc = std::get<Arc>(*it);
      out.push_back(Arc{arc.center, arc.radius, arc.start_angle + arc.sweep, -arc.sweep});
    }
  }
  XPath r;
  r.pieces_ = std::move(out);
  return r;
}

XPath XPath::rotated(cplx c) const {
  std::vector<PathPiece> out;
  for (const auto& p : pieces_) {
    if (const auto* seg = std::get_if<Segment>(&p)) {
      out.push_back(Segment{c * seg->a, c * seg->b});
    } else {
      const auto& arc = std::get<Arc>(p);
      out.push_back(Arc{c * arc.center, arc.radius * std::abs(c), arc.start_angle + std::arg(c), arc.sweep});
    }
  }
  XPath r;
  r.pieces_ = std::move(out);
  return r;
}

XPath XPath::then(const XPath& next) const {
  std::vector<PathPiece> all = pieces_;
  all.insert(all.end(), next.pieces_.begin(), next.pieces_.end());
  return XPath(std::move(all));
}

XPath XPath::refined(int k) const {
  if (k < 1) throw Error(ErrorKind::InvalidParameter, "refinement factor must be positive");
  std::vector<PathPiece> out;
  for (const auto& p : pieces_) {
    for (int i = 0; i < k; ++i) {
      const double s0 = static_cast<double>(i) / k;
      const double s1 = static_cast<double>(i + 1) / k;
      if (const auto* seg = std::get_if<Segment>(&p)) {
        // Exact endpoints at the ends keep joins bitwise identical.
        out.push_back(Segment{i == 0 ? seg->a : piece_point(p, s0), i == k - 1 ? seg->b : piece_point(p, s1)});
      } else {
        const auto& arc = std::get<Arc>(p);
        out.push_back(Arc{arc.center, arc.radius, arc.start_angle + arc.sweep * s0, arc.sweep / k});
      }
    }
  }
  XPath r;
  r.pieces_ = std::move(out);
  return r;
}

double XPath::distance_to(cplx z) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : pieces_) {
    if (const auto* seg = std::get_if<Segment>(&p))
      best = std::min(best, segment_distance(seg->a, seg->b, z));
    else
      best = std::min(best, arc_distance(std::get<Arc>(p), z));
  }
  return best;
}

PlaneCurve::PlaneCurve(const BivarPoly& h, cplx t) : dx_(std::max(h.degree_x(), 0)), dy_(std::max(h.degree_y(), 0)) {
  c_.assign(static_cast<std::size_t>((dx_ + 1) * (dy_ + 1)), cplx(0.0));
  for (const auto& [key, v] : h.coeffs()) c_[static_cast<std::size_t>(key.first * (dy_ + 1) + key.second)] = v;
  c_[0] -= t;
}

PlaneCurve PlaneCurve::blend(const PlaneCurve& a, const PlaneCurve& b, cplx s) {
  const int dx = std::max(a.dx_, b.dx_);
  const int dy = std::max(a.dy_, b.dy_);
  std::vector<cplx> c(static_cast<std::size_t>((dx + 1) * (dy + 1)), cplx(0.0));
  auto add = [&](const PlaneCurve& p, cplx w) {
    for (int i = 0; i <= p.dx_; ++i)
      for (int j = 0; j <= p.dy_; ++j) c[static_cast<std::size_t>(i * (dy + 1) + j)] += w * p.coeff(i, j);
  };
  add(a, 1.0 - s);
  add(b, s);
  return PlaneCurve(dx, dy, std::move(c));
}

double PlaneCurve::scale() const {
  double m = 0.0;
  for (const auto& v : c_) m = std::max(m, std::abs(v));
  return m;
}

UniPoly PlaneCurve::y_poly(cplx x) const {
  UniPoly out(static_cast<std::size_t>(dy_ + 1), cplx(0.0));
  for (int j = 0; j <= dy_; ++j) {
    cplx acc = 0.0;
    for (int i = dx_; i >= 0; --i) acc = acc * x + coeff(i, j);
    out[static_cast<std::size_t>(j)] = acc;
  }
  return out;
}

cplx PlaneCurve::value(cplx x, cplx y) const { return uni::eval(y_poly(x), y); }

PlaneCurve::Jet PlaneCurve::jet(cplx x, cplx y) const {
  Jet out{0.0, 0.0, 0.0};
  // Horner in y over coefficient pairs (a_j(x), a_j'(x)).
  for (int j = dy_; j >= 0; --j) {
    cplx a = 0.0, da = 0.0;
    for (int i = dx_; i >= 0; --i) {
      da = da * x + a;
      a = a * x + coeff(i, j);
    }
    out.fy = out.fy * y + out.f;
    out.f = out.f * y + a;
    out.fx = out.fx * y + da;
  }
  return out;
}

BivarPoly PlaneCurve::as_poly() const {
  BivarPoly::CoeffMap m;
  for (int i = 0; i <= dx_; ++i)
    for (int j = 0; j <= dy_; ++j)
      if (coeff(i, j) != cplx(0.0)) m[{i, j}] = coeff(i, j);
  return BivarPoly(std::move(m));
}

std::vector<cplx> y_fiber(const PlaneCurve& f, cplx x) {
  const UniPoly p = f.y_poly(x);
  if (uni::degree(p) != f.degree_y() || f.degree_y() < 1)
    throw Error(ErrorKind::InvalidParameter, "leading y-coefficient vanishes over x = " + fmt(x));
  std::vector<cplx> out;
  for (const auto& r : univariate_roots(p)) out.push_back(r.multiplicity == 1 ? newton_polish(p, r.value) : r.value);
  std::sort(out.begin(), out.end(), [](cplx a, cplx b) { return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag(); });
  return out;
}

std::vector<cplx> y_fiber(const BivarPoly& h, cplx t, cplx x) { return y_fiber(PlaneCurve(h, t), x); }

std::pair<double, std::size_t> BranchPointSet::nearest(cplx z) const {
  double best = std::numeric_limits<double>::infinity();
  std::size_t idx = 0;
  for (std::size_t k = 0; k < points.size(); ++k) {
    const double d = std::abs(points[k] - z);
    if (d < best) best = d, idx = k;
  }
  return {best, idx};
}

BranchPointSet branch_points(const BivarPoly& h, cplx t) {
  const BivarPoly p = h - BivarPoly::constant(t);
  const auto deg = p.degree();
  if (!deg || p.degree_y() != *deg || p.coeff(0, *deg) == cplx(0.0))
    throw Error(ErrorKind::UnsupportedChart, "coefficient of the top power of y vanishes");
  const UniPoly r = uni::trimmed(resultant_y(p, p.dy()));
  if (uni::degree(r) < 0) throw Error(ErrorKind::InvalidInput, "y-resultant vanishes identically (repeated factor)");

  BranchPointSet out;
  out.t = t;
  if (uni::degree(r) == 0) return out;
  const auto roots = univariate_roots(r);
  std::vector<int> seen;
  for (const auto& root : roots) {
    if (std::find(seen.begin(), seen.end(), root.cluster) != seen.end()) continue;
    seen.push_back(root.cluster);
    cplx sum = 0.0;
    int count = 0;
    for (const auto& other : roots)
      if (other.cluster == root.cluster) sum += other.value, ++count;
    cplx x = sum / static_cast<double>(count);
    // A root of multiplicity m is a simple root of the (m-1)-th derivative.
    UniPoly d = r;
    for (int k = 1; k < count; ++k) d = uni::derivative(d);
    x = newton_polish(d, x);
    int ram = 2;
    if (count > 1) {
      // Over an m-fold point the fiber spreads like (x error)^(1/(m+1)).
      RootOptions loose;
      loose.cluster_rel = 1e-2;
      for (const auto& y : univariate_roots(p.in_y(x), loose)) ram = std::max(ram, y.multiplicity);
    }
    out.points.push_back(x);
    out.multiplicity.push_back(count);
    out.ramification.push_back(ram);
    const double denom = abs_eval(r, std::abs(x));
    out.residuals.push_back(denom == 0.0 ? 0.0 : std::abs(uni::eval(r, x)) / denom);
  }
  return out;
}

BranchTrack::BranchTrack(PlaneCurve curve, XPath path, std::vector<TrackSample> samples, double error_estimate)
    : curve_(std::move(curve)), path_(std::move(path)), samples_(std::move(samples)), error_estimate_(error_estimate) {}

double BranchTrack::min_gap() const {
  double g = std::numeric_limits<double>::infinity();
  for (const auto& s : samples_) g = std::min(g, s.gap);
  return g;
}

cplx BranchTrack::y_at(int piece, double s) const {
  auto less = [](const TrackSample& a, std::pair<int, double> key) {
    return a.piece != key.first ? a.piece < key.first : a.s < key.second;
  };
  auto it = std::lower_bound(samples_.begin(), samples_.end(), std::make_pair(piece, s), less);
  if (it == samples_.end() || it->piece != piece) --it;
  if (it->piece != piece) throw Error(ErrorKind::InvalidParameter, "no samples on piece " + std::to_string(piece));
  if (it->s == s) return it->y;
  if (it == samples_.begin() || std::prev(it)->piece != piece) throw Error(ErrorKind::InvalidParameter, "parameter outside piece");
  const TrackSample& b = *it;
  const TrackSample& a = *std::prev(it);

  const PathPiece& pc = path_.pieces()[static_cast<std::size_t>(piece)];
  const double hs = b.s - a.s;
  const double u = (s - a.s) / hs;
  const double u2 = u * u, u3 = u2 * u;
  const cplx ma = a.dydx * piece_tangent(pc, a.s);
  const cplx mb = b.dydx * piece_tangent(pc, b.s);
  const cplx guess = (2 * u3 - 3 * u2 + 1) * a.y + (u3 - 2 * u2 + u) * hs * ma + (-2 * u3 + 3 * u2) * b.y +
                     (u3 - u2) * hs * mb;

  const UniPoly p = curve_.y_poly(piece_point(pc, s));
  const cplx y = newton_polish(p, guess, 1e-15, 30);
  if (!(std::abs(y - guess) < 0.25 * std::min(a.gap, b.gap)))
    throw Error(ErrorKind::TrackingFailure, "interpolated node left its sheet at s = " + std::to_string(s));
  return y;
}

BranchTrack continue_branch(const PlaneCurve& f, const XPath& path, cplx y0, const TrackOptions& opts) {
  std::vector<TrackSample> samples;
  double err = 0.0;

  cplx y = y0;
  std::vector<cplx> fiber;
  for (std::size_t k = 0; k < path.pieces().size(); ++k) {
    const PathPiece& pc = path.pieces()[k];
    const int piece = static_cast<int>(k);
    double s = 0.0;
    cplx x = piece_point(pc, 0.0);
    auto record = [&](double sv, cplx xv, cplx yv, double gap) {
      const auto j = f.jet(xv, yv);
      samples.push_back({piece, sv, xv, yv, -j.fx / j.fy, gap});
    };
    if (k == 0) {
      const UniPoly p = f.y_poly(x);
      const auto corr = newton_correct(p, y, opts);
      if (!corr || !corr->finite) throw Error(ErrorKind::InvalidParameter, "start value is not on the curve");
      FiberFix fix = fiber_around(p, corr->y, {});
      if (std::abs(corr->y - y0) >= opts.guard * fix.gap)
        throw Error(ErrorKind::InvalidParameter, "start value " + fmt(y0) + " is not a fiber root over " + fmt(x));
      y = corr->y;
      fiber = std::move(fix.fiber);
      record(0.0, x, y, fix.gap);
    } else {
      const TrackSample prev = samples.back();
      record(0.0, x, y, prev.gap);
    }

    double ds = opts.initial_step;
    while (s < 1.0) {
      const double step = std::min(ds, 1.0 - s);
      const double s1 = (1.0 - s - step) < 1e-14 ? 1.0 : s + step;
      const cplx x1 = piece_point(pc, s1);
      const cplx y_pred = y + samples.back().dydx * (x1 - x);
      const UniPoly p = f.y_poly(x1);
      StepResult r = attempt(p, y_pred, y, samples.back().gap, fiber, opts);
      if (r.kind == StepResult::Accepted) {
        // First-order motion at either end must also stay inside the gaps.
        const auto j = f.jet(x1, r.y);
        const double dx = std::abs(x1 - x);
        const double room = opts.guard * std::min(r.fix.gap, samples.back().gap);
        if (dx * std::abs(j.fx / j.fy) >= room || dx * std::abs(samples.back().dydx) >= room)
          r.kind = StepResult::Rejected;
      }
      if (r.kind == StepResult::Diverged)
        throw Error(ErrorKind::TrackingFailure, "corrector diverged near x = " + fmt(x1));
      if (r.kind == StepResult::Rejected) {
        ds = step / 2.0;
        if (ds < opts.min_step) underflow(f, x1);
        continue;
      }
      s = s1;
      x = x1;
      y = r.y;
      err += r.update;
      fiber = std::move(r.fix.fiber);
      record(s, x, y, r.fix.gap);
      ds = std::min(step * 1.5, opts.max_step);
    }
  }
  return BranchTrack(f, path, std::move(samples), err);
}

BranchTrack continue_branch(const BivarPoly& h, cplx t, const XPath& path, cplx y0, const TrackOptions& opts) {
  return continue_branch(PlaneCurve(h, t), path, y0, opts);
}

cplx continue_root(const std::function<UniPoly(double)>& family, cplx y0, const TrackOptions& opts) {
  UniPoly p = family(0.0);
  const auto start = newton_correct(p, y0, opts);
  if (!start || !start->finite) throw Error(ErrorKind::InvalidParameter, "start value is not a root");
  FiberFix fix = fiber_around(p, start->y, {});
  if (std::abs(start->y - y0) >= opts.guard * fix.gap)
    throw Error(ErrorKind::InvalidParameter, "start value " + fmt(y0) + " is not a root of the family");
  cplx y = start->y;
  double gap = fix.gap;
  std::vector<cplx> fiber = std::move(fix.fiber);

  double tau = 0.0, ds = opts.initial_step;
  double prev_tau = 0.0;
  cplx prev_y = y;
  while (tau < 1.0) {
    const double step = std::min(ds, 1.0 - tau);
    const double t1 = (1.0 - tau - step) < 1e-14 ? 1.0 : tau + step;
    // Secant predictor from the last accepted step.
    const cplx y_pred = tau > prev_tau ? y + (y - prev_y) * ((t1 - tau) / (tau - prev_tau)) : y;
    StepResult r = attempt(family(t1), y_pred, y, gap, fiber, opts);
    if (r.kind == StepResult::Diverged) throw Error(ErrorKind::TrackingFailure, "root continuation diverged");
    if (r.kind == StepResult::Rejected) {
      ds = step / 2.0;
      if (ds < opts.min_step)
        throw Error(ErrorKind::ProximityError, "root continuation step underflow at tau = " + std::to_string(tau));
      continue;
    }
    prev_tau = tau;
    prev_y = y;
    tau = t1;
    y = r.y;
    gap = r.fix.gap;
    fiber = std::move(r.fix.fiber);
    ds = std::min(step * 1.5, opts.max_step);
  }
  return y;
}

}  // namespace periodet
