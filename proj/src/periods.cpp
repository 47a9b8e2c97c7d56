#include "periodet/periods.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <thread>

#include "periodet/closedform.hpp"
#include "periodet/critical.hpp"
#include "periodet/error.hpp"
#include "periodet/resultant.hpp"
#include "periodet/roots.hpp"

namespace periodet {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Gauss-Kronrod 7/15 abscissae and weights on [-1, 1], nonnegative half.
constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.0};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights belong to kXgk[1], kXgk[3], kXgk[5], kXgk[7].
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Interval {
  std::size_t link;
  int piece;
  double a;
  double b;
  std::vector<cplx> kronrod;
  std::vector<double> abs_sum;  // integral of |f|, for the roundoff floor
  std::vector<double> err;
  double worst;

  bool operator<(const Interval& o) const { return worst < o.worst; }
};

class ChainIntegrand {
 public:
  ChainIntegrand(int n, const LiftedChain& chain, std::vector<BranchTrack> tracks)
      : basis_(monomial_basis(n)), chain_(chain), tracks_(std::move(tracks)) {}

  std::size_t forms() const { return static_cast<std::size_t>(basis_.size()); }

  /// All forms at parameter s of piece `piece` of link `link`, times the
  /// link weight.
  void eval(std::size_t link, int piece, double s, std::vector<cplx>& out) const {
    const BranchTrack& tr = tracks_[link];
    const PathPiece& p = tr.path().pieces()[static_cast<std::size_t>(piece)];
    const cplx x = piece_point(p, s);
    const cplx dx = piece_tangent(p, s) * static_cast<double>(chain_.links[link].weight);
    const cplx y = tr.y_at(piece, s);
    const int n = basis_.n();
    std::vector<cplx> xp(static_cast<std::size_t>(n)), yp(static_cast<std::size_t>(n + 1));
    xp[0] = 1.0;
    yp[0] = 1.0;
    for (int k = 1; k < n; ++k) xp[static_cast<std::size_t>(k)] = xp[static_cast<std::size_t>(k - 1)] * x;
    for (int k = 1; k <= n; ++k) yp[static_cast<std::size_t>(k)] = yp[static_cast<std::size_t>(k - 1)] * y;
    out.resize(forms());
    for (const auto& e : basis_.entries())
      out[static_cast<std::size_t>(e.j - 1)] = xp[static_cast<std::size_t>(e.l)] * yp[static_cast<std::size_t>(e.m + 1)] * dx;
  }

  Interval rule(std::size_t link, int piece, double a, double b) const {
    const std::size_t m = forms();
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    std::vector<cplx> k15(m, 0.0), g7(m, 0.0), f;
    std::vector<double> asum(m, 0.0);
    auto add = [&](double s, double wk, double wg) {
      eval(link, piece, s, f);
      for (std::size_t j = 0; j < m; ++j) {
        k15[j] += wk * f[j];
        g7[j] += wg * f[j];
        asum[j] += wk * std::abs(f[j]);
      }
    };
    add(c, kWgk[7], kWg[3]);
    for (int k = 0; k < 7; ++k) {
      const double wg = (k % 2 == 1) ? kWg[k / 2] : 0.0;
      add(c - h * kXgk[k], kWgk[k], wg);
      add(c + h * kXgk[k], kWgk[k], wg);
    }
    Interval iv{link, piece, a, b, {}, {}, {}, 0.0};
    iv.kronrod.resize(m);
    iv.abs_sum.resize(m);
    iv.err.resize(m);
    for (std::size_t j = 0; j < m; ++j) {
      iv.kronrod[j] = h * k15[j];
      iv.abs_sum[j] = std::abs(h) * asum[j];
      iv.err[j] = std::abs(h * (k15[j] - g7[j])) + 50.0 * kEps * iv.abs_sum[j];
      iv.worst = std::max(iv.worst, iv.err[j]);
    }
    return iv;
  }

 private:
  MonomialBasis basis_;
  const LiftedChain& chain_;
  std::vector<BranchTrack> tracks_;
};

cplx horner_shift(const std::vector<cplx>& a, cplx c, double r, std::vector<cplx>& out) {
  // out(t) = sum_i a_i ((t - c) / r)^i, built by Horner in polynomial arithmetic.
  out.assign(1, 0.0);
  const UniPoly lin{-c / r, 1.0 / r};
  for (auto it = a.rbegin(); it != a.rend(); ++it) {
    out = uni::multiply(out, lin);
    out[0] += *it;
  }
  return out.back();
}

}  // namespace

std::vector<Integral> integrate_chain(const PlaneCurve& f, int n, const LiftedChain& chain, const QuadOptions& opts) {
  std::vector<BranchTrack> tracks;
  for (const auto& link : chain.links) tracks.push_back(continue_branch(f, link.path, link.y_start, opts.track));
  const ChainIntegrand integrand(n, chain, std::move(tracks));
  const std::size_t m = integrand.forms();

  std::priority_queue<Interval> heap;
  for (std::size_t l = 0; l < chain.links.size(); ++l) {
    const auto& pieces = chain.links[l].path.pieces();
    for (std::size_t p = 0; p < pieces.size(); ++p) {
      const int parts = std::max(2, static_cast<int>(std::ceil(piece_length(pieces[p]) / 0.2)));
      for (int k = 0; k < parts; ++k)
        heap.push(integrand.rule(l, static_cast<int>(p), static_cast<double>(k) / parts, static_cast<double>(k + 1) / parts));
    }
  }

  auto totals = [&](std::vector<cplx>& value, std::vector<double>& err, double& mag) {
    value.assign(m, 0.0);
    err.assign(m, 0.0);
    mag = 0.0;
    std::vector<double> abs_total(m, 0.0);
    // Copy out in a fixed order: sort by (link, piece, a) so the summation
    // order does not depend on the refinement history.
    std::vector<const Interval*> all;
    auto copy = heap;
    std::vector<Interval> store;
    store.reserve(copy.size());
    while (!copy.empty()) {
      store.push_back(copy.top());
      copy.pop();
    }
    std::sort(store.begin(), store.end(), [](const Interval& x, const Interval& y) {
      if (x.link != y.link) return x.link < y.link;
      if (x.piece != y.piece) return x.piece < y.piece;
      return x.a < y.a;
    });
    for (const auto& iv : store)
      for (std::size_t j = 0; j < m; ++j) {
        value[j] += iv.kronrod[j];
        err[j] += iv.err[j];
        abs_total[j] += iv.abs_sum[j];
      }
    for (std::size_t j = 0; j < m; ++j) mag = std::max(mag, abs_total[j]);
  };

  // Running sums drive the loop; the final answer is re-summed in order.
  double total_err = 0.0, total_mag = 0.0;
  {
    auto copy = heap;
    std::vector<double> abs_total(m, 0.0);
    while (!copy.empty()) {
      total_err += copy.top().worst;
      for (std::size_t j = 0; j < m; ++j) abs_total[j] += copy.top().abs_sum[j];
      copy.pop();
    }
    for (double v : abs_total) total_mag = std::max(total_mag, v);
  }
  while (total_err > std::max(opts.rel_tol * total_mag, opts.abs_tol) &&
         static_cast<int>(heap.size()) < opts.max_intervals) {
    const Interval worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    Interval left = integrand.rule(worst.link, worst.piece, worst.a, mid);
    Interval right = integrand.rule(worst.link, worst.piece, mid, worst.b);
    total_err += left.worst + right.worst - worst.worst;
    heap.push(std::move(left));
    heap.push(std::move(right));
  }

  std::vector<cplx> value;
  std::vector<double> err;
  double mag = 0.0;
  totals(value, err, mag);
  std::vector<Integral> out(m);
  for (std::size_t j = 0; j < m; ++j) out[j] = {value[j], err[j]};
  return out;
}

Integral integrate_form(const BivarPoly& h, cplx t, int j, const LiftedChain& cycle, const QuadOptions& opts) {
  const auto deg = h.degree();
  if (!deg || *deg < 2) throw Error(ErrorKind::InvalidParameter, "polynomial degree must be at least 2");
  const int n = *deg - 1;
  if (j < 1 || j > n * n) throw Error(ErrorKind::InvalidParameter, "form index out of range");
  const auto all = integrate_chain(PlaneCurve(h, t), n, cycle, opts);
  const Integral r = all[static_cast<std::size_t>(j - 1)];
  double scale = 0.0;
  for (const auto& v : all) scale = std::max(scale, std::abs(v.value));
  if (r.error > std::max(10.0 * opts.rel_tol * scale, opts.abs_tol))
    throw Error(ErrorKind::AccuracyFailure, "quadrature error " + std::to_string(r.error) + " above target");
  return r;
}

double PeriodMatrix::det_error() const {
  const auto lu = entries.partialPivLu();
  const Eigen::MatrixXcd inv = lu.inverse();
  double s = 0.0;
  for (Eigen::Index j = 0; j < entries.rows(); ++j)
    for (Eigen::Index r = 0; r < entries.cols(); ++r) s += std::abs(inv(r, j)) * errors(j, r);
  return std::abs(lu.determinant()) * s;
}

PeriodMatrix period_matrix(const CycleBasis& basis, const QuadOptions& opts, int threads) {
  const int n = basis.n;
  const int m = n * n;
  if (static_cast<int>(basis.cycles.size()) != m)
    throw Error(ErrorKind::InvalidParameter, "basis must hold n^2 cycles");
  const PlaneCurve f(basis.h, basis.t);
  PeriodMatrix pm;
  pm.n = n;
  pm.t = basis.t;
  pm.entries = Eigen::MatrixXcd::Zero(m, m);
  pm.errors = Eigen::MatrixXd::Zero(m, m);

  std::vector<std::vector<Integral>> columns(static_cast<std::size_t>(m));
  std::vector<std::exception_ptr> failures(static_cast<std::size_t>(m));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int r = next++; r < m; r = next++) {
      try {
        columns[static_cast<std::size_t>(r)] = integrate_chain(f, n, basis.cycles[static_cast<std::size_t>(r)], opts);
      } catch (...) {
        failures[static_cast<std::size_t>(r)] = std::current_exception();
      }
    }
  };
  const int count = std::clamp(threads, 1, m);
  if (count == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int k = 0; k < count; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : failures)
    if (e) std::rethrow_exception(e);

  double scale = 0.0;
  for (int r = 0; r < m; ++r)
    for (int j = 0; j < m; ++j) {
      const Integral& v = columns[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)];
      pm.entries(j, r) = v.value;
      pm.errors(j, r) = v.error;
      scale = std::max(scale, std::abs(v.value));
    }
  for (int r = 0; r < m; ++r)
    for (int j = 0; j < m; ++j)
      if (pm.errors(j, r) > std::max(10.0 * opts.rel_tol * scale, opts.abs_tol)) pm.partial = true;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(pm.entries);
  const auto& sv = svd.singularValues();
  pm.condition = sv(m - 1) > 0.0 ? sv(0) / sv(m - 1) : std::numeric_limits<double>::infinity();
  return pm;
}

DetFit fit_determinant(const std::vector<std::pair<cplx, cplx>>& samples, int degree) {
  if (degree < 0 || static_cast<int>(samples.size()) < degree + 1)
    throw Error(ErrorKind::InvalidParameter, "need at least " + std::to_string(degree + 1) + " samples for degree " +
                                                 std::to_string(degree) + ", got " + std::to_string(samples.size()));
  DetFit fit;
  fit.samples = samples;
  cplx c = 0.0;
  for (const auto& [t, d] : samples) c += t;
  c /= static_cast<double>(samples.size());
  double r = 0.0;
  for (const auto& [t, d] : samples) r = std::max(r, std::abs(t - c));
  if (r == 0.0) r = 1.0;
  fit.center = c;
  fit.radius = r;

  const auto k = static_cast<Eigen::Index>(samples.size());
  Eigen::MatrixXcd v(k, degree + 1);
  Eigen::VectorXcd rhs(k);
  double big = 0.0;
  for (Eigen::Index i = 0; i < k; ++i) {
    const cplx u = (samples[static_cast<std::size_t>(i)].first - c) / r;
    cplx p = 1.0;
    for (int e = 0; e <= degree; ++e) {
      v(i, e) = p;
      p *= u;
    }
    rhs(i) = samples[static_cast<std::size_t>(i)].second;
    big = std::max(big, std::abs(rhs(i)));
  }
  const Eigen::VectorXcd a = v.colPivHouseholderQr().solve(rhs);
  fit.coefficients_u.assign(a.data(), a.data() + a.size());
  const Eigen::VectorXcd resid = v * a - rhs;
  fit.residual = big > 0.0 ? resid.cwiseAbs().maxCoeff() / big : 0.0;

  double amax = 0.0;
  for (const auto& x : fit.coefficients_u) amax = std::max(amax, std::abs(x));
  fit.leading_rel = amax > 0.0 ? std::abs(fit.coefficients_u.back()) / amax : 0.0;
  fit.leading = fit.coefficients_u.back() / std::pow(r, degree);
  horner_shift(fit.coefficients_u, c, r, fit.coefficients);
  if (degree >= 1 && fit.leading_rel > 0.0)
    for (const auto& u : root_values(fit.coefficients_u)) fit.roots.push_back(c + r * u);
  return fit;
}

std::vector<cplx> critical_values(const BivarPoly& h) {
  const auto deg = h.degree();
  if (!deg || *deg < 2) throw Error(ErrorKind::InvalidParameter, "polynomial degree must be at least 2");
  const int n = *deg - 1;
  if (h == h.top().as_poly()) return std::vector<cplx>(static_cast<std::size_t>(n * n), 0.0);
  return critical_data(h).values;
}

DetFit det_samples(const BivarPoly& h, const CycleBasis& basis, const std::vector<cplx>& t_list,
                   const SampleOptions& opts) {
  const int n = basis.n;
  std::vector<cplx> crit;
  try {
    crit = critical_values(h);
  } catch (const Error&) {
  }
  const double guard = opts.critical_guard * std::max(1.0, h.scale());
  std::vector<std::pair<cplx, cplx>> samples;
  std::vector<cplx> rejected;
  double worst_err = 0.0, big = 0.0;
  CycleBasis cur = basis;
  for (const auto& t : t_list) {
    bool near_critical = false;
    for (const auto& c : crit) near_critical = near_critical || std::abs(t - c) < guard;
    if (near_critical) {
      rejected.push_back(t);
      continue;
    }
    cur = transport_t(cur, {t}, opts.deform);
    const PeriodMatrix pm = period_matrix(cur, opts.quad, opts.threads);
    samples.emplace_back(t, pm.det());
    worst_err = std::max(worst_err, pm.det_error());
    big = std::max(big, std::abs(samples.back().second));
  }
  DetFit fit = fit_determinant(samples, n * n);
  fit.rejected = std::move(rejected);
  fit.noise = big > 0.0 ? worst_err / big : 0.0;
  return fit;
}

CycleBasis basis_for(const BivarPoly& h, const DeformOptions& opts) {
  const auto deg = h.degree();
  if (!deg || *deg < 2) throw Error(ErrorKind::InvalidParameter, "polynomial degree must be at least 2");
  const int n = *deg - 1;
  CycleBasis b = fermat_basis(n, fermat_deform_radius(n));
  if (h == b.h) return b;
  return deform_basis(b, b.h, h, 1.0, opts);
}

VerificationReport verify(const BivarPoly& h, const VerifyConfig& config) {
  VerificationReport rep;
  rep.config = config;
  const auto deg = h.degree();
  if (!deg || *deg < 2) throw Error(ErrorKind::InvalidInput, "polynomial degree must be at least 2");
  const int n = *deg - 1;
  rep.n = n;
  const HomogeneousTop top = h.top();
  if (top[n + 1] == cplx(0.0))
    throw Error(ErrorKind::UnsupportedChart, "coefficient of y^(n+1) vanishes; apply a linear change of variables first");
  rep.closed_form = C_of_H(top);  // chart h_0 and genericity checks live here
  if (config.samples > 0 && config.samples < n * n + 1)
    throw Error(ErrorKind::InvalidParameter, "a degree-" + std::to_string(n * n) + " fit needs at least " +
                                                 std::to_string(n * n + 1) + " samples");

  try {
    rep.stage = "critical";
    rep.critical_values = critical_values(h);
    if (config.layout == SampleLayout::Enclosing) {
      cplx mean = 0.0;
      for (const auto& c : rep.critical_values) mean += c;
      mean /= static_cast<double>(rep.critical_values.size());
      double spread = 0.0;
      for (const auto& c : rep.critical_values) spread = std::max(spread, std::abs(c - mean));
      rep.config.center = mean;
      rep.config.radius = 1.5 * spread + 0.2;
    }
    const VerifyConfig& cfg = rep.config;

    rep.stage = "basis";
    const CycleBasis basis = basis_for(h, config.sampling.deform);
    rep.basis_provenance = basis.provenance;

    rep.stage = "samples";
    const int count = config.samples > 0 ? config.samples : 2 * (n * n + 1);
    std::vector<cplx> ts;
    for (int k = 0; k < count; ++k)
      ts.push_back(cfg.center +
                   std::polar(cfg.radius, config.angle_offset + 2.0 * std::numbers::pi * k / count));
    rep.fit = det_samples(h, basis, ts, config.sampling);

    rep.stage = "checks";
    rep.polynomial_pass = rep.fit.residual < config.fit_tol && rep.fit.leading_rel > 1e-8;

    // Roots against critical values: greedy nearest pairing.
    std::vector<cplx> pool = rep.critical_values;
    const double scale = std::max(1.0, std::abs(cfg.center) + cfg.radius);
    double big = 0.0;
    for (const auto& s : rep.fit.samples) big = std::max(big, std::abs(s.second));
    const double noise = std::max({rep.fit.noise, rep.fit.residual, 1e-14}) * big;
    for (const auto& r : rep.fit.roots) {
      if (pool.empty()) break;
      auto it = std::min_element(pool.begin(), pool.end(),
                                 [&](cplx a, cplx b) { return std::abs(a - r) < std::abs(b - r); });
      int mult = 0;
      for (const auto& c : rep.critical_values) mult += std::abs(c - *it) < 1e-8 * scale;
      double allowed = config.root_tol;
      if (mult > 1)
        allowed = std::max(allowed, 2.0 * std::pow(noise / std::abs(rep.fit.leading), 1.0 / mult));
      rep.roots.push_back({r, *it, std::abs(r - *it), allowed});
      pool.erase(it);
    }
    rep.roots_pass = rep.roots.size() == rep.critical_values.size();
    for (const auto& m : rep.roots) {
      rep.max_root_distance = std::max(rep.max_root_distance, m.distance);
      rep.roots_pass = rep.roots_pass && m.distance <= m.allowed;
    }

    rep.ratio = rep.fit.leading / rep.closed_form.value;
    rep.sign = std::abs(rep.ratio - 1.0) <= std::abs(rep.ratio + 1.0) ? 1 : -1;
    rep.ratio_error = std::abs(rep.ratio - static_cast<double>(rep.sign));
    rep.ratio_pass = rep.ratio_error < config.ratio_tol;
    rep.pass = rep.polynomial_pass && rep.roots_pass && rep.ratio_pass;
    rep.stage = "complete";
  } catch (const Error& e) {
    rep.message = e.what();
    rep.pass = false;
  }
  return rep;
}

}  // namespace periodet
