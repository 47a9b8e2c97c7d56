#include "periodet/critical.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "periodet/error.hpp"
#include "periodet/resultant.hpp"
#include "periodet/roots.hpp"

namespace periodet {

namespace {

struct Hessian {
  BivarPoly hx, hy, hxx, hxy, hyy;
  explicit Hessian(const BivarPoly& h) : hx(h.dx()), hy(h.dy()), hxx(hx.dx()), hxy(hx.dy()), hyy(hy.dy()) {}

  double grad_norm(cplx x, cplx y) const { return std::hypot(std::abs(hx(x, y)), std::abs(hy(x, y))); }

  std::pair<cplx, cplx> polish(cplx x, cplx y) const {
    for (int it = 0; it < 200; ++it) {
      Eigen::Matrix2cd jac;
      jac << hxx(x, y), hxy(x, y), hxy(x, y), hyy(x, y);
      const Eigen::Vector2cd g(hx(x, y), hy(x, y));
      if (g.norm() == 0.0) break;
      const cplx det = jac.determinant();
      if (std::abs(det) < 1e-300) break;
      const Eigen::Vector2cd step = jac.inverse() * g;
      x -= step(0);
      y -= step(1);
      if (step.norm() <= 1e-16 * (1.0 + std::abs(x) + std::abs(y))) break;
    }
    return {x, y};
  }
};

std::vector<cplx> fiber_candidates(const BivarPoly& g, cplx x) {
  UniPoly c = uni::trimmed(g.in_y(x), 1e-13);
  if (c.size() <= 1) return {};
  return root_values(c, RootOptions{.tol = 1e-8});
}

}  // namespace

CriticalData critical_data(const BivarPoly& h, double tol) {
  if (!h.degree() || *h.degree() < 2) throw Error(ErrorKind::InvalidParameter, "critical data needs degree >= 2");
  const int n = *h.degree() - 1;
  const int expected = n * n;
  const Hessian d(h);

  const UniPoly res = resultant_y(d.hx, d.hy);
  if (uni::degree(res) < expected)
    throw Error(ErrorKind::DegenerateInput, "gradient resultant has degree " + std::to_string(uni::degree(res)) +
                                                " < n^2 = " + std::to_string(expected) + " (critical points at infinity)");
  const auto xroots = univariate_roots(res, RootOptions{.tol = 1e-9});

  // Group x-roots that are numerically equal: a multiple root of the
  // resultant is either several critical points sharing x or one multiple
  // critical point.
  std::map<int, std::vector<cplx>> clusters;
  for (const auto& r : xroots) clusters[r.cluster].push_back(r.value);
  std::vector<std::vector<cplx>> groups;
  for (const auto& [id, members] : clusters) {
    const cplx v = members.front();
    auto it = std::find_if(groups.begin(), groups.end(), [&](const std::vector<cplx>& g) {
      return std::abs(g.front() - v) <= 1e-5 * (1.0 + std::abs(v));
    });
    if (it == groups.end()) {
      groups.push_back(members);
    } else {
      it->insert(it->end(), members.begin(), members.end());
    }
  }

  CriticalData out;
  const double scale = std::max(1.0, h.scale());
  for (const auto& members : groups) {
    cplx xc = 0.0;
    for (const auto& v : members) xc += v;
    xc /= static_cast<double>(members.size());

    std::vector<cplx> cands = fiber_candidates(d.hy, xc);
    for (const auto& c : fiber_candidates(d.hx, xc)) cands.push_back(c);
    if (cands.empty()) cands.push_back(0.0);
    std::sort(cands.begin(), cands.end(),
              [&](cplx a, cplx b) { return d.grad_norm(xc, a) < d.grad_norm(xc, b); });

    // Distinct polished critical points over this x, best first.
    std::vector<std::pair<cplx, cplx>> found;
    for (const auto& c : cands) {
      const auto p = d.polish(members.size() == 1 ? members.front() : xc, c);
      if (d.grad_norm(p.first, p.second) > tol * scale) continue;
      const bool dup = std::any_of(found.begin(), found.end(), [&](const auto& q) {
        return std::abs(q.first - p.first) + std::abs(q.second - p.second) <= 1e-6 * (1.0 + std::abs(p.second));
      });
      if (!dup) found.push_back(p);
    }
    if (found.empty()) found.push_back(d.polish(xc, cands.front()));
    if (found.size() < members.size()) out.degenerate = true;

    for (std::size_t k = 0; k < members.size(); ++k) {
      const auto [x, y] = found[k % found.size()];
      out.points.emplace_back(x, y);
      out.values.push_back(h(x, y));
      const double resid = d.grad_norm(x, y);
      out.residuals.push_back(resid);
      if (resid > tol * scale)
        throw Error(ErrorKind::DegenerateInput,
                    "critical point residual " + std::to_string(resid) + " above tolerance");
    }
  }
  if (static_cast<int>(out.points.size()) != expected)
    throw Error(ErrorKind::DegenerateInput, "found " + std::to_string(out.points.size()) + " critical points, expected " +
                                                std::to_string(expected));
  return out;
}

}  // namespace periodet
