#include "periodet/cycles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>

#include "periodet/critical.hpp"
#include "periodet/error.hpp"
#include "periodet/resultant.hpp"
#include "periodet/roots.hpp"
#include "periodet/specialfn.hpp"

namespace periodet {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Endpoint {
  cplx x;
  cplx y;
};

double gap(const Endpoint& a, const Endpoint& b) { return std::abs(a.x - b.x) + std::abs(a.y - b.y); }

// ---------------------------------------------------------------------------
// Branch-point sites. A site is a group of branch points moved as one rigid
// unit by the flow; all paths keep a disk of radius (spread + clearance)
// around its center free.

struct Site {
  std::vector<cplx> members;
  cplx center;
  double radius;
};

Site make_site(std::vector<cplx> members) {
  cplx c = 0.0;
  for (const auto& z : members) c += z;
  c /= static_cast<double>(members.size());
  double r = 0.0;
  for (const auto& z : members) r = std::max(r, std::abs(z - c));
  return {std::move(members), c, r};
}

UniPoly branch_polynomial(const PlaneCurve& f) {
  const BivarPoly p = f.as_poly();
  return uni::trimmed(resultant_y(p, p.dy()));
}

std::vector<Site> initial_sites(const PlaneCurve& f) {
  const UniPoly r = branch_polynomial(f);
  if (uni::degree(r) < 1) throw Error(ErrorKind::InvalidInput, "curve has no branch points in x");
  const auto roots = univariate_roots(r);
  std::vector<Site> sites;
  std::vector<int> seen;
  for (const auto& root : roots) {
    if (std::find(seen.begin(), seen.end(), root.cluster) != seen.end()) continue;
    seen.push_back(root.cluster);
    std::vector<cplx> members;
    for (const auto& other : roots)
      if (other.cluster == root.cluster) members.push_back(other.value);
    sites.push_back(make_site(std::move(members)));
  }
  return sites;
}

/// Assigns each new branch point to the site holding the nearest old one.
std::optional<std::vector<Site>> match_sites(const std::vector<Site>& old, const std::vector<cplx>& roots) {
  std::vector<std::vector<cplx>> assigned(old.size());
  for (const auto& z : roots) {
    double best = kInf, second = kInf;
    std::size_t best_site = 0;
    for (std::size_t s = 0; s < old.size(); ++s) {
      double d = kInf;
      for (const auto& m : old[s].members) d = std::min(d, std::abs(z - m));
      if (d < best) {
        second = best;
        best = d;
        best_site = s;
      } else {
        second = std::min(second, d);
      }
    }
    if (old.size() > 1 && !(best < 0.4 * second)) return std::nullopt;
    assigned[best_site].push_back(z);
  }
  std::vector<Site> out;
  for (std::size_t s = 0; s < old.size(); ++s) {
    if (assigned[s].size() != old[s].members.size()) return std::nullopt;
    out.push_back(make_site(std::move(assigned[s])));
  }
  return out;
}

/// Splits a site in two by cutting the longest edge of its minimum spanning tree.
std::pair<Site, Site> split_site(const Site& site) {
  const auto& m = site.members;
  const std::size_t k = m.size();
  std::vector<char> in(k, 0);
  std::vector<double> dist(k, kInf);
  std::vector<std::size_t> parent(k, 0);
  std::vector<std::pair<double, std::size_t>> edges;  // (length, child)
  dist[0] = 0.0;
  for (std::size_t it = 0; it < k; ++it) {
    std::size_t u = k;
    for (std::size_t v = 0; v < k; ++v)
      if (!in[v] && (u == k || dist[v] < dist[u])) u = v;
    in[u] = 1;
    if (it > 0) edges.emplace_back(dist[u], u);
    for (std::size_t v = 0; v < k; ++v) {
      const double d = std::abs(m[u] - m[v]);
      if (!in[v] && d < dist[v]) dist[v] = d, parent[v] = u;
    }
  }
  const auto cut = std::max_element(edges.begin(), edges.end())->second;
  // Members reachable from `cut` without crossing the cut edge.
  std::vector<char> side(k, 0);
  side[cut] = 1;
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& [len, child] : edges)
      if (child != cut && side[parent[child]] && !side[child]) side[child] = 1, grew = true;
  }
  std::vector<cplx> a, b;
  for (std::size_t v = 0; v < k; ++v) (side[v] ? a : b).push_back(m[v]);
  return {make_site(std::move(a)), make_site(std::move(b))};
}

// ---------------------------------------------------------------------------
// Displacement field: one compactly supported bump per site, equal to the
// site's displacement on a plateau around it and fading to zero at the bump
// width. Widths are under half the distance to the nearest other site, so
// bumps do not overlap. Points on a plateau move rigidly with their site,
// hence a path can never be overrun by a branch point: relative to the site
// the fade only pushes points outward.

constexpr double kPlateau = 0.5;  // plateau radius as a fraction of the width

double bump(double r, double w) {
  const double a = kPlateau * w;
  if (r <= a) return 1.0;
  if (r >= w) return 0.0;
  const double u = (r - a) / (w - a);
  return 1.0 - u * u * u * (10.0 - 15.0 * u + 6.0 * u * u);
}

struct Flow {
  std::vector<cplx> centers;
  std::vector<double> widths;
  std::vector<cplx> coef;
  bool zero = true;
  double strength = 0.0;  // largest Lipschitz constant of the field

  cplx v(cplx z) const {
    for (std::size_t i = 0; i < centers.size(); ++i) {
      if (coef[i] == cplx(0.0)) continue;
      const double r = std::abs(z - centers[i]);
      if (r < widths[i]) return coef[i] * bump(r, widths[i]);
    }
    return 0.0;
  }
  cplx map(cplx z) const { return zero ? z : z + v(z); }

  /// Smallest width among moving bumps whose support meets the set, or
  /// infinity if none does.
  template <class Dist>
  double relevant_width(Dist&& dist_to) const {
    double w = kInf;
    for (std::size_t i = 0; i < centers.size(); ++i)
      if (coef[i] != cplx(0.0) && dist_to(centers[i]) < widths[i]) w = std::min(w, widths[i]);
    return w;
  }
};

double seg_dist(cplx a, cplx b, cplx z) {
  const cplx d = b - a;
  const double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(z - a);
  const double u = std::clamp(((z - a) * std::conj(d)).real() / len2, 0.0, 1.0);
  return std::abs(z - (a + u * d));
}

Flow build_flow(const std::vector<Site>& old, const std::vector<Site>& now) {
  Flow f;
  const std::size_t k = old.size();
  for (std::size_t i = 0; i < k; ++i) {
    f.centers.push_back(old[i].center);
    f.coef.push_back(now[i].center - old[i].center);
    if (f.coef.back() != cplx(0.0)) f.zero = false;
  }
  for (std::size_t i = 0; i < k; ++i) {
    double nearest = kInf;
    for (std::size_t j = 0; j < k; ++j)
      if (j != i) nearest = std::min(nearest, std::abs(f.centers[i] - f.centers[j]));
    f.widths.push_back(std::isfinite(nearest) ? 0.45 * nearest : 1.0);
    // Members of a cluster must stay on the plateau.
    const double spread = std::max(old[i].radius, now[i].radius) + std::abs(f.coef[i]);
    if (spread >= kPlateau * f.widths[i]) f.strength = kInf;
    // The quintic fade has slope at most 15/8 over (1 - kPlateau) w.
    f.strength = std::max(f.strength, 1.875 * std::abs(f.coef[i]) / ((1.0 - kPlateau) * f.widths[i]));
  }
  return f;
}

/// Image of the segment a -> b under the flow as a polyline; appends mapped
/// nodes after `fa` (the already mapped a) up to and including the image of b.
void map_segment(const Flow& f, cplx a, cplx b, cplx fa, cplx fb, double eta, int depth, std::vector<cplx>& out) {
  const cplx m = 0.5 * (a + b);
  const cplx fm = f.map(m);
  const double w = f.relevant_width([&](cplx z) { return seg_dist(a, b, z); });
  const bool long_piece = std::abs(b - a) > 0.2 * w;
  if (depth < 18 && (long_piece || std::abs(fm - 0.5 * (fa + fb)) > eta)) {
    map_segment(f, a, m, fa, fm, eta, depth + 1, out);
    map_segment(f, m, b, fm, fb, eta, depth + 1, out);
    return;
  }
  out.push_back(fb);
}

/// Drops nodes that sit on the chord of their neighbours, where the flow has
/// been active (`moved`), keeping merged pieces short relative to the bumps.
std::vector<cplx> coarsen(const Flow& f, const std::vector<cplx>& nodes, const std::vector<char>& moved, double eta) {
  if (nodes.size() < 3) return nodes;
  std::vector<cplx> out{nodes.front()};
  for (std::size_t k = 1; k + 1 < nodes.size(); ++k) {
    const cplx a = out.back(), b = nodes[k], c = nodes[k + 1];
    if (moved[k]) {
      const double w = f.relevant_width([&](cplx z) { return seg_dist(a, c, z); });
      if (seg_dist(a, c, b) < 0.1 * eta && std::abs(c - a) <= 0.2 * std::min(w, 1.0)) continue;
    }
    out.push_back(b);
  }
  out.push_back(nodes.back());
  return out;
}

XPath flow_path(const XPath& path, const Flow& flow, double eta) {
  if (flow.zero) return path;
  std::vector<PathPiece> out;
  std::vector<cplx> chain;  // mapped nodes of the current run of straight pieces
  std::vector<char> moved;
  auto flush = [&] {
    if (chain.size() >= 2) {
      const auto nodes = coarsen(flow, chain, moved, eta);
      for (std::size_t k = 1; k < nodes.size(); ++k) out.push_back(Segment{nodes[k - 1], nodes[k]});
    }
    chain.clear();
    moved.clear();
  };
  auto push_segment = [&](cplx a, cplx b) {
    const bool affected = std::isfinite(flow.relevant_width([&](cplx z) { return seg_dist(a, b, z); }));
    if (chain.empty()) {
      chain.push_back(flow.map(a));
      moved.push_back(affected);
    } else if (affected) {
      moved.back() = 1;
    }
    map_segment(flow, a, b, chain.back(), flow.map(b), eta, 0, chain);
    moved.resize(chain.size(), affected ? 1 : 0);
  };

  for (const auto& piece : path.pieces()) {
    if (const auto* seg = std::get_if<Segment>(&piece)) {
      push_segment(seg->a, seg->b);
      continue;
    }
    const auto& arc = std::get<Arc>(piece);
    const XPath single({piece});
    const double w = flow.relevant_width([&](cplx z) { return single.distance_to(z); });
    if (!std::isfinite(w)) {
      flush();
      out.push_back(piece);
      continue;
    }
    // Replace the arc by chords short enough that the sagitta stays below eta.
    const double max_chord = std::min(0.2 * w, std::sqrt(8.0 * arc.radius * eta));
    const int pieces = std::max(8, static_cast<int>(std::ceil(piece_length(piece) / max_chord)));
    cplx prev = piece_point(piece, 0.0);
    for (int k = 1; k <= pieces; ++k) {
      const cplx next = piece_point(piece, static_cast<double>(k) / pieces);
      push_segment(prev, next);
      prev = next;
    }
  }
  flush();
  return XPath(std::move(out));
}

double clearance_of(const Site& s, const std::vector<const XPath*>& paths) {
  double d = kInf;
  for (const auto* p : paths) d = std::min(d, p->distance_to(s.center));
  return d - s.radius;
}

/// Clearance demanded of a site: the configured value, reduced near other
/// sites so that a path may run between two branch points that approach each
/// other (as they do when the level passes close to a critical value).
double required_clearance(const std::vector<Site>& sites, std::size_t i, double clearance) {
  double nearest = kInf;
  for (std::size_t j = 0; j < sites.size(); ++j)
    if (j != i) nearest = std::min(nearest, std::abs(sites[i].center - sites[j].center) - sites[i].radius - sites[j].radius);
  return std::min(clearance, 0.05 * nearest);
}

/// Splits sites that violate the clearance until every site clears or a
/// single branch point is too close. Returns false in the latter case. Site i
/// below floors.size() also passes if it keeps half of floors[i], its
/// clearance before the step: the flow never lets a path close in on a site
/// by itself, so this only catches steps that are too large.
bool enforce_clearance(std::vector<Site>& sites, const std::vector<const XPath*>& paths, double clearance,
                       const std::vector<double>& floors = {}) {
  for (std::size_t i = 0; i < sites.size(); ++i) {
    double need = required_clearance(sites, i, clearance);
    if (i < floors.size()) need = std::min(need, 0.5 * floors[i]);
    if (clearance_of(sites[i], paths) >= need) continue;
    if (sites[i].members.size() < 2 || sites[i].radius == 0.0) return false;
    auto [a, b] = split_site(sites[i]);
    sites[i] = std::move(a);
    sites.push_back(std::move(b));
    i = static_cast<std::size_t>(-1);
  }
  return true;
}

/// Merges pairs of sites that are much closer to each other than to any
/// other site, provided no path runs between them. Branch points converging
/// into a multiple one are then carried as a single rigid unit.
void merge_close_sites(std::vector<Site>& sites, const std::vector<const XPath*>& paths, double clearance) {
  auto gap = [&](std::size_t i, std::size_t j) {
    return std::abs(sites[i].center - sites[j].center) - sites[i].radius - sites[j].radius;
  };
  bool merged = true;
  while (merged && sites.size() > 1) {
    merged = false;
    for (std::size_t i = 0; i < sites.size() && !merged; ++i)
      for (std::size_t j = i + 1; j < sites.size() && !merged; ++j) {
        double others = kInf;
        for (std::size_t k = 0; k < sites.size(); ++k)
          if (k != i && k != j) others = std::min({others, gap(i, k), gap(j, k)});
        if (!(gap(i, j) < 0.2 * others)) continue;
        std::vector<cplx> members = sites[i].members;
        members.insert(members.end(), sites[j].members.begin(), sites[j].members.end());
        Site m = make_site(std::move(members));
        if (clearance_of(m, paths) < std::min(clearance, 0.05 * others)) continue;
        sites[i] = std::move(m);
        sites.erase(sites.begin() + static_cast<std::ptrdiff_t>(j));
        merged = true;
      }
  }
}

bool level_is_critical(const PlaneCurve& f) {
  try {
    const BivarPoly p = f.as_poly();
    for (const auto& v : critical_data(p).values)
      if (std::abs(v) < 1e-9 * std::max(1.0, f.scale())) return true;
  } catch (const Error&) {
  }
  return false;
}

[[noreturn]] void fail_homotopy(const PlaneCurve& f, double tau, const std::string& reason) {
  const std::string where = " at tau = " + std::to_string(tau) + ": " + reason;
  if (!discriminant_sigma(f.as_poly().top()).generic)
    throw Error(ErrorKind::InvalidHomotopy, "top part degenerates (Sigma = 0)" + where);
  if (level_is_critical(f)) throw Error(ErrorKind::InvalidHomotopy, "level becomes critical" + where);
  throw Error(ErrorKind::HomotopyFailure, "deformation failed" + where);
}

}  // namespace

LiftedChain LiftedChain::reversed() const {
  LiftedChain out = *this;
  std::reverse(out.links.begin(), out.links.end());
  for (auto& l : out.links) l.weight = -l.weight;
  return out;
}

LiftedChain LiftedChain::refined(int k) const {
  LiftedChain out = *this;
  for (auto& l : out.links) l.path = l.path.refined(k);
  return out;
}

ChainTracks track_chain(const PlaneCurve& f, const LiftedChain& chain, const TrackOptions& opts) {
  ChainTracks out;
  std::vector<Endpoint> starts, ends;
  for (const auto& link : chain.links) {
    out.tracks.push_back(continue_branch(f, link.path, link.y_start, opts));
    const auto& tr = out.tracks.back();
    Endpoint s{link.path.start(), tr.y_start()}, e{link.path.end(), tr.y_end()};
    if (link.weight < 0) std::swap(s, e);
    starts.push_back(s);
    ends.push_back(e);
  }
  auto record = [&](const Endpoint& a, const Endpoint& b) {
    out.x_mismatch = std::max(out.x_mismatch, std::abs(a.x - b.x));
    out.y_mismatch = std::max(out.y_mismatch, std::abs(a.y - b.y));
  };
  std::size_t loop_start = 0;
  for (std::size_t k = 0; k < ends.size(); ++k) {
    const double d_close = gap(ends[k], starts[loop_start]);
    const double d_next = k + 1 < ends.size() ? gap(ends[k], starts[k + 1]) : kInf;
    if (d_next <= d_close) {
      record(ends[k], starts[k + 1]);
    } else {
      record(ends[k], starts[loop_start]);
      ++out.loops;
      loop_start = k + 1;
    }
  }
  return out;
}

LiftedChain fermat_alpha1(int n, double delta) {
  if (n < 1) throw Error(ErrorKind::InvalidParameter, "n must be at least 1");
  const RootOfUnity eps(n);
  const cplx e = eps.value();
  if (!(delta > 0.0) || delta >= 0.5 * std::abs(1.0 - e) || delta >= 1.0)
    throw Error(ErrorKind::InvalidParameter, "delta = " + std::to_string(delta) + " lets the circles reach other branch points");
  const double a = 1.0 - delta;
  const double y0 = std::pow(1.0 - std::pow(a, n + 1), 1.0 / (n + 1));
  const cplx ea = e * a;
  LiftedChain c;
  c.links.push_back({XPath::polyline({ea, 0.0, a}), y0, 1});
  c.links.push_back({XPath::arc(1.0, delta, kPi, 2.0 * kPi), y0, 1});
  c.links.push_back({XPath::polyline({a, 0.0, ea}), e * y0, 1});
  c.links.push_back({XPath::arc(e, delta, kPi + 2.0 * kPi / (n + 1), -2.0 * kPi), e * y0, 1});
  return c;
}

CycleBasis fermat_basis(int n, double delta) {
  const LiftedChain alpha = fermat_alpha1(n, delta);
  const RootOfUnity eps(n);
  CycleBasis b;
  b.n = n;
  b.h = HomogeneousTop::fermat(n).as_poly();
  b.t = 1.0;
  b.provenance = "fermat(delta=" + std::to_string(delta) + ")";
  const MonomialBasis basis(n);
  for (const auto& e : basis.entries()) {
    LiftedChain c = alpha;
    for (auto& link : c.links) {
      if (e.l != 0) link.path = link.path.rotated(eps.pow(e.l));
      link.y_start *= eps.pow(e.m);
    }
    b.cycles.push_back(std::move(c));
  }
  return b;
}

double fermat_deform_radius(int n) { return 0.25 * std::abs(1.0 - RootOfUnity(n).value()); }

CycleBasis deform_along(const CycleBasis& basis, const std::function<PlaneCurve(double)>& family, const BivarPoly& h_to,
                        cplx t_to, const std::string& label, const DeformOptions& opts) {
  if (opts.steps < 1) throw Error(ErrorKind::InvalidParameter, "steps must be positive");
  if (level_is_critical(family(1.0)))
    throw Error(ErrorKind::InvalidHomotopy, "the target curve is singular (critical level)");
  CycleBasis cur = basis;
  PlaneCurve f_cur = family(0.0);
  std::vector<Site> sites = initial_sites(f_cur);
  std::size_t expected = 0;
  for (const auto& s : sites) expected += s.members.size();

  auto all_paths = [](const CycleBasis& b) {
    std::vector<const XPath*> out;
    for (const auto& c : b.cycles)
      for (const auto& l : c.links) out.push_back(&l.path);
    return out;
  };
  // On entry only a path through a branch point is fatal; a basis coming out
  // of an earlier transport may legitimately sit closer than the clearance.
  {
    const auto paths = all_paths(cur);
    std::vector<double> floors;
    for (const auto& site : sites) floors.push_back(2e-8 * (1.0 + std::abs(site.center)));
    if (!enforce_clearance(sites, paths, opts.clearance, floors))
      throw Error(ErrorKind::HomotopyFailure, "input cycles pass through a branch point");
  }

  TrackOptions root_opts = opts.track;
  root_opts.initial_step = 0.5;
  root_opts.max_step = 1.0;

  const double base = 1.0 / opts.steps;
  const double min_step = base / std::pow(2.0, opts.max_halvings);
  double tau = 0.0, dtau = base;
  std::string reason;
  while (tau < 1.0) {
    const double step = std::min(dtau, 1.0 - tau);
    const double tau1 = (1.0 - tau - step) < 1e-14 ? 1.0 : tau + step;
    auto reject = [&](const std::string& why) {
      reason = why;
      dtau = step / 2.0;
      if (dtau < min_step) fail_homotopy(family(tau1), tau, reason);
    };

    const PlaneCurve f1 = family(tau1);
    UniPoly bp = branch_polynomial(f1);
    if (static_cast<std::size_t>(std::max(uni::degree(bp), 0)) != expected) {
      reject("branch point count changed");
      continue;
    }
    merge_close_sites(sites, all_paths(cur), opts.clearance);
    auto matched = match_sites(sites, root_values(bp));
    if (!matched) {
      reject("branch points could not be matched between steps");
      continue;
    }
    const Flow flow = build_flow(sites, *matched);
    if (flow.strength > 0.5) {
      reject("branch points move too far for one step");
      continue;
    }

    CycleBasis next = cur;
    for (auto& c : next.cycles)
      for (auto& l : c.links) l.path = flow_path(l.path, flow, opts.fidelity);
    std::vector<double> floors;
    for (const auto& site : sites) floors.push_back(clearance_of(site, all_paths(cur)));
    if (!enforce_clearance(*matched, all_paths(next), opts.clearance, floors)) {
      reject("a branch point came within the clearance of a path");
      continue;
    }

    bool ok = true;
    for (std::size_t c = 0; c < next.cycles.size() && ok; ++c) {
      for (std::size_t k = 0; k < next.cycles[c].links.size() && ok; ++k) {
        const cplx x0 = cur.cycles[c].links[k].path.start();
        const cplx x1 = next.cycles[c].links[k].path.start();
        if (x0 == x1 && f_cur.y_poly(x0) == f1.y_poly(x1)) continue;
        auto fam = [&](double th) { return family(tau + th * (tau1 - tau)).y_poly(x0 + th * (x1 - x0)); };
        try {
          next.cycles[c].links[k].y_start = continue_root(fam, cur.cycles[c].links[k].y_start, root_opts);
        } catch (const Error&) {
          ok = false;
        }
      }
    }
    if (!ok) {
      reject("fiber continuation of a link start failed");
      continue;
    }

    cur = std::move(next);
    sites = std::move(*matched);
    f_cur = f1;
    tau = tau1;
    dtau = std::min(step * 1.5, base);
  }

  for (const auto& c : cur.cycles) {
    ChainTracks tr;
    try {
      tr = track_chain(f_cur, c, opts.track);
    } catch (const Error& e) {
      throw Error(ErrorKind::HomotopyFailure, std::string("deformed cycle cannot be tracked: ") + e.what());
    }
    const double tol = 1e-8 * (1.0 + f_cur.scale());
    if (tr.x_mismatch > 1e-10 || tr.y_mismatch > tol)
      throw Error(ErrorKind::HomotopyFailure, "deformed cycle no longer closes (y mismatch " + std::to_string(tr.y_mismatch) + ")");
  }
  cur.h = h_to;
  cur.t = t_to;
  cur.provenance = basis.provenance + "; " + label;
  return cur;
}

CycleBasis deform_basis(const CycleBasis& basis, const BivarPoly& h_from, const BivarPoly& h_to, cplx t,
                        const DeformOptions& opts) {
  const PlaneCurve a(h_from, t), b(h_to, t);
  const double bend = opts.bend;
  auto family = [&](double tau) { return PlaneCurve::blend(a, b, cplx(tau, bend * tau * (1.0 - tau))); };
  return deform_along(basis, family, h_to, t, "deformed along coefficient path", opts);
}

CycleBasis transport_t(const CycleBasis& basis, const std::vector<cplx>& t_nodes, const DeformOptions& opts) {
  CycleBasis cur = basis;
  for (const auto& t1 : t_nodes) {
    const cplx t0 = cur.t;
    if (t1 == t0) continue;
    const PlaneCurve a(cur.h, t0), b(cur.h, t1);
    auto family = [&](double tau) { return PlaneCurve::blend(a, b, tau); };
    std::string keep = cur.provenance;
    cur = deform_along(cur, family, cur.h, t1, "", opts);
    cur.provenance = keep;
  }
  if (!t_nodes.empty()) cur.provenance += "; level transported";
  return cur;
}

CycleBasis combine(const CycleBasis& basis, const Eigen::MatrixXi& u) {
  const auto m = static_cast<Eigen::Index>(basis.cycles.size());
  if (u.rows() != m || u.cols() != m) throw Error(ErrorKind::InvalidParameter, "recombination matrix has the wrong size");
  CycleBasis out = basis;
  out.cycles.clear();
  for (Eigen::Index r = 0; r < m; ++r) {
    LiftedChain c;
    for (Eigen::Index k = 0; k < m; ++k) {
      const int w = u(k, r);
      if (w == 0) continue;
      const LiftedChain& src = basis.cycles[static_cast<std::size_t>(k)];
      for (const auto& link : (w > 0 ? src : src.reversed()).links)
        c.links.push_back({link.path, link.y_start, link.weight * std::abs(w)});
    }
    out.cycles.push_back(std::move(c));
  }
  out.provenance += "; recombined";
  return out;
}

}  // namespace periodet
