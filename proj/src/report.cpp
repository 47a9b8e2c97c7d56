#include "periodet/report.hpp"

#include <cstdio>

#include "periodet/closedform.hpp"

namespace periodet {

namespace {

Json header(const char* command) { return Json{{"schema", kSchemaVersion}, {"command", command}}; }

Json cplx_list(const std::vector<cplx>& v) {
  Json a = Json::array();
  for (const auto& z : v) a.push_back(to_json(z));
  return a;
}

}  // namespace

Json to_json(cplx z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Json to_json(const PolySpec& p) {
  Json terms = Json::array();
  for (const auto& [ij, c] : p.poly.coeffs())
    terms.push_back({{"i", ij.first}, {"j", ij.second}, {"re", c.real()}, {"im", c.imag()}});
  Json chart{{"x_power_coefficient_nonzero", p.h0_nonzero},
             {"y_power_coefficient_nonzero", p.hn1_nonzero},
             {"sigma_nonzero", p.sigma_nonzero}};
  if (p.h0_nonzero) chart["sigma"] = to_json(p.sigma);
  return Json{{"source", p.source}, {"normalized", format_poly(p.poly)}, {"n", p.n}, {"terms", terms}, {"chart", chart}};
}

Json to_json(const RunConfig& c) {
  const VerifyConfig& v = c.verify;
  return Json{{"profile", c.profile},
              {"seed", c.seed},
              {"threads", v.sampling.threads},
              {"quadrature", {{"rel_tol", c.quad().rel_tol}, {"abs_tol", c.quad().abs_tol},
                              {"max_intervals", c.quad().max_intervals}}},
              {"tracking", {{"tol", c.quad().track.tol}, {"guard", c.quad().track.guard},
                            {"min_step", c.quad().track.min_step}}},
              {"homotopy", {{"steps", c.deform().steps}, {"max_halvings", c.deform().max_halvings},
                            {"bend", c.deform().bend}, {"clearance", c.deform().clearance},
                            {"fidelity", c.deform().fidelity}}},
              {"samples", {{"count", v.samples},
                           {"layout", v.layout == SampleLayout::Circle ? "circle" : "enclosing"},
                           {"center", to_json(v.center)}, {"radius", v.radius},
                           {"angle_offset", v.angle_offset}, {"critical_guard", v.sampling.critical_guard}}},
              {"checks", {{"fit_tol", v.fit_tol}, {"root_tol", v.root_tol}, {"sign_match_tol", v.ratio_tol}}}};
}

Json closed_form_report(const PolySpec& p) {
  Json j = header("closed-form");
  j["poly"] = to_json(p);
  const HomogeneousTop top = p.poly.top();
  const int n = p.n;
  Json dets = Json::array();
  for (int k = 1; k <= n - 1; ++k) dets.push_back({{"k", k}, {"det", to_json(build_E(top, k).det())}});
  j["det_E"] = dets;
  j["c_n"] = to_json(c_constant(n));
  const SignAmbiguous c = C_of_H(top);
  j["C"] = {{"plus", to_json(c.value)}, {"minus", to_json(-c.value)}, {"note", c.note}};
  return j;
}

Json critical_report(const PolySpec& p, const CriticalData& d) {
  Json j = header("critical");
  j["poly"] = to_json(p);
  Json pts = Json::array();
  for (std::size_t k = 0; k < d.points.size(); ++k)
    pts.push_back({{"x", to_json(d.points[k].first)},
                   {"y", to_json(d.points[k].second)},
                   {"value", to_json(d.values[k])},
                   {"gradient_norm", d.residuals[k]}});
  j["points"] = pts;
  j["coincident_points"] = d.degenerate;
  return j;
}

Json periods_report(const PolySpec& p, const CycleBasis& basis, const PeriodMatrix& pm, const RunConfig& c) {
  Json j = header("periods");
  j["poly"] = to_json(p);
  j["t"] = to_json(pm.t);
  j["basis"] = {{"provenance", basis.provenance}, {"cycles", basis.cycles.size()}};
  Json rows = Json::array(), errs = Json::array();
  for (Eigen::Index r = 0; r < pm.entries.rows(); ++r) {
    Json row = Json::array(), er = Json::array();
    for (Eigen::Index col = 0; col < pm.entries.cols(); ++col) {
      row.push_back(to_json(pm.entries(r, col)));
      er.push_back(pm.errors(r, col));
    }
    rows.push_back(row);
    errs.push_back(er);
  }
  j["matrix"] = rows;
  j["errors"] = errs;
  j["det"] = to_json(pm.det());
  j["det_error"] = pm.det_error();
  j["condition"] = pm.condition;
  j["partial"] = pm.partial;
  j["config"] = to_json(c);
  return j;
}

Json verify_report(const PolySpec& p, const VerificationReport& r, const RunConfig& c) {
  Json j = header("verify");
  j["poly"] = to_json(p);
  j["pass"] = r.pass;
  j["stage"] = r.stage;
  if (!r.message.empty()) j["message"] = r.message;
  j["basis_provenance"] = r.basis_provenance;
  j["closed_form"] = {{"C", to_json(r.closed_form.value)}, {"note", r.closed_form.note}};
  j["critical_values"] = cplx_list(r.critical_values);

  const DetFit& f = r.fit;
  Json samples = Json::array();
  for (const auto& [t, d] : f.samples) samples.push_back({{"t", to_json(t)}, {"det", to_json(d)}});
  j["fit"] = {{"samples", samples},
              {"rejected", cplx_list(f.rejected)},
              {"center", to_json(f.center)},
              {"radius", f.radius},
              {"coefficients", cplx_list(f.coefficients)},
              {"coefficients_scaled", cplx_list(f.coefficients_u)},
              {"leading", to_json(f.leading)},
              {"roots", cplx_list(f.roots)},
              {"residual", f.residual},
              {"noise", f.noise}};

  Json roots = Json::array();
  for (const auto& m : r.roots)
    roots.push_back({{"fitted", to_json(m.fitted)}, {"critical", to_json(m.critical)}, {"distance", m.distance},
                     {"allowed", m.allowed}});
  j["checks"] = {{"polynomial", {{"pass", r.polynomial_pass}, {"residual", f.residual}, {"tol", r.config.fit_tol}}},
                 {"roots", {{"pass", r.roots_pass}, {"max_distance", r.max_root_distance}, {"matches", roots}}},
                 {"leading", {{"pass", r.ratio_pass},
                              {"ratio", to_json(r.ratio)},
                              {"sign", r.sign},
                              {"error", r.ratio_error},
                              {"tol", r.config.ratio_tol}}}};
  RunConfig used = c;  // with the sample circle the run actually used
  used.verify = r.config;
  j["config"] = to_json(used);
  return j;
}

Json identities_report(int n, const std::vector<IdentityCheck>& checks, double tol) {
  Json j = header("identities");
  j["n"] = n;
  j["tol"] = tol;
  Json rows = Json::array();
  bool all = true;
  for (const auto& c : checks) {
    rows.push_back({{"name", c.name}, {"statement", c.statement}, {"residual", c.residual}, {"pass", c.pass}});
    all = all && c.pass;
  }
  j["checks"] = rows;
  j["pass"] = all;
  return j;
}

Json error_report(const std::string& command, const Error& e) {
  Json j{{"schema", kSchemaVersion}, {"command", command}};
  j["error"] = {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
  return j;
}

std::string samples_csv(const DetFit& fit) {
  std::string out = "t_re,t_im,det_re,det_im\n";
  char buf[160];
  for (const auto& [t, d] : fit.samples) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", t.real(), t.imag(), d.real(), d.imag());
    out += buf;
  }
  return out;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace periodet
