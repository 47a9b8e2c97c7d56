// periodet: closed-form and numerical sides of the period determinant.
//
// Exit codes: 0 success or pass, 1 verification failed, 2 input error,
// 3 numerical failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "periodet/closedform.hpp"
#include "periodet/config.hpp"
#include "periodet/critical.hpp"
#include "periodet/error.hpp"
#include "periodet/identities.hpp"
#include "periodet/parse.hpp"
#include "periodet/periods.hpp"
#include "periodet/report.hpp"
#include "periodet/roots.hpp"

using namespace periodet;

namespace {

enum Exit { kPass = 0, kVerifyFail = 1, kInputError = 2, kNumericalFailure = 3 };

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidParameter:
    case ErrorKind::DegenerateInput:
    case ErrorKind::UnsupportedChart:
    case ErrorKind::NongenericInput:
    case ErrorKind::InvalidInput:
    case ErrorKind::SyntaxError:
    case ErrorKind::InvalidHomotopy:
      return kInputError;
    default:
      return kNumericalFailure;
  }
}

cplx parse_cplx(const std::string& s) {
  const BivarPoly p = parse_poly_text(s);
  if (p.degree().value_or(0) > 0) throw Error(ErrorKind::SyntaxError, "expected a complex number, got '" + s + "'");
  return p.coeff(0, 0);
}

/// The chart predicates the closed form and the cover need, reported by name.
void require_chart(const PolySpec& p) {
  if (!p.h0_nonzero)
    throw Error(ErrorKind::UnsupportedChart,
                "predicate x^(n+1)-coefficient != 0 failed; apply a linear change of variables");
  if (!p.hn1_nonzero)
    throw Error(ErrorKind::UnsupportedChart,
                "predicate y^(n+1)-coefficient != 0 failed; apply a linear change of variables");
  if (!p.sigma_nonzero)
    throw Error(ErrorKind::NongenericInput, "predicate Sigma(H) != 0 failed: the top part has a repeated line");
}

struct Output {
  std::string path;

  void write(const Json& j) const {
    const std::string text = dump(j);
    if (path.empty() || path == "-") {
      std::cout << text;
      return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorKind::InvalidParameter, "cannot write " + path);
    f << text;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Period determinants of polynomial level curves: closed form versus numerical periods"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand

  std::string profile;
  Output out;
  app.add_option("--profile", profile, std::string("Tolerance profile: default, fast, strict (env ") + kProfileEnv + ")");
  app.add_option("-o,--out", out.path, "Write the JSON report here instead of stdout");

  std::string poly_text;
  auto add_poly = [&](CLI::App* sub) {
    sub->add_option("-p,--poly", poly_text, "Polynomial, e.g. \"x^3+y^3-0.3x-0.6y\", or a JSON term list")->required();
  };

  CLI::App* closed = app.add_subcommand("closed-form", "Sigma, det E_{n,k}, c_n and C(H)");
  add_poly(closed);
  CLI::App* crit = app.add_subcommand("critical", "Critical points and values");
  add_poly(crit);

  CLI::App* per = app.add_subcommand("periods", "Period matrix and determinant at one level");
  add_poly(per);
  std::string t_text = "1";
  std::string basis_kind = "deform";
  per->add_option("--t", t_text, "Level t (complex, e.g. 1+0.1i)");
  per->add_option("--basis", basis_kind, "fermat (h must be x^(n+1)+y^(n+1)) or deform")
      ->check(CLI::IsMember({"fermat", "deform"}));

  CLI::App* ver = app.add_subcommand("verify", "Both sides of the identity, with a pass/fail report");
  add_poly(ver);
  std::optional<int> samples;
  std::optional<double> tol, root_tol, ratio_tol, quad_tol, track_tol, clearance, radius;
  std::optional<std::string> center;
  std::optional<int> steps, threads;
  std::optional<std::uint64_t> seed;
  std::string csv_path;
  ver->add_option("--samples", samples, "Number of t samples (default 2(n^2+1))");
  ver->add_option("--tol", tol, "Polynomial-fit residual tolerance");
  ver->add_option("--root-tol", root_tol, "Root versus critical value tolerance");
  ver->add_option("--sign-tol", ratio_tol, "Leading coefficient versus C(H) tolerance, up to sign");
  std::optional<std::string> layout;
  ver->add_option("--layout", layout, "Sample layout: circle (|t - center| = radius) or enclosing (around all critical values)")
      ->check(CLI::IsMember({"circle", "enclosing"}));
  ver->add_option("--center", center, "Center of the sample circle");
  ver->add_option("--radius", radius, "Radius of the sample circle");
  ver->add_option("--csv", csv_path, "Also write the (t, det) samples as CSV");
  for (CLI::App* sub : {per, ver}) {
    sub->add_option("--quad-tol", quad_tol, "Quadrature relative tolerance");
    sub->add_option("--track-tol", track_tol, "Root-tracking tolerance");
    sub->add_option("--clearance", clearance, "Branch-point clearance of deformed paths");
    sub->add_option("--steps", steps, "Initial homotopy steps");
    sub->add_option("--threads", threads, "Worker threads for the period integrals");
    sub->add_option("--seed", seed, "Seed of the root finder's starting circles");
  }

  CLI::App* ids = app.add_subcommand("identities", "Two-route residuals of the closed-form identities");
  int id_n = 3;
  double id_tol = 1e-9;
  ids->add_option("--n", id_n, "n = degree - 1")->required();
  ids->add_option("--tol", id_tol, "Residual tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kPass : kInputError;
  }

  std::string command = app.get_subcommands().front()->get_name();
  try {
    RunConfig cfg = profile.empty() ? config_from_environment() : profile_config(profile);
    if (samples) cfg.verify.samples = *samples;
    if (tol) cfg.verify.fit_tol = *tol;
    if (root_tol) cfg.verify.root_tol = *root_tol;
    if (ratio_tol) cfg.verify.ratio_tol = *ratio_tol;
    if (layout) cfg.verify.layout = *layout == "circle" ? SampleLayout::Circle : SampleLayout::Enclosing;
    if (center) cfg.verify.center = parse_cplx(*center);
    if (radius) cfg.verify.radius = *radius;
    if (quad_tol) cfg.quad().rel_tol = *quad_tol;
    if (track_tol) cfg.quad().track.tol = *track_tol;
    if (clearance) cfg.deform().clearance = *clearance;
    if (steps) cfg.deform().steps = *steps;
    if (threads) cfg.threads() = *threads;
    if (seed) cfg.seed = *seed;
    cfg.deform().track = cfg.quad().track;
    validate(cfg);
    set_default_root_seed(cfg.seed);

    if (command == "identities") {
      const auto checks = identity_suite(id_n, id_tol);
      const Json j = identities_report(id_n, checks, id_tol);
      out.write(j);
      return j["pass"].get<bool>() ? kPass : kVerifyFail;
    }

    const PolySpec spec = parse_poly(poly_text);
    if (command == "closed-form") {
      require_chart(spec);
      out.write(closed_form_report(spec));
      return kPass;
    }
    if (command == "critical") {
      out.write(critical_report(spec, critical_data(spec.poly)));
      return kPass;
    }
    if (command == "periods") {
      if (!spec.hn1_nonzero) require_chart(spec);
      const cplx t = parse_cplx(t_text);
      CycleBasis basis;
      if (basis_kind == "fermat") {
        if (!(spec.poly == HomogeneousTop::fermat(spec.n).as_poly()))
          throw Error(ErrorKind::InvalidInput, "--basis fermat needs h = x^(n+1) + y^(n+1)");
        basis = fermat_basis(spec.n);
      } else {
        basis = basis_for(spec.poly, cfg.deform());
      }
      if (t != basis.t) basis = transport_t(basis, {t}, cfg.deform());
      const PeriodMatrix pm = period_matrix(basis, cfg.quad(), cfg.threads());
      out.write(periods_report(spec, basis, pm, cfg));
      return pm.partial ? kNumericalFailure : kPass;
    }
    // verify
    require_chart(spec);
    const VerificationReport rep = verify(spec.poly, cfg.verify);
    out.write(verify_report(spec, rep, cfg));
    if (!csv_path.empty()) {
      std::ofstream f(csv_path, std::ios::binary);
      if (!f) throw Error(ErrorKind::InvalidParameter, "cannot write " + csv_path);
      f << samples_csv(rep.fit);
    }
    if (rep.stage != "complete") return kNumericalFailure;
    return rep.pass ? kPass : kVerifyFail;
  } catch (const Error& e) {
    std::cerr << "periodet " << command << ": " << e.what() << "\n";
    try {
      out.write(error_report(command, e));
    } catch (const Error&) {
    }
    return exit_code(e.kind());
  }
}
