#include "periodet/config.hpp"

#include <cstdlib>

#include "periodet/error.hpp"

namespace periodet {

RunConfig profile_config(std::string_view name) {
  RunConfig c;
  c.profile = std::string(name);
  if (name == "default") return c;
  if (name == "fast") {
    c.quad().rel_tol = 1e-8;
    c.deform().steps = 8;
    return c;
  }
  if (name == "strict") {
    c.quad().rel_tol = 1e-12;
    c.quad().track.tol = 1e-14;
    c.deform().steps = 32;
    c.deform().fidelity = 1e-3;
    return c;
  }
  throw Error(ErrorKind::InvalidParameter, "unknown tolerance profile '" + std::string(name) +
                                               "' (expected default, fast or strict)");
}

RunConfig config_from_environment() {
  const char* v = std::getenv(kProfileEnv);
  return profile_config(v && *v ? v : "default");
}

void validate(const RunConfig& c) {
  auto positive = [](double v, const char* what) {
    if (!(v > 0.0)) throw Error(ErrorKind::InvalidParameter, std::string(what) + " must be positive");
  };
  const VerifyConfig& v = c.verify;
  positive(v.fit_tol, "fit tolerance");
  positive(v.root_tol, "root tolerance");
  positive(v.ratio_tol, "sign-match tolerance");
  positive(v.radius, "sample radius");
  positive(c.quad().rel_tol, "quadrature tolerance");
  positive(c.quad().track.tol, "tracking tolerance");
  positive(c.deform().clearance, "clearance");
  positive(c.deform().fidelity, "path fidelity");
  if (c.deform().steps < 1) throw Error(ErrorKind::InvalidParameter, "homotopy steps must be at least 1");
  if (v.sampling.threads < 1) throw Error(ErrorKind::InvalidParameter, "threads must be at least 1");
  if (v.samples < 0) throw Error(ErrorKind::InvalidParameter, "sample count must not be negative");
}

}  // namespace periodet
