#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "periodet/periods.hpp"

namespace periodet {

/// Everything a run can tune. Profiles give consistent defaults; individual
/// command-line flags override single fields afterwards.
struct RunConfig {
  std::string profile = "default";
  VerifyConfig verify;  // holds the quadrature, tracking and homotopy settings too
  std::uint64_t seed = 0x5eed;

  QuadOptions& quad() { return verify.sampling.quad; }
  DeformOptions& deform() { return verify.sampling.deform; }
  int& threads() { return verify.sampling.threads; }
  const QuadOptions& quad() const { return verify.sampling.quad; }
  const DeformOptions& deform() const { return verify.sampling.deform; }
};

/// "default", "fast" (looser quadrature, for smoke runs) or "strict" (tighter
/// quadrature and tracking). invalid-parameter for any other name.
RunConfig profile_config(std::string_view name);

/// Environment variable naming the default profile.
inline constexpr const char* kProfileEnv = "PERIODET_PROFILE";

/// profile_config of $PERIODET_PROFILE, or "default" when unset.
RunConfig config_from_environment();

/// invalid-parameter unless every tolerance is positive and counts are sane.
void validate(const RunConfig& c);

}  // namespace periodet
