#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "periodet/config.hpp"
#include "periodet/critical.hpp"
#include "periodet/error.hpp"
#include "periodet/identities.hpp"
#include "periodet/parse.hpp"
#include "periodet/periods.hpp"

namespace periodet {

/// Bumped whenever a field changes meaning or disappears.
inline constexpr const char* kSchemaVersion = "periodet-report/1";

using Json = nlohmann::json;

Json to_json(cplx z);
Json to_json(const PolySpec& p);
Json to_json(const RunConfig& c);

Json closed_form_report(const PolySpec& p);
Json critical_report(const PolySpec& p, const CriticalData& d);
Json periods_report(const PolySpec& p, const CycleBasis& basis, const PeriodMatrix& pm, const RunConfig& c);
Json verify_report(const PolySpec& p, const VerificationReport& r, const RunConfig& c);
Json identities_report(int n, const std::vector<IdentityCheck>& checks, double tol);
Json error_report(const std::string& command, const Error& e);

/// "t_re,t_im,det_re,det_im" lines, one per sample.
std::string samples_csv(const DetFit& fit);

/// Compact-ish, key-sorted, shortest round-trip doubles: byte-identical for
/// identical inputs.
std::string dump(const Json& j);

}  // namespace periodet
