#pragma once
// Serialization: config and profile files, report JSON, CSV emission.
// JSON doubles survive a round trip bit-exactly (shortest-round-trip
// encoding); CSV prints 17 significant digits for the same guarantee.

#include <json.hpp>

#include <string>
#include <vector>

#include "wag/analytic.hpp"
#include "wag/dynamics.hpp"
#include "wag/model.hpp"
#include "wag/simulate.hpp"

namespace wag {

struct ConfigNotFound : std::runtime_error {
  explicit ConfigNotFound(const std::string& what) : std::runtime_error(what) {}
};
struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

using json = nlohmann::json;

std::string format_real(double v);  // %.17g

json params_to_json(const ModelParams& params);
ModelParams params_from_json(const json& j);  // validates before returning
ModelParams load_params(const std::string& path);

json profile_to_json(const EquilibriumProfile& profile);
EquilibriumProfile profile_from_json(const json& j, const ModelParams& params);
// Accepts either a bare profile object or a solve report (its stable profile).
EquilibriumProfile load_profile(const std::string& path, const ModelParams& params);

json benchmark_to_json(const BenchmarkSolution& bench);
json derived_to_json(const DerivedQuantities& derived);
json report_to_json(const EstimateReport& report);
json stability_to_json(const StabilityReport& report);

// Per-level record rows of the solve report: m, c, theta, x_benchmark,
// x_stable, cutoff_stable, alpha, mu, whataboutism_frequency.
json solve_records(const ModelParams& params, const DerivedQuantities& derived,
                   const BenchmarkSolution& bench, const EquilibriumProfile& stable,
                   const WhataboutismStats& stats);
std::string solve_records_csv(const json& records);

std::string reports_csv(const std::vector<EstimateReport>& reports);

void write_text_file(const std::string& path, const std::string& content);
json read_json_file(const std::string& path);  // ConfigNotFound / ValidationError

}  // namespace wag
