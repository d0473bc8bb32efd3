#pragma once

// Batch runner: builds a catalog model, runs the requested check suites and
// assembles a CheckReport.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "fkm/model.hpp"
#include "fkm/report.hpp"

namespace fkm {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::string manifold_key;
  std::optional<double> deform_a;
  std::uint64_t seed = 1;
  int points = 20;
  int samples = 200;
  double tolerance = 1e-6;
  std::vector<std::string> checks{"all"};
  std::optional<std::string> output_path;
  std::optional<Convention> convention;  // empty: the entry's declared convention
};

/// Throws ConfigError.
void validate(const RunConfig& config);

/// Keys: manifold, a, seed, points, samples, tol, checks (name, list or "all"),
/// json, convention ("half", "plain" or "auto"). Throws ConfigError.
RunConfig config_from_json(const nlohmann::json& j);

/// Names selected by "all", in execution order.
const std::vector<std::string>& default_check_names();
/// default_check_names() plus the fits that only count when requested.
const std::vector<std::string>& known_check_names();

/// Throws ConfigError for invalid configs and UnknownKeyError for unknown
/// manifolds; geometry failures become failed checks with diagnostics.
CheckReport run(const RunConfig& config);

}  // namespace fkm
