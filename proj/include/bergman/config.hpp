#pragma once

// Run configuration for the bergman_lab tool: a single JSON document.
//
//   {
//     "alpha": 0.0, "degree_cap": 32, "fiber_dim": 3, "seed": 24301,
//     "maps": { "phi": [[0.3, 0], [0.4, 0]], "m": {"mobius": [0.3, 0], "degree": 64} },
//     "quadrature": { "radial": 64, "angular": 256 },
//     "tolerances": { "exact": 1e-12, "analytic": 1e-6, "power": 1e-12 },
//     "output": { "path": "", "format": "json" },
//     "checks": [ { "type": "hermitian", "lambda": [0.5, 0] }, ... ]
//   }
//
// Complex numbers are [re, im] pairs. Unknown keys are rejected.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "bergman/analytic_map.hpp"
#include "bergman/harness.hpp"

namespace bergman::config {

using Json = nlohmann::ordered_json;

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  double alpha = 0.0;
  int degree_cap = 32;
  int fiber_dim = 3;
  std::uint64_t seed = 24301;
  std::vector<std::pair<std::string, AnalyticMap>> maps;
  int radial_nodes = 64;
  int angular_nodes = 256;
  double exact_tol = 1e-12;
  double analytic_tol = 1e-6;
  double power_tol = 1e-12;
  std::string output_path;
  std::string output_format = "json";
  Json checks;  // null when absent

  const AnalyticMap& map(const std::string& name) const;
  harness::HarnessOptions harness_options() const;
};

/// The configuration used when no --config is given; mirrors configs/default.json.
const char* default_config_text();

RunConfig parse_config(const Json& j);
RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);

/// Map literal: [[re, im], ...] or {"mobius": [re, im], "degree": N}.
AnalyticMap parse_map(const Json& j);
Complex parse_complex(const Json& j);

/// Checks described by the config; the standard per-map suite when "checks" is absent.
/// Throws ConfigError for empty map sets and malformed entries.
std::vector<std::pair<std::string, harness::Check>> build_checks(const RunConfig& cfg);

}  // namespace bergman::config
