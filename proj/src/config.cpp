#include "bergman/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace bergman::config {

namespace {

void reject_unknown(const Json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.contains(key)) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

template <typename T>
T get(const Json& j, const std::string& key, const std::string& where) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("bad or missing '" + key + "' in " + where + ": " + e.what());
  }
}

template <typename T>
T get_or(const Json& j, const std::string& key, T fallback, const std::string& where) {
  return j.contains(key) ? get<T>(j, key, where) : fallback;
}

}  // namespace

const char* default_config_text() {
  return R"({
  "alpha": 0.0,
  "degree_cap": 32,
  "fiber_dim": 3,
  "seed": 24301,
  "maps": {
    "affine": [[0.3, 0.0], [0.4, 0.0]],
    "origin_fixing": [[0.0, 0.0], [0.5, 0.0], [0.3, 0.0]],
    "constant_half": [[0.5, 0.0]],
    "probe": [[0.0, 0.0], [0.5, 0.0], [0.2, 0.0]],
    "quadratic": [[0.0, 0.0], [0.0, 0.0], [1.0, 0.0]],
    "dilation": [[0.0, 0.0], [0.8, 0.0]],
    "imaginary_dilation": [[0.0, 0.0], [0.0, 0.7]],
    "mobius": {"mobius": [0.3, 0.0], "degree": 128},
    "one": [[1.0, 0.0]],
    "zero": [[0.0, 0.0]]
  },
  "quadrature": {"radial": 64, "angular": 256},
  "tolerances": {"exact": 1e-12, "analytic": 1e-6, "power": 1e-12},
  "output": {"path": "", "format": "json"},
  "checks": [
    {"type": "moment_identity", "alphas": [-0.5, 0.0, 1.0, 2.5], "n_max": 40},
    {"type": "kernel_norm", "z": [0.7, 0.0], "alpha": 0.0, "degree": 200},
    {"type": "rotation_structure", "lambda": [0.70710678118654752, 0.70710678118654752], "degree": 64},
    {"type": "norm_bounds", "map": "affine", "alpha": 0.0, "degrees": [16, 32, 48]},
    {"type": "unit_norm_iff", "map": "origin_fixing", "alpha": 1.0, "degrees": [32, 64]},
    {"type": "unit_norm_iff", "map": "constant_half", "alpha": 0.0, "degrees": [16, 32]},
    {"type": "norm_bounds", "map": "constant_half", "alpha": 0.0, "degrees": [16, 32]},
    {"type": "adjoint_kernel", "map": "probe", "z": [0.3, 0.0], "alpha": 0.0, "degree": 128},
    {"type": "adjoint_kernel", "map": "mobius", "z": [0.2, 0.0], "alpha": 0.0, "degree": 128},
    {"type": "adjoint_is_composition", "map": "imaginary_dilation", "degree": 32},
    {"type": "adjoint_is_composition", "map": "quadratic", "degree": 32},
    {"type": "hermitian", "lambda": [0.5, 0.0], "degree": 32},
    {"type": "hermitian", "lambda": [0.0, 0.0], "degree": 32},
    {"type": "normal", "map": "dilation", "degree": 32},
    {"type": "normal", "map": "quadratic", "alpha": 0.0, "degree": 32},
    {"type": "gwco_boundedness", "map": "dilation", "weight": "one", "r": 1, "m_max": 60, "alpha": 0.0},
    {"type": "gwco_boundedness", "map": "dilation", "weight": "one", "r": 0, "m_max": 60, "alpha": 0.0},
    {"type": "gwco_boundedness", "map": "dilation", "weight": "zero", "r": 1, "m_max": 40, "alpha": 0.0}
  ]
}
)";
}

const AnalyticMap& RunConfig::map(const std::string& name) const {
  for (const auto& [n, m] : maps) {
    if (n == name) return m;
  }
  throw ConfigError("unknown map '" + name + "'");
}

harness::HarnessOptions RunConfig::harness_options() const {
  harness::HarnessOptions opt;
  opt.exact_tol = exact_tol;
  opt.analytic_tol = analytic_tol;
  opt.power_tol = power_tol;
  opt.seed = seed;
  opt.radial_nodes = radial_nodes;
  opt.angular_nodes = angular_nodes;
  return opt;
}

Complex parse_complex(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ConfigError("complex numbers are written as [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

AnalyticMap parse_map(const Json& j) {
  if (j.is_array()) {
    if (j.empty()) throw ConfigError("map literal needs at least one coefficient");
    std::vector<Complex> c;
    for (const auto& x : j) c.push_back(parse_complex(x));
    try {
      return AnalyticMap(std::move(c));
    } catch (const DomainError& e) {
      throw ConfigError(e.what());
    }
  }
  reject_unknown(j, {"mobius", "degree"}, "map builder");
  if (!j.contains("mobius")) throw ConfigError("map builder needs a 'mobius' parameter");
  try {
    return mobius(parse_complex(j.at("mobius")), get<int>(j, "degree", "map builder"));
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

RunConfig parse_config(const Json& j) {
  reject_unknown(j,
                 {"alpha", "degree_cap", "fiber_dim", "seed", "maps", "quadrature",
                  "tolerances", "output", "checks"},
                 "config");
  RunConfig cfg;
  cfg.alpha = get_or(j, "alpha", cfg.alpha, "config");
  cfg.degree_cap = get_or(j, "degree_cap", cfg.degree_cap, "config");
  cfg.fiber_dim = get_or(j, "fiber_dim", cfg.fiber_dim, "config");
  cfg.seed = get_or(j, "seed", cfg.seed, "config");
  try {
    SpaceParams(cfg.alpha, cfg.degree_cap, cfg.fiber_dim);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  if (j.contains("maps")) {
    if (!j["maps"].is_object()) throw ConfigError("'maps' must be an object of named maps");
    for (const auto& [name, literal] : j["maps"].items()) {
      cfg.maps.emplace_back(name, parse_map(literal));
    }
  }
  if (j.contains("quadrature")) {
    const auto& q = j["quadrature"];
    reject_unknown(q, {"radial", "angular"}, "quadrature");
    cfg.radial_nodes = get_or(q, "radial", cfg.radial_nodes, "quadrature");
    cfg.angular_nodes = get_or(q, "angular", cfg.angular_nodes, "quadrature");
    if (cfg.radial_nodes < 1 || cfg.angular_nodes < 1) {
      throw ConfigError("quadrature sizes must be positive");
    }
  }
  if (j.contains("tolerances")) {
    const auto& t = j["tolerances"];
    reject_unknown(t, {"exact", "analytic", "power"}, "tolerances");
    cfg.exact_tol = get_or(t, "exact", cfg.exact_tol, "tolerances");
    cfg.analytic_tol = get_or(t, "analytic", cfg.analytic_tol, "tolerances");
    cfg.power_tol = get_or(t, "power", cfg.power_tol, "tolerances");
    if (!(cfg.exact_tol > 0 && cfg.analytic_tol > 0 && cfg.power_tol > 0)) {
      throw ConfigError("tolerances must be positive");
    }
  }
  if (j.contains("output")) {
    const auto& o = j["output"];
    reject_unknown(o, {"path", "format"}, "output");
    cfg.output_path = get_or<std::string>(o, "path", "", "output");
    cfg.output_format = get_or<std::string>(o, "format", "json", "output");
    if (cfg.output_format != "json" && cfg.output_format != "csv") {
      throw ConfigError("output format must be json or csv");
    }
  }
  if (j.contains("checks")) {
    if (!j["checks"].is_array()) throw ConfigError("'checks' must be an array");
    cfg.checks = j["checks"];
  }
  return cfg;
}

RunConfig parse_config_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(j);
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

namespace {

using harness::Check;
using NamedCheck = std::pair<std::string, Check>;

NamedCheck build_check(const RunConfig& cfg, const Json& c, std::size_t index) {
  const std::string where = "checks[" + std::to_string(index) + "]";
  if (!c.is_object() || !c.contains("type")) throw ConfigError(where + " needs a 'type'");
  const auto type = get<std::string>(c, "type", where);
  const auto opt = cfg.harness_options();
  const double alpha = get_or(c, "alpha", cfg.alpha, where);
  const int degree = get_or(c, "degree", cfg.degree_cap, where);
  try {
    require_valid_alpha(alpha);
  } catch (const DomainError& e) {
    throw ConfigError(where + ": " + e.what());
  }
  if (degree < 0) throw ConfigError(where + ": degree must be >= 0");

  const auto degrees = [&] {
    auto d = get_or(c, "degrees", std::vector<int>{std::max(cfg.degree_cap / 2, 1), cfg.degree_cap},
                    where);
    if (d.empty()) throw ConfigError(where + ": 'degrees' must not be empty");
    return d;
  };

  if (type == "moment_identity") {
    reject_unknown(c, {"type", "alphas", "n_max"}, where);
    const auto alphas =
        get_or(c, "alphas", std::vector<double>{-0.5, 0.0, 1.0, 2.5}, where);
    const int n_max = get_or(c, "n_max", 40, where);
    return {type, [=] { return harness::check_moment_identity(alphas, n_max, opt); }};
  }
  if (type == "kernel_norm") {
    reject_unknown(c, {"type", "z", "alpha", "degree"}, where);
    const Complex z = parse_complex(c.at("z"));
    return {type, [=] { return harness::check_kernel_norm(z, alpha, degree, opt); }};
  }
  if (type == "rotation_structure" || type == "hermitian") {
    reject_unknown(c, {"type", "lambda", "alpha", "degree"}, where);
    if (!c.contains("lambda")) throw ConfigError(where + " needs 'lambda'");
    const Complex lambda = parse_complex(c.at("lambda"));
    if (type == "hermitian") {
      return {type, [=] { return harness::check_hermitian(lambda, alpha, degree, opt); }};
    }
    return {type, [=] { return harness::check_rotation_structure(lambda, alpha, degree, opt); }};
  }
  if (type == "norm_bounds" || type == "unit_norm_iff") {
    reject_unknown(c, {"type", "map", "alpha", "degrees"}, where);
    const auto phi = cfg.map(get<std::string>(c, "map", where));
    const auto d = degrees();
    if (type == "norm_bounds") {
      return {type, [=] { return harness::check_norm_bounds(phi, alpha, d, opt); }};
    }
    return {type, [=] { return harness::check_unit_norm_iff(phi, alpha, d, opt); }};
  }
  if (type == "adjoint_kernel") {
    reject_unknown(c, {"type", "map", "z", "alpha", "degree", "out_degree"}, where);
    const auto phi = cfg.map(get<std::string>(c, "map", where));
    const Complex z = parse_complex(c.at("z"));
    const int out = get_or(c, "out_degree", -1, where);
    return {type, [=] { return harness::check_adjoint_kernel(phi, z, alpha, degree, opt, out); }};
  }
  if (type == "adjoint_is_composition" || type == "normal") {
    reject_unknown(c, {"type", "map", "alpha", "degree"}, where);
    const auto phi = cfg.map(get<std::string>(c, "map", where));
    if (type == "normal") {
      return {type, [=] { return harness::check_normal(phi, alpha, degree, opt); }};
    }
    return {type, [=] { return harness::check_adjoint_is_composition(phi, alpha, degree, opt); }};
  }
  if (type == "gwco_boundedness") {
    reject_unknown(c, {"type", "map", "weight", "r", "m_max", "alpha"}, where);
    const auto phi = cfg.map(get<std::string>(c, "map", where));
    const auto psi = cfg.map(get<std::string>(c, "weight", where));
    const int r = get<int>(c, "r", where);
    const int m_max = get_or(c, "m_max", cfg.degree_cap, where);
    if (r < 0 || m_max < r) throw ConfigError(where + ": need 0 <= r <= m_max");
    return {type,
            [=] { return harness::check_gwco_boundedness(phi, psi, r, m_max, alpha, opt); }};
  }
  throw ConfigError(where + ": unknown check type '" + type + "'");
}

}  // namespace

std::vector<std::pair<std::string, harness::Check>> build_checks(const RunConfig& cfg) {
  if (cfg.maps.empty()) throw ConfigError("the map set is empty; nothing to verify");
  std::vector<NamedCheck> checks;
  if (!cfg.checks.is_null()) {
    for (std::size_t i = 0; i < cfg.checks.size(); ++i) {
      checks.push_back(build_check(cfg, cfg.checks[i], i));
    }
    return checks;
  }
  // Standard suite: the space-level identities plus every structural check per map.
  const auto opt = cfg.harness_options();
  const double alpha = cfg.alpha;
  const int n = cfg.degree_cap;
  checks.emplace_back("moment_identity", [=] {
    return harness::check_moment_identity({-0.5, 0.0, 1.0, 2.5}, 40, opt);
  });
  checks.emplace_back("kernel_norm",
                      [=] { return harness::check_kernel_norm({0.7, 0.0}, alpha, 200, opt); });
  for (const auto& [name, phi] : cfg.maps) {
    const std::vector<int> degrees{std::max(n / 2, 1), n};
    checks.emplace_back("norm_bounds",
                        [=] { return harness::check_norm_bounds(phi, alpha, degrees, opt); });
    checks.emplace_back("unit_norm_iff",
                        [=] { return harness::check_unit_norm_iff(phi, alpha, degrees, opt); });
    checks.emplace_back("adjoint_kernel", [=] {
      return harness::check_adjoint_kernel(phi, {0.3, 0.0}, alpha, n, opt);
    });
    checks.emplace_back("adjoint_is_composition", [=] {
      return harness::check_adjoint_is_composition(phi, alpha, std::max(n, 2), opt);
    });
    checks.emplace_back("normal",
                        [=] { return harness::check_normal(phi, alpha, std::max(n, 2), opt); });
  }
  return checks;
}

}  // namespace bergman::config
