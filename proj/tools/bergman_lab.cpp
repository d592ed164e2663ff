// bergman_lab: command-line front end for the truncated weighted Bergman space.
//
// Exit codes: 0 pass, 1 check failure, 2 configuration or usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "bergman/analytic_map.hpp"
#include "bergman/config.hpp"
#include "bergman/core_space.hpp"
#include "bergman/harness.hpp"
#include "bergman/kernels.hpp"
#include "bergman/operators.hpp"
#include "bergman/quadrature.hpp"

namespace {

using bergman::Complex;
using bergman::config::ConfigError;
using bergman::config::RunConfig;
using Json = nlohmann::ordered_json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

// Rows of a flat table; every command emits one for --format csv.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

struct Outcome {
  Json json;
  Table table;
  int exit_code = kExitPass;
};

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Json complex_json(Complex c) { return Json::array({c.real(), c.imag()}); }

Complex parse_complex_flag(const std::string& text) {
  std::stringstream in(text);
  double re = 0.0;
  double im = 0.0;
  char comma = 0;
  in >> re;
  if (in.fail()) throw ConfigError("cannot parse complex number '" + text + "'");
  if (in >> comma) {
    if (comma != ',' || !(in >> im)) throw ConfigError("complex numbers are written re,im");
  }
  return {re, im};
}

std::vector<int> parse_sweep(const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      const int n = std::stoi(item, &used);
      if (used != item.size() || n < 0) throw std::invalid_argument(item);
      out.push_back(n);
    } catch (const std::exception&) {
      throw ConfigError("bad degree in --degree-sweep: '" + item + "'");
    }
  }
  if (out.empty()) throw ConfigError("--degree-sweep needs at least one degree");
  return out;
}

// A map flag is a config map name or an inline JSON literal.
bergman::AnalyticMap resolve_map(const RunConfig& cfg, const std::string& text) {
  if (text.empty()) throw ConfigError("a map is required (--map)");
  if (text.front() == '[' || text.front() == '{') {
    try {
      return bergman::config::parse_map(Json::parse(text));
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError(std::string("bad inline map: ") + e.what());
    }
  }
  return cfg.map(text);
}

int thread_budget() {
  int n = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("BERGMAN_LAB_THREADS")) {
    try {
      const int cap = std::stoi(env);
      if (cap >= 1) n = std::min(n, cap);
    } catch (const std::exception&) {
      throw ConfigError("BERGMAN_LAB_THREADS must be a positive integer");
    }
  }
  return n;
}

struct Flags {
  std::string config_path;
  std::string out_path;
  std::string format;
  int degree = -1;
  std::string degree_sweep;
  long long seed = -1;
  double tol = -1.0;
  std::string map;
  std::string weight = "1";
  int r = 1;
  int m_max = -1;
  std::string z = "0.5,0";
  int index = 0;
  int n_max = 40;
  std::string matrix_csv;
};

RunConfig load(const Flags& f) {
  RunConfig cfg = f.config_path.empty()
                      ? bergman::config::parse_config_text(bergman::config::default_config_text())
                      : bergman::config::load_config(f.config_path);
  if (f.degree >= 0) cfg.degree_cap = f.degree;
  if (f.seed >= 0) cfg.seed = static_cast<std::uint64_t>(f.seed);
  if (f.tol > 0.0) {
    cfg.exact_tol = f.tol;
    cfg.power_tol = f.tol;
  }
  if (!f.format.empty()) cfg.output_format = f.format;
  if (!f.out_path.empty()) cfg.output_path = f.out_path;
  return cfg;
}

Outcome cmd_moments(const RunConfig& cfg, int n_max) {
  if (n_max < 0) throw ConfigError("n_max must be >= 0");
  const bergman::DiskRule rule(cfg.alpha, cfg.radial_nodes, cfg.angular_nodes);
  const bergman::WeightSequence w(cfg.alpha, n_max);
  Outcome o;
  o.table.columns = {"n", "closed_form", "quadrature", "rel_err"};
  Json rows = Json::array();
  double worst = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    const double q =
        bergman::disk_integral([n](Complex z) { return Complex(std::pow(std::norm(z), n)); }, rule)
            .real();
    const double err = std::abs(q - w[n]) / w[n];
    worst = std::max(worst, err);
    rows.push_back({{"n", n}, {"closed_form", w[n]}, {"quadrature", q}, {"rel_err", err}});
    o.table.rows.push_back({std::to_string(n), num(w[n]), num(q), num(err)});
  }
  o.json = {{"command", "moments"},
            {"alpha", cfg.alpha},
            {"n_max", n_max},
            {"max_rel_err", worst},
            {"rows", rows}};
  return o;
}

Outcome cmd_opnorm(const RunConfig& cfg, const bergman::AnalyticMap& phi) {
  const auto opt = cfg.harness_options();
  const auto n = bergman::harness::composition_norm(phi, cfg.alpha, cfg.degree_cap, opt);
  const double lower = bergman::harness::norm_lower_bound(phi[0], cfg.alpha);
  const double upper = bergman::harness::norm_upper_bound(phi[0], cfg.alpha);
  Outcome o;
  o.json = {{"command", "opnorm"},
            {"alpha", cfg.alpha},
            {"degree", n.degree},
            {"norm", n.value},
            {"power_residual", n.residual},
            {"converged", n.converged},
            {"lower_bound", lower},
            {"upper_bound", upper},
            {"within_bounds", n.value >= lower - 1e-6 && n.value <= upper + 1e-6}};
  o.table.columns = {"degree", "norm", "power_residual", "lower_bound", "upper_bound"};
  o.table.rows.push_back(
      {std::to_string(n.degree), num(n.value), num(n.residual), num(lower), num(upper)});
  if (!n.converged) o.exit_code = kExitFail;
  return o;
}

Outcome cmd_kernel(const RunConfig& cfg, Complex z, int index) {
  if (index < 0 || index >= cfg.fiber_dim) throw ConfigError("--index outside the fiber");
  const bergman::KernelPoint p(z, index);
  const bergman::SpaceParams params(cfg.alpha, cfg.degree_cap, cfg.fiber_dim);
  const double truncated = bergman::truncated_kernel_norm(z, cfg.alpha, cfg.degree_cap);
  const double closed = bergman::kernel_norm_closed_form(p, cfg.alpha);

  // Reproducing property on a seeded random polynomial: <f, K_z e_j> = <f(z), e_j>.
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> g;
  std::vector<bergman::ComplexVector> coeffs(cfg.degree_cap + 1,
                                             bergman::ComplexVector(cfg.fiber_dim));
  for (auto& c : coeffs) {
    for (auto& x : c) x = {g(rng), g(rng)};
  }
  const bergman::CoefficientSeries f(params, coeffs);
  const Complex paired = bergman::inner_product(f, bergman::kernel_series(p, params));
  const Complex direct = bergman::evaluate(f, z)[index];
  const double reproducing = std::abs(paired - direct) / std::max(1.0, std::abs(direct));

  Outcome o;
  o.json = {{"command", "kernel"},
            {"alpha", cfg.alpha},
            {"degree", cfg.degree_cap},
            {"z", complex_json(z)},
            {"index", index},
            {"truncated_norm", truncated},
            {"closed_form_norm", closed},
            {"relative_gap", (closed - truncated) / closed},
            {"reproducing_residual", reproducing}};
  o.table.columns = {"degree", "truncated_norm", "closed_form_norm", "relative_gap",
                     "reproducing_residual"};
  o.table.rows.push_back({std::to_string(cfg.degree_cap), num(truncated), num(closed),
                          num((closed - truncated) / closed), num(reproducing)});
  return o;
}

Outcome cmd_verify(const RunConfig& cfg) {
  const auto checks = bergman::config::build_checks(cfg);
  const auto reports = bergman::harness::run_checks(checks, thread_budget());
  Outcome o;
  o.json = bergman::harness::suite_json(reports, cfg.seed);
  std::ostringstream csv;
  bergman::harness::write_csv_summary(csv, reports);
  std::string line;
  std::istringstream lines(csv.str());
  bool header = true;
  while (std::getline(lines, line)) {
    // write_csv_summary already quotes its fields; keep lines verbatim.
    if (header) {
      o.table.columns = {line};
      header = false;
    } else {
      o.table.rows.push_back({line});
    }
  }
  for (const auto& r : reports) {
    using bergman::harness::Status;
    if (r.status() == Status::error) o.exit_code = std::max(o.exit_code, kExitConfig);
    if (r.status() == Status::failed) o.exit_code = std::max(o.exit_code, kExitFail);
  }
  return o;
}

Outcome cmd_gwco(const RunConfig& cfg, const bergman::AnalyticMap& phi,
                 const bergman::AnalyticMap& psi, int r, int m_max) {
  if (m_max < 0) m_max = cfg.degree_cap;
  if (r < 0 || m_max < r) throw ConfigError("need 0 <= r <= m_max");
  const auto s = bergman::harness::criterion_sequence(phi, psi, r, m_max, cfg.alpha);
  const auto report =
      bergman::harness::check_gwco_boundedness(phi, psi, r, m_max, cfg.alpha, cfg.harness_options());
  Outcome o;
  o.table.columns = {"m", "s_m"};
  Json rows = Json::array();
  for (int m = r; m <= m_max; ++m) {
    rows.push_back({{"m", m}, {"s_m", s[m - r]}});
    o.table.rows.push_back({std::to_string(m), num(s[m - r])});
  }
  o.json = {{"command", "gwco"},
            {"alpha", cfg.alpha},
            {"r", r},
            {"m_max", m_max},
            {"K", *std::max_element(s.begin(), s.end())},
            {"rows", rows},
            {"report", bergman::harness::to_json(report)}};
  if (report.status() == bergman::harness::Status::failed) o.exit_code = kExitFail;
  return o;
}

Outcome cmd_classify(const RunConfig& cfg, const bergman::AnalyticMap& phi,
                     const std::string& matrix_csv) {
  const auto trend = bergman::classify_trend(phi, cfg.alpha, cfg.degree_cap, cfg.exact_tol);
  const auto entry = [](const bergman::StructureReport& s) {
    return Json{{"degree", s.degree},
                {"isometry_residual", s.isometry_residual},
                {"coisometry_residual", s.coisometry_residual},
                {"hermitian_residual", s.hermitian_residual},
                {"normal_residual", s.normal_residual},
                {"isometry", s.isometry()},
                {"coisometry", s.coisometry()},
                {"unitary", s.unitary()},
                {"hermitian", s.hermitian()},
                {"normal", s.normal()}};
  };
  Outcome o;
  o.json = {{"command", "classify"},
            {"alpha", cfg.alpha},
            {"tol", cfg.exact_tol},
            {"at_degree", entry(trend.at_degree)},
            {"at_double_degree", entry(trend.at_double_degree)},
            {"caveat", bergman::StructureReport::caveat}};
  o.table.columns = {"degree", "isometry_residual", "coisometry_residual", "hermitian_residual",
                     "normal_residual"};
  for (const auto& s : {trend.at_degree, trend.at_double_degree}) {
    o.table.rows.push_back({std::to_string(s.degree), num(s.isometry_residual),
                            num(s.coisometry_residual), num(s.hermitian_residual),
                            num(s.normal_residual)});
  }
  if (!matrix_csv.empty()) {
    std::ofstream out(matrix_csv);
    if (!out) throw ConfigError("cannot write " + matrix_csv);
    bergman::write_csv(out, bergman::composition_matrix(phi, cfg.alpha, cfg.degree_cap,
                                                        cfg.degree_cap));
  }
  return o;
}

void emit(const RunConfig& cfg, const Outcome& o) {
  std::ostringstream text;
  if (cfg.output_format == "csv") {
    for (std::size_t i = 0; i < o.table.columns.size(); ++i) {
      text << (i ? "," : "") << o.table.columns[i];
    }
    text << '\n';
    for (const auto& row : o.table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) text << (i ? "," : "") << row[i];
      text << '\n';
    }
  } else {
    text << o.json.dump(2) << '\n';
  }
  if (cfg.output_path.empty()) {
    std::cout << text.str();
    return;
  }
  std::ofstream out(cfg.output_path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write " + cfg.output_path);
  out << text.str();
}

// Runs `command` once, or once per sweep degree with the results collected.
template <typename Command>
int run(const Flags& flags, Command command) {
  RunConfig cfg = load(flags);
  if (flags.degree_sweep.empty()) {
    const Outcome o = command(cfg);
    emit(cfg, o);
    return o.exit_code;
  }
  Outcome all;
  all.json = {{"sweep", Json::array()}};
  int code = kExitPass;
  for (int n : parse_sweep(flags.degree_sweep)) {
    cfg.degree_cap = n;
    const Outcome o = command(cfg);
    code = std::max(code, o.exit_code);
    all.json["sweep"].push_back({{"degree", n}, {"result", o.json}});
    if (all.table.columns.empty()) {
      all.table.columns = {"sweep_degree"};
      all.table.columns.insert(all.table.columns.end(), o.table.columns.begin(),
                               o.table.columns.end());
    }
    for (auto row : o.table.rows) {
      row.insert(row.begin(), std::to_string(n));
      all.table.rows.push_back(std::move(row));
    }
  }
  emit(cfg, all);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical lab for composition operators on weighted Bergman spaces"};
  app.require_subcommand(1);
  app.fallthrough();
  Flags f;
  app.add_option("--config", f.config_path, "JSON run configuration")->check(CLI::ExistingFile);
  app.add_option("--out", f.out_path, "write output here instead of stdout");
  app.add_option("--format", f.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--degree", f.degree, "truncation degree N")->check(CLI::NonNegativeNumber);
  app.add_option("--degree-sweep", f.degree_sweep, "comma separated list of degrees");
  app.add_option("--seed", f.seed, "RNG seed")->check(CLI::NonNegativeNumber);
  app.add_option("--tol", f.tol, "exact and power iteration tolerance")
      ->check(CLI::PositiveNumber);

  auto* moments = app.add_subcommand("moments", "moment identity table");
  moments->add_option("--n-max", f.n_max, "largest moment index");
  auto* opnorm = app.add_subcommand("opnorm", "operator norm and closed-form bounds");
  opnorm->add_option("--map", f.map, "map name or inline literal")->required();
  auto* kernel = app.add_subcommand("kernel", "truncated vs closed-form kernel norm");
  kernel->add_option("--z", f.z, "point as re,im");
  kernel->add_option("--index", f.index, "fiber basis index j");
  auto* verify = app.add_subcommand("verify", "run the full verification suite");
  auto* gwco = app.add_subcommand("gwco", "criterion sequence for generalized operators");
  gwco->add_option("--map", f.map, "map name or inline literal")->required();
  gwco->add_option("--weight", f.weight, "weight map name or inline literal (default 1)");
  gwco->add_option("--r", f.r, "derivative order");
  gwco->add_option("--m-max", f.m_max, "last index of the sequence");
  auto* classify = app.add_subcommand("classify", "structure residuals of C_phi");
  classify->add_option("--map", f.map, "map name or inline literal")->required();
  classify->add_option("--matrix-csv", f.matrix_csv, "dump the square matrix as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitConfig;
  }

  try {
    if (moments->parsed()) {
      return run(f, [&](const RunConfig& c) { return cmd_moments(c, f.n_max); });
    }
    if (opnorm->parsed()) {
      return run(f, [&](const RunConfig& c) { return cmd_opnorm(c, resolve_map(c, f.map)); });
    }
    if (kernel->parsed()) {
      const Complex z = parse_complex_flag(f.z);
      return run(f, [&](const RunConfig& c) { return cmd_kernel(c, z, f.index); });
    }
    if (verify->parsed()) {
      return run(f, [&](const RunConfig& c) { return cmd_verify(c); });
    }
    if (gwco->parsed()) {
      return run(f, [&](const RunConfig& c) {
        const auto psi = f.weight == "1" ? bergman::AnalyticMap::constant(1.0)
                                         : resolve_map(c, f.weight);
        return cmd_gwco(c, resolve_map(c, f.map), psi, f.r, f.m_max);
      });
    }
    if (classify->parsed()) {
      return run(f, [&](const RunConfig& c) {
        return cmd_classify(c, resolve_map(c, f.map), f.matrix_csv);
      });
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const bergman::DomainError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitConfig;
}
