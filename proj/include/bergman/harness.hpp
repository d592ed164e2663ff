#pragma once

// Executable checkers for the norm, kernel, structure and boundedness
// statements about composition operators on the truncated space. Each check
// returns a VerificationReport whose pass flag is a pure function of the
// assertions it records.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "bergman/analytic_map.hpp"
#include "bergman/core_space.hpp"

namespace bergman::harness {

using Json = nlohmann::ordered_json;

enum class Comparison { less_equal, greater_equal };

/// value `cmp` threshold.
struct Assertion {
  std::string name;
  double value = 0.0;
  Comparison cmp = Comparison::less_equal;
  double threshold = 0.0;

  bool holds() const noexcept;
};

enum class Status { passed, failed, hypothesis_not_met, error };

const char* to_string(Status status);

struct VerificationReport {
  std::string theorem_id;
  std::string label;
  Json parameters = Json::object();
  std::vector<std::pair<std::string, double>> residuals;
  std::vector<std::pair<std::string, double>> bounds;
  std::vector<Assertion> assertions;
  std::vector<int> truncation_degrees;
  std::string notes;
  bool applicable = true;
  bool errored = false;
  bool pass = false;

  void residual(std::string name, double value) { residuals.emplace_back(std::move(name), value); }
  void bound(std::string name, double value) { bounds.emplace_back(std::move(name), value); }
  /// Records value <= threshold.
  void expect_le(std::string name, double value, double threshold);
  /// Records value >= threshold.
  void expect_ge(std::string name, double value, double threshold);

  /// applicable && every assertion holds.
  bool recompute_pass() const;
  /// Sets pass from the assertions; call once the report is complete.
  VerificationReport& finalize();
  Status status() const;
};

struct HarnessOptions {
  double exact_tol = 1e-12;     // algebraically exact identities
  double analytic_tol = 1e-6;   // truncation-limited identities
  double power_tol = 1e-12;     // power iteration residual
  std::uint64_t seed = 0x5eedULL;
  int radial_nodes = 64;
  int angular_nodes = 256;
};

VerificationReport check_moment_identity(const std::vector<double>& alphas, int n_max,
                                         const HarnessOptions& opt = {});

VerificationReport check_kernel_norm(Complex z, double alpha, int degree,
                                     const HarnessOptions& opt = {});

VerificationReport check_norm_bounds(const AnalyticMap& phi, double alpha,
                                     const std::vector<int>& degrees,
                                     const HarnessOptions& opt = {});

VerificationReport check_unit_norm_iff(const AnalyticMap& phi, double alpha,
                                       const std::vector<int>& degrees,
                                       const HarnessOptions& opt = {});

VerificationReport check_rotation_structure(Complex lambda, double alpha, int degree,
                                            const HarnessOptions& opt = {});

/// out_degree < 0 picks min(exact, 4N) rows; otherwise rows are out_degree at N and doubled at 2N.
VerificationReport check_adjoint_kernel(const AnalyticMap& phi, Complex z, double alpha,
                                        int degree, const HarnessOptions& opt = {},
                                        int out_degree = -1);

VerificationReport check_adjoint_is_composition(const AnalyticMap& phi, double alpha, int degree,
                                                const HarnessOptions& opt = {});

VerificationReport check_hermitian(Complex lambda, double alpha, int degree,
                                   const HarnessOptions& opt = {});

VerificationReport check_normal(const AnalyticMap& phi, double alpha, int degree,
                                const HarnessOptions& opt = {});

VerificationReport check_gwco_boundedness(const AnalyticMap& phi, const AnalyticMap& psi, int r,
                                          int m_max, double alpha,
                                          const HarnessOptions& opt = {});

/// Criterion sequence s_m = ||psi phi^{m-r}||_2 d_m m(m-1)...(m-r+1), m = r..m_max,
/// by Parseval in coefficient space.
std::vector<double> criterion_sequence(const AnalyticMap& phi, const AnalyticMap& psi, int r,
                                       int m_max, double alpha);

/// Lower and upper closed-form bounds on ||C_phi|| in terms of |phi(0)|.
double norm_lower_bound(Complex phi0, double alpha);
double norm_upper_bound(Complex phi0, double alpha);

/// Largest singular value of C_phi restricted to degree <= N with exact columns.
struct NormAtDegree {
  int degree = 0;
  double value = 0.0;
  double residual = 0.0;
  bool converged = false;
};
NormAtDegree composition_norm(const AnalyticMap& phi, double alpha, int degree,
                              const HarnessOptions& opt = {});

using Check = std::function<VerificationReport()>;

/// Runs checks on up to `threads` workers; results keep the order of `checks`.
/// Exceptions become reports with status error.
std::vector<VerificationReport> run_checks(const std::vector<std::pair<std::string, Check>>& checks,
                                           int threads);

Json to_json(const VerificationReport& report);
/// Rebuilds a report (for recomputing pass from stored assertions).
VerificationReport report_from_json(const Json& j);

Json suite_json(const std::vector<VerificationReport>& reports, std::uint64_t seed);
void write_csv_summary(std::ostream& out, const std::vector<VerificationReport>& reports);

}  // namespace bergman::harness
