// Acceptance suite: one PASS/FAIL line per criterion at fixed tolerances.
//
//   acceptance                  exit 0 iff every criterion passes
//   acceptance --expect-fail 3  exit 0 iff the failing set is exactly {3}

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "bergman/config.hpp"
#include "bergman/harness.hpp"
#include "bergman/kernels.hpp"
#include "bergman/operators.hpp"
#include "bergman/quadrature.hpp"

using namespace bergman;

namespace {

std::set<int> g_failed;

void report(int id, bool ok, const std::string& what, const std::string& detail) {
  std::printf("[%s] %2d %s: %s\n", ok ? "PASS" : "FAIL", id, what.c_str(), detail.c_str());
  if (!ok) g_failed.insert(id);
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double norm_at(const AnalyticMap& phi, double alpha, int n) {
  const auto b = composition_matrix(phi, alpha, n, exact_out_degree(phi, n));
  return operator_norm(b, 1e-12, 24301);
}

void criterion_1() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (double alpha : {-0.5, 0.0, 1.0, 2.5}) {
    const DiskRule rule(alpha);
    const WeightSequence w(alpha, 40);
    for (int n = 0; n <= 40; ++n) {
      const double q =
          disk_integral([n](Complex z) { return Complex(std::pow(std::norm(z), n)); }, rule).real();
      worst = std::max(worst, std::abs(q - w[n]) / w[n]);
    }
  }
  const double t = seconds_since(t0);
  report(1, worst <= 1e-12 && t < 1.0, "moment identity",
         fmt("max rel err %.3g (<= 1e-12), runtime %.3f s (< 1 s)", worst, t));
}

void criterion_2() {
  const Complex z(0.7, 0.0);
  const double closed = 1.0 / (1.0 - 0.49);
  bool monotone = true;
  double previous = 0.0;
  for (int n = 0; n <= 200; ++n) {
    const double t = truncated_kernel_norm(z, 0.0, n);
    monotone = monotone && t >= previous;
    previous = t;
  }
  const double gap = (closed - previous) / closed;
  report(2, monotone && gap >= 0.0 && gap <= 1e-6, "kernel norm",
         fmt("N=200 rel gap %.3g (in [0, 1e-6], from below), monotone in N=0..200: ", gap) +
             (monotone ? "yes" : "no"));
}

void criterion_3() {
  const Complex lambda = std::polar(1.0, std::numbers::pi / 4);
  const auto s = classify(composition_matrix(AnalyticMap::monomial(lambda, 1), 0.0, 64, 64), 1e-12);
  const double worst = std::max({s.isometry_residual, s.coisometry_residual, s.hermitian_residual,
                                 s.normal_residual});
  report(3, worst <= 1e-12, "rotation, four classification residuals",
         fmt("isometry %.3g, co-isometry %.3g, hermitian %.3g, normal %.3g (all <= 1e-12)",
             s.isometry_residual, s.coisometry_residual, s.hermitian_residual, s.normal_residual));
  // Companion line, not a criterion: the unitary and normal parts of the statement.
  const bool unitary_part = std::max({s.isometry_residual, s.coisometry_residual, s.normal_residual}) <= 1e-12;
  std::printf("       3 note: non-real lambda makes B - B* nonzero (|lambda^m - conj(lambda)^m| reaches 2); "
              "isometry/co-isometry/normal residuals alone <= 1e-12: %s\n",
              unitary_part ? "yes" : "no");
}

void criterion_4() {
  const AnalyticMap phi{0.3, 0.4};
  const double lower = harness::norm_lower_bound(0.3, 0.0);
  const double upper = harness::norm_upper_bound(0.3, 0.0);
  bool ok = std::abs(lower - 1.098901) < 1e-6 && std::abs(upper - 1.857143) < 1e-6;
  std::string values;
  double previous = 0.0;
  for (int n : {16, 32, 48}) {
    const double v = norm_at(phi, 0.0, n);
    ok = ok && v >= previous && v >= 1.098901 - 1e-6 && v <= 1.857143 + 1e-6;
    previous = v;
    values += fmt("%.10f ", v);
  }
  report(4, ok, "norm sandwich",
         "norms at N=16,32,48: " + values +
             fmt("nondecreasing, within [1.098901 - 1e-6, 1.857143 + 1e-6]; closed forms %.7f, %.7f",
                 lower, upper));
}

void criterion_5() {
  const double v = norm_at({0.0, 0.5, 0.3}, 1.0, 64);
  report(5, v >= 1.0 - 1e-4 && v <= 1.0 + 1e-9, "unit norm when phi(0) = 0",
         fmt("norm %.15f in [1 - 1e-4, 1 + 1e-9]", v));
}

void criterion_6() {
  bool ok = true;
  std::string values;
  for (int n : {16, 32, 64}) {
    const double v = norm_at(AnalyticMap::constant(0.5), 0.0, n);
    ok = ok && std::abs(v - 4.0 / 3.0) <= 1e-6;
    values += fmt("N=%g %.12f ", n, v);
  }
  ok = ok && std::abs(harness::norm_lower_bound(0.5, 0.0) - 4.0 / 3.0) <= 1e-15;
  report(6, ok, "constant map sharpness", values + "(4/3 +- 1e-6, equals the lower bound)");
}

void criterion_7() {
  const AnalyticMap phi{0.0, 0.5, 0.2};
  const int n = 128;
  const Complex z(0.3, 0.0);
  const auto b = composition_matrix(phi, 0.0, n, exact_out_degree(phi, n));
  const auto r = adjoint_kernel_residual(b, phi, KernelPoint(z));
  // Geometric tail oracle: sum_{m>N} (m+1) rho^{2m}, rho = max(|z|, |phi(z)|).
  const double rho = std::max(std::abs(z), std::abs(phi(z)));
  double geometric = 0.0;
  for (int m = n + 1; m < 20 * n; ++m) geometric += (m + 1) * std::pow(rho, 2.0 * m);
  // The geometric tail sits far below double precision, so the bound adds the
  // rounding allowance that adjoint_kernel_residual documents.
  const double bound = geometric + r.rounding_allowance;
  const bool ok = r.residual <= bound && r.residual <= r.bound() && r.residual <= 1e-6;
  report(7, ok, "adjoint-kernel identity",
         fmt("residual %.3g <= geometric tail oracle %.3g + rounding allowance %.3g; "
             "library tail bound %.3g; <= 1e-6",
             r.residual, geometric, r.rounding_allowance, r.tail_bound));
}

void criterion_8() {
  const auto hermitian = [](Complex lambda) {
    return classify(composition_matrix(AnalyticMap::monomial(lambda, 1), 0.0, 32, 32), 1e-12)
        .hermitian_residual;
  };
  const double real_res = hermitian(0.5);
  const double imag_res = hermitian({0.0, 0.5});
  const auto imag_report = harness::check_hermitian({0.0, 0.5}, 0.0, 32);
  const AnalyticMap quad{0.0, 0.0, 1.0};
  const auto b = composition_matrix(quad, 0.0, 32, 32);
  const double normal_res = classify(b, 1e-12).normal_residual;
  // ||C_phi E_{1,0}||^2 for phi = z^2 at alpha = 0: d_1^2 ||z^2||^2 = 2 * (1/3).
  const auto full = composition_matrix(quad, 0.0, 32, exact_out_degree(quad, 32));
  const double forward = full.entries().col(1).squaredNorm();
  const bool ok = real_res <= 1e-12 && imag_res >= 0.9 && !imag_report.pass && normal_res >= 0.1 &&
                  std::abs(forward - 2.0 / 3.0) <= 1e-10;
  report(8, ok, "adjoint/Hermitian/normal",
         fmt("hermitian residual lambda=0.5: %.3g (<= 1e-12); lambda=0.5i: %.3g (>= 0.9, check fails); "
             "z^2 normal residual %.3g (>= 0.1); ||C E_1||^2 = %.15f (2/3 +- 1e-10)",
             real_res, imag_res, normal_res, forward));
}

void criterion_9() {
  const AnalyticMap phi{0.0, 0.8};
  const auto psi = AnalyticMap::constant(1.0);
  const auto s = harness::criterion_sequence(phi, psi, 1, 60, 0.0);
  double closed_gap = 0.0;
  double closed_max = 0.0;
  for (int m = 1; m <= 60; ++m) {
    const double closed = std::sqrt(m * (m + 1.0)) * std::pow(0.8, m - 1);
    closed_gap = std::max(closed_gap, std::abs(s[m - 1] - closed) / closed);
    closed_max = std::max(closed_max, closed);
  }
  const auto r = harness::check_gwco_boundedness(phi, psi, 1, 60, 0.0);
  double path_gap = 1.0;
  double k = 0.0;
  for (const auto& [name, v] : r.residuals) {
    if (name == "quadrature_parseval_rel_gap") path_gap = v;
  }
  for (const auto& [name, v] : r.bounds) {
    if (name == "K") k = v;
  }
  const double k_gap = std::abs(k - *std::max_element(s.begin(), s.end()));
  const bool ok = closed_gap <= 1e-10 && path_gap <= 1e-10 && k_gap == 0.0 &&
                  std::abs(k - closed_max) / closed_max <= 1e-10 && r.pass;
  report(9, ok, "generalized criterion sequence",
         fmt("closed-form rel err %.3g (<= 1e-10); quadrature vs Parseval %.3g (<= 1e-10); "
             "K = %.12f = max s_m (closed-form max %.12f)",
             closed_gap, path_gap, k, closed_max));
}

void criterion_10() {
  const auto run = [] {
    const auto cfg = config::parse_config_text(config::default_config_text());
    const auto reports = harness::run_checks(config::build_checks(cfg), 4);
    return harness::suite_json(reports, cfg.seed).dump(2);
  };
  const std::string first = run();
  const std::string second = run();
  report(10, first == second, "determinism",
         fmt("two verify runs of the default config, %g bytes each, byte-identical: ",
             static_cast<double>(first.size())) +
             (first == second ? "yes" : "no"));
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> expected_failures;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--expect-fail") == 0 && i + 1 < argc) {
      expected_failures.insert(std::atoi(argv[++i]));
    }
  }
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  return g_failed == expected_failures ? 0 : 1;
}
