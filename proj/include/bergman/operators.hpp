#pragma once

// Matrix representations of composition-type operators on the truncated space.
//
// Every operator here acts as B (x) Identity on the fiber, so only the scalar
// block B is stored. Columns are indexed by the input basis E_{m,0}
// (m = 0..in_degree), rows by the output basis E_{k,0} (k = 0..out_degree):
//
//   B_{k,m} = <T E_{m,0}, E_{k,0}> = d_m [z^k](T z^m) / d_k.

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "bergman/analytic_map.hpp"
#include "bergman/core_space.hpp"

namespace bergman {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

class OperatorMatrix {
public:
  OperatorMatrix(Matrix entries, double alpha);

  const Matrix& entries() const noexcept { return entries_; }
  double alpha() const noexcept { return alpha_; }
  int in_degree() const noexcept { return static_cast<int>(entries_.cols()) - 1; }
  int out_degree() const noexcept { return static_cast<int>(entries_.rows()) - 1; }
  bool is_square() const noexcept { return entries_.rows() == entries_.cols(); }

  Complex operator()(int k, int m) const { return entries_(k, m); }

private:
  Matrix entries_;
  double alpha_;
};

/// Thrown when an inducing map fails its self-map certificate.
class NotSelfMapError : public DomainError {
public:
  NotSelfMapError(const std::string& what, SelfMapCertificate certificate)
      : DomainError(what), certificate_(certificate) {}
  const SelfMapCertificate& certificate() const noexcept { return certificate_; }

private:
  SelfMapCertificate certificate_;
};

enum class SelfMapCheck { require, trust };

/// Degree that makes every column of the composition matrix exact: in_degree * deg(phi).
int exact_out_degree(const AnalyticMap& phi, int in_degree);

/// Throws NotSelfMapError unless phi passes certify_self_map.
void require_self_map(const AnalyticMap& phi);

/// C_phi: B_{k,m} = d_m [z^k](phi^m) / d_k.
OperatorMatrix composition_matrix(const AnalyticMap& phi, double alpha, int in_degree,
                                  int out_degree, SelfMapCheck check = SelfMapCheck::require);

/// C_{psi,phi} f = psi * (f o phi): B_{k,m} = d_m [z^k](psi phi^m) / d_k.
OperatorMatrix weighted_composition_matrix(const AnalyticMap& psi, const AnalyticMap& phi,
                                           double alpha, int in_degree, int out_degree,
                                           SelfMapCheck check = SelfMapCheck::require);

/// D^r_{phi,psi} f = psi * (f^{(r)} o phi). Columns m < r vanish.
OperatorMatrix generalized_matrix(int r, const AnalyticMap& psi, const AnalyticMap& phi,
                                  double alpha, int in_degree, int out_degree,
                                  SelfMapCheck check = SelfMapCheck::require);

OperatorMatrix adjoint(const OperatorMatrix& b);

/// Leading (n+1) x (n+1) block.
OperatorMatrix leading_compression(const OperatorMatrix& b, int n);

/// Applies B (x) I to a series; the result lives in the space of degree out_degree.
CoefficientSeries apply(const OperatorMatrix& b, const CoefficientSeries& f);

struct PowerIterationOptions {
  double tol = 1e-12;
  int max_iterations = 10000;
  std::uint64_t seed = 0x5eedULL;
};

/// Outcome of power iteration on B*B.
struct NormEstimate {
  double value = 0.0;          // sqrt of the Rayleigh quotient of B*B
  double residual = 0.0;       // ||B*B v - value^2 v|| / value^2
  double gap_estimate = 0.0;   // residual * value^2, bounds |value^2 - sigma_max^2| for the iterate
  int iterations = 0;
  bool converged = false;
  std::uint64_t seed = 0;
  Vector last_iterate;
};

class ConvergenceError : public std::runtime_error {
public:
  explicit ConvergenceError(NormEstimate estimate);
  const NormEstimate& estimate() const noexcept { return estimate_; }

private:
  NormEstimate estimate_;
};

NormEstimate estimate_operator_norm(const OperatorMatrix& b,
                                    const PowerIterationOptions& options = {});

/// Largest singular value; throws ConvergenceError at the iteration cap.
double operator_norm(const OperatorMatrix& b, double tol = 1e-12, std::uint64_t seed = 0x5eedULL);

struct StructureReport {
  int degree = 0;
  double tol = 0.0;
  double isometry_residual = 0.0;    // max |B*B - I|
  double coisometry_residual = 0.0;  // max |BB* - I|
  double hermitian_residual = 0.0;   // max |B - B*|
  double normal_residual = 0.0;      // max |B*B - BB*|

  bool isometry() const noexcept { return isometry_residual <= tol; }
  bool coisometry() const noexcept { return coisometry_residual <= tol; }
  bool unitary() const noexcept { return isometry() && coisometry(); }
  bool hermitian() const noexcept { return hermitian_residual <= tol; }
  bool normal() const noexcept { return normal_residual <= tol; }

  static constexpr const char* caveat =
      "residuals describe the leading square compression only; finite-degree evidence";
};

StructureReport classify(const OperatorMatrix& b, double tol);

/// classify() on the square compressions of C_phi at degree N and 2N.
struct StructureTrend {
  StructureReport at_degree;
  StructureReport at_double_degree;
};

StructureTrend classify_trend(const AnalyticMap& phi, double alpha, int degree, double tol,
                              SelfMapCheck check = SelfMapCheck::require);

/// Row-major CSV, one quoted "re,im" cell per entry.
void write_csv(std::ostream& out, const OperatorMatrix& b);

}  // namespace bergman
