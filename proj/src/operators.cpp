#include "bergman/operators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>

namespace bergman {

OperatorMatrix::OperatorMatrix(Matrix entries, double alpha)
    : entries_(std::move(entries)), alpha_(alpha) {
  require_valid_alpha(alpha);
  if (entries_.rows() == 0 || entries_.cols() == 0) {
    throw DomainError("operator matrix must have at least one row and column");
  }
  if (!entries_.allFinite()) throw DomainError("operator matrix entries must be finite");
}

int exact_out_degree(const AnalyticMap& phi, int in_degree) {
  return in_degree * phi.effective_degree();
}

void require_self_map(const AnalyticMap& phi) {
  const auto cert = certify_self_map(phi);
  if (!cert.accepted()) {
    throw NotSelfMapError("inducing map is not certified as a self-map of the disk (sup " +
                              std::to_string(cert.sup_estimate) + ")",
                          cert);
  }
}

namespace {

void require_degrees(int in_degree, int out_degree) {
  if (in_degree < 0 || out_degree < 0) throw DomainError("matrix degrees must be >= 0");
}

// Column m holds scale_m * [z^k] series_m, reweighted into the orthonormal basis.
template <typename ColumnSeries>
OperatorMatrix assemble(double alpha, int in_degree, int out_degree, ColumnSeries&& column) {
  const WeightSequence w(alpha, std::max(in_degree, out_degree));
  Matrix b = Matrix::Zero(out_degree + 1, in_degree + 1);
  for (int m = 0; m <= in_degree; ++m) {
    const auto [factor, series] = column(m);
    if (factor == 0.0) continue;
    const double col_scale = factor * w.scale(m);
    for (int k = 0; k <= std::min(out_degree, series.degree()); ++k) {
      b(k, m) = col_scale * series[k] / w.scale(k);
    }
  }
  return OperatorMatrix(std::move(b), alpha);
}

}  // namespace

OperatorMatrix composition_matrix(const AnalyticMap& phi, double alpha, int in_degree,
                                  int out_degree, SelfMapCheck check) {
  return weighted_composition_matrix(AnalyticMap::constant(1.0), phi, alpha, in_degree,
                                     out_degree, check);
}

OperatorMatrix weighted_composition_matrix(const AnalyticMap& psi, const AnalyticMap& phi,
                                           double alpha, int in_degree, int out_degree,
                                           SelfMapCheck check) {
  return generalized_matrix(0, psi, phi, alpha, in_degree, out_degree, check);
}

OperatorMatrix generalized_matrix(int r, const AnalyticMap& psi, const AnalyticMap& phi,
                                  double alpha, int in_degree, int out_degree,
                                  SelfMapCheck check) {
  require_valid_alpha(alpha);
  require_degrees(in_degree, out_degree);
  if (r < 0) throw DomainError("derivative order must be >= 0");
  if (check == SelfMapCheck::require) require_self_map(phi);

  const int rungs = std::max(in_degree - r, 0);
  const auto ladder = power_ladder(phi, rungs, out_degree);
  return assemble(alpha, in_degree, out_degree, [&](int m) {
    if (m < r) return std::pair{0.0, AnalyticMap()};
    return std::pair{falling_factorial(m, r), multiply(psi, ladder[m - r], out_degree)};
  });
}

OperatorMatrix adjoint(const OperatorMatrix& b) {
  return OperatorMatrix(b.entries().adjoint(), b.alpha());
}

OperatorMatrix leading_compression(const OperatorMatrix& b, int n) {
  if (n < 0 || n > b.in_degree() || n > b.out_degree()) {
    throw DomainError("compression degree exceeds the matrix");
  }
  return OperatorMatrix(b.entries().topLeftCorner(n + 1, n + 1), b.alpha());
}

CoefficientSeries apply(const OperatorMatrix& b, const CoefficientSeries& f) {
  if (f.degree_cap() != b.in_degree()) throw DomainError("series degree must equal in_degree");
  if (f.params().alpha() != b.alpha()) throw DomainError("series and operator weights differ");
  const int top = std::max(b.in_degree(), b.out_degree());
  const WeightSequence w(b.alpha(), top);
  const SpaceParams out_params(b.alpha(), b.out_degree(), f.fiber_dim());
  CoefficientSeries image(out_params);
  Vector coords(b.in_degree() + 1);
  for (int j = 0; j < f.fiber_dim(); ++j) {
    // Orthonormal coordinates of slot j: <f, E_{m,j}> = y_{m,j} / d_m.
    for (int m = 0; m <= b.in_degree(); ++m) coords(m) = f.at(m, j) / w.scale(m);
    const Vector out = b.entries() * coords;
    for (int k = 0; k <= b.out_degree(); ++k) image.set(k, j, out(k) * w.scale(k));
  }
  return image;
}

ConvergenceError::ConvergenceError(NormEstimate estimate)
    : std::runtime_error("power iteration did not converge within " +
                         std::to_string(estimate.iterations) + " iterations (residual " +
                         std::to_string(estimate.residual) + ")"),
      estimate_(std::move(estimate)) {}

NormEstimate estimate_operator_norm(const OperatorMatrix& b, const PowerIterationOptions& options) {
  if (!(options.tol > 0.0)) throw DomainError("power iteration tolerance must be > 0");
  const Matrix& a = b.entries();
  NormEstimate est;
  est.seed = options.seed;

  if (a.cwiseAbs().maxCoeff() == 0.0) {
    est.converged = true;
    est.last_iterate = Vector::Zero(a.cols());
    return est;
  }

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v(a.cols());
  for (auto& x : v) x = Complex(gauss(rng), gauss(rng));
  v.normalize();

  const Matrix gram = a.adjoint() * a;
  for (int it = 1; it <= options.max_iterations; ++it) {
    Vector w = gram * v;
    const double rayleigh = v.dot(w).real();
    est.iterations = it;
    if (rayleigh <= 0.0) {
      // Start vector landed in the kernel; perturb deterministically.
      for (auto& x : v) x += Complex(gauss(rng), gauss(rng));
      v.normalize();
      continue;
    }
    est.value = std::sqrt(rayleigh);
    est.residual = (w - rayleigh * v).norm() / rayleigh;
    est.gap_estimate = est.residual * rayleigh;
    v = w / w.norm();
    if (est.residual <= options.tol) {
      est.converged = true;
      break;
    }
  }
  est.last_iterate = v;
  return est;
}

double operator_norm(const OperatorMatrix& b, double tol, std::uint64_t seed) {
  auto est = estimate_operator_norm(b, {.tol = tol, .max_iterations = 10000, .seed = seed});
  if (!est.converged) throw ConvergenceError(std::move(est));
  return est.value;
}

StructureReport classify(const OperatorMatrix& b, double tol) {
  if (!b.is_square()) throw DomainError("classification requires a square matrix");
  const Matrix& a = b.entries();
  const Matrix id = Matrix::Identity(a.rows(), a.cols());
  const Matrix ata = a.adjoint() * a;
  const Matrix aat = a * a.adjoint();
  StructureReport report;
  report.degree = b.in_degree();
  report.tol = tol;
  report.isometry_residual = (ata - id).cwiseAbs().maxCoeff();
  report.coisometry_residual = (aat - id).cwiseAbs().maxCoeff();
  report.hermitian_residual = (a - a.adjoint()).cwiseAbs().maxCoeff();
  report.normal_residual = (ata - aat).cwiseAbs().maxCoeff();
  return report;
}

StructureTrend classify_trend(const AnalyticMap& phi, double alpha, int degree, double tol,
                              SelfMapCheck check) {
  if (degree < 0) throw DomainError("classification degree must be >= 0");
  return {classify(composition_matrix(phi, alpha, degree, degree, check), tol),
          classify(composition_matrix(phi, alpha, 2 * degree, 2 * degree, check), tol)};
}

void write_csv(std::ostream& out, const OperatorMatrix& b) {
  const Matrix& a = b.entries();
  char cell[64];
  for (Eigen::Index k = 0; k < a.rows(); ++k) {
    for (Eigen::Index m = 0; m < a.cols(); ++m) {
      std::snprintf(cell, sizeof cell, "\"%.17g,%.17g\"", a(k, m).real(), a(k, m).imag());
      if (m > 0) out << ',';
      out << cell;
    }
    out << '\n';
  }
}

}  // namespace bergman
