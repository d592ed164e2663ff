#include "bergman/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace bergman {

KernelPoint::KernelPoint(Complex z_, int j_) : z(z_), j(j_) {
  if (!(std::abs(z) < 1.0)) throw DomainError("kernel point must lie in the open unit disk");
  if (j < 0) throw DomainError("kernel fiber index must be >= 0");
}

CoefficientSeries kernel_series(const KernelPoint& p, const SpaceParams& params) {
  if (p.j >= params.fiber_dim()) throw DomainError("kernel fiber index out of range");
  const WeightSequence w(params.alpha(), params.degree_cap());
  CoefficientSeries k(params);
  Complex zbar_power = 1.0;
  for (int m = 0; m <= params.degree_cap(); ++m) {
    k.set(m, p.j, zbar_power / w[m]);
    zbar_power *= std::conj(p.z);
  }
  return k;
}

Vector kernel_coordinates(Complex z, double alpha, int degree) {
  const WeightSequence w(alpha, degree);
  Vector k(degree + 1);
  Complex zbar_power = 1.0;
  for (int m = 0; m <= degree; ++m) {
    k(m) = w.scale(m) * zbar_power;
    zbar_power *= std::conj(z);
  }
  return k;
}

double kernel_norm_closed_form(const KernelPoint& p, double alpha) {
  require_valid_alpha(alpha);
  return std::pow(1.0 - std::norm(p.z), -(2.0 + alpha) / 2.0);
}

double truncated_kernel_norm(Complex z, double alpha, int degree) {
  const WeightSequence w(alpha, degree);
  const double r2 = std::norm(z);
  double sum = 0.0;
  double r2_power = 1.0;
  for (int m = 0; m <= degree; ++m) {
    sum += r2_power / w[m];
    r2_power *= r2;
  }
  return std::sqrt(sum);
}

Complex kernel_pairing(const CoefficientSeries& f, const KernelPoint& p) {
  const Complex paired = inner_product(f, kernel_series(p, f.params()));
  const Complex direct = evaluate(f, p.z).at(p.j);
  // Both are sum_n y_{n,j} z^n; the scale is the same sum taken in modulus.
  double scale = 0.0;
  double r_power = 1.0;
  for (int n = 0; n <= f.degree_cap(); ++n) {
    scale += std::abs(f.at(n, p.j)) * r_power;
    r_power *= std::abs(p.z);
  }
  if (std::abs(paired - direct) > 1e-12 * std::max(1.0, scale)) {
    throw InternalInconsistency("kernel pairing disagrees with point evaluation");
  }
  return paired;
}

double adjoint_kernel_tail_bound(const AnalyticMap& phi, Complex z, double alpha, int in_degree,
                                 int out_degree) {
  if (out_degree >= exact_out_degree(phi, in_degree)) return 0.0;
  const double rz = std::abs(z);
  if (rz == 0.0) return 0.0;
  // Entry m of the defect is d_m |sum_{k > out} [z^k]phi^m z^k|. Cauchy's estimate on the
  // majorant gives |[z^k]phi^m| <= M(R)^m / R^k for every R > 0, hence
  //   defect_m <= d_m M(R)^m (|z|/R)^{out+1} / (1 - |z|/R),   R > |z|.
  // Minimized over a geometric grid of R, in log space.
  const WeightSequence w(alpha, in_degree);
  double best = std::numeric_limits<double>::infinity();
  for (int i = 1; i <= 400; ++i) {
    const double radius = rz * std::exp(3.0 * i / 400.0);
    const double q = rz / radius;
    const double log_majorant = std::log(std::max(phi.majorant(radius), 1e-300));
    std::vector<double> terms(in_degree + 1);
    double top = -std::numeric_limits<double>::infinity();
    for (int m = 0; m <= in_degree; ++m) {
      terms[m] = 2.0 * m * log_majorant - std::log(w[m]);
      top = std::max(top, terms[m]);
    }
    double acc = 0.0;
    for (double t : terms) acc += std::exp(t - top);
    const double log_bound =
        (out_degree + 1) * std::log(q) - std::log1p(-q) + 0.5 * (top + std::log(acc));
    best = std::min(best, log_bound);
  }
  return std::exp(best);
}

AdjointKernelResult adjoint_kernel_residual(const OperatorMatrix& b, const AnalyticMap& phi,
                                            const KernelPoint& p) {
  AdjointKernelResult result;
  result.image = phi(p.z);
  if (!(std::abs(result.image) < 1.0)) {
    throw DomainError("phi(z) must lie in the open unit disk");
  }
  const Vector k_z = kernel_coordinates(p.z, b.alpha(), b.out_degree());
  const Vector k_image = kernel_coordinates(result.image, b.alpha(), b.in_degree());
  const Vector pulled = b.entries().adjoint() * k_z;
  result.residual = (pulled - k_image).norm();
  result.tail_bound =
      adjoint_kernel_tail_bound(phi, p.z, b.alpha(), b.in_degree(), b.out_degree());
  const double eps = std::numeric_limits<double>::epsilon();
  result.rounding_allowance = 64.0 * eps * (b.out_degree() + 2) *
                              (b.entries().norm() * k_z.norm() + k_image.norm());
  return result;
}

}  // namespace bergman
