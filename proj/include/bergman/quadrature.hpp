#pragma once

// Quadrature for the weighted disk measure dA_alpha = (alpha+1)(1-|z|^2)^alpha dA.
//
// In polar form with t = r^2 the measure factors as
//   dA_alpha = (alpha+1) (1-t)^alpha dt * dtheta / (2 pi),
// so a Gauss-Jacobi rule in t (weight (1-t)^alpha on [0,1]) times the
// trapezoid rule in theta integrates polynomials in z, conj(z) exactly.

#include <functional>
#include <span>
#include <vector>

#include "bergman/analytic_map.hpp"
#include "bergman/core_space.hpp"
#include "bergman/operators.hpp"

namespace bergman {

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss rule for integral_0^1 (1-t)^alpha g(t) dt.
GaussRule gauss_jacobi_unit_interval(int n, double alpha);

class DiskRule {
public:
  DiskRule(double alpha, int radial_count = 64, int angular_count = 256);

  double alpha() const noexcept { return alpha_; }
  int radial_count() const noexcept { return static_cast<int>(radial_.nodes.size()); }
  int angular_count() const noexcept { return angular_count_; }
  std::size_t size() const noexcept { return points_.size(); }

  const GaussRule& radial_rule() const noexcept { return radial_; }

  /// Node grid, radial-major: index i * angular_count + j.
  std::span<const Complex> points() const noexcept { return points_; }

  std::vector<Complex> sample(const std::function<Complex(Complex)>& g) const;

private:
  double alpha_;
  int angular_count_;
  GaussRule radial_;
  std::vector<Complex> points_;
};

/// integral g dA_alpha from samples on rule.points(); the rule is normalized so that 1 -> 1.
Complex disk_integral(std::span<const Complex> samples, const DiskRule& rule);

Complex disk_integral(const std::function<Complex(Complex)>& g, const DiskRule& rule);

/// ||h||_2 = (integral |h|^2 dA_alpha)^{1/2} by quadrature.
double l2_norm(const AnalyticMap& h, const DiskRule& rule);

/// sqrt(sum |c_k|^2 w_k), the coefficient-space value of the same norm.
double l2_norm_parseval(const AnalyticMap& h, double alpha);

/// integral <f(z), g(z)> dA_alpha by quadrature.
Complex quadrature_inner_product(const CoefficientSeries& f, const CoefficientSeries& g,
                                 const DiskRule& rule);

/// G_{ij} = <phi^i, phi^j>_{L^2(dA_alpha)}, i, j = 0..n_max.
Matrix gram_matrix_of_powers(const AnalyticMap& phi, int n_max, const DiskRule& rule);

/// max_{i != j} |G_ij| / sqrt(G_ii G_jj); zero-norm rows are skipped.
double orthogonality_defect(const Matrix& gram);

}  // namespace bergman
