#pragma once

// Reproducing kernels K_z^j(w) = e_j / (1 - w conj(z))^{2+alpha}, materialized
// as truncated coefficient series y_m = conj(z)^m / w_m e_j.

#include <stdexcept>

#include "bergman/analytic_map.hpp"
#include "bergman/core_space.hpp"
#include "bergman/operators.hpp"

namespace bergman {

struct KernelPoint {
  KernelPoint(Complex z, int j = 0);

  Complex z;
  int j;
};

/// Raised when two routes to the same finite sum disagree.
class InternalInconsistency : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

CoefficientSeries kernel_series(const KernelPoint& p, const SpaceParams& params);

/// Orthonormal coordinates <K_z, E_m> = d_m conj(z)^m, m = 0..degree.
Vector kernel_coordinates(Complex z, double alpha, int degree);

/// (1 - |z|^2)^{-(2+alpha)/2}.
double kernel_norm_closed_form(const KernelPoint& p, double alpha);

/// sqrt(sum_{m<=N} |z|^{2m} / w_m).
double truncated_kernel_norm(Complex z, double alpha, int degree);

/// <f, K_z^j>; cross-checked against the j-th component of f(z).
Complex kernel_pairing(const CoefficientSeries& f, const KernelPoint& p);

struct AdjointKernelResult {
  double residual = 0.0;            // || B* k_z - k_{phi(z)} ||
  double tail_bound = 0.0;          // analytic bound from the dropped rows of B
  double rounding_allowance = 0.0;  // floating-point floor of the residual
  Complex image{};                  // phi(z)

  double bound() const noexcept { return tail_bound + rounding_allowance; }
};

/// Measures C_phi* K_z = K_{phi(z)} on the matrix B of C_phi.
/// k_z is taken at the row degree of B and k_{phi(z)} at its column degree.
AdjointKernelResult adjoint_kernel_residual(const OperatorMatrix& b, const AnalyticMap& phi,
                                            const KernelPoint& p);

/// Bound on || B* k_z - k_{phi(z)} || caused by truncating phi^m at out_degree.
/// Zero when out_degree >= in_degree * deg(phi).
double adjoint_kernel_tail_bound(const AnalyticMap& phi, Complex z, double alpha, int in_degree,
                                 int out_degree);

}  // namespace bergman
