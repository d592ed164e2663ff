#include <gtest/gtest.h>

#include <cmath>

#include "bergman/kernels.hpp"
#include "oracles.hpp"

using namespace bergman;

TEST(KernelPoint, Validation) {
  EXPECT_NO_THROW(KernelPoint(Complex{0.5, 0.5}, 2));
  EXPECT_THROW(KernelPoint(Complex{1.0, 0.0}), DomainError);
  EXPECT_THROW(KernelPoint(Complex{0.0, 0.0}, -1), DomainError);
}

TEST(Kernel, CoordinatesAreScaledConjugatePowers) {
  const Complex z(0.3, 0.4);
  const auto k = kernel_coordinates(z, 1.0, 6);
  for (int m = 0; m <= 6; ++m) {
    EXPECT_LT(std::abs(k(m) - basis_scale(m, 1.0) * std::pow(std::conj(z), m)), 1e-15);
  }
}

TEST(Kernel, ClosedFormNorm) {
  EXPECT_DOUBLE_EQ(kernel_norm_closed_form(KernelPoint(Complex{0.0, 0.0}), 0.7), 1.0);
  EXPECT_NEAR(kernel_norm_closed_form(KernelPoint(Complex{0.5, 0.0}), 0.0), 4.0 / 3.0, 1e-15);
  EXPECT_NEAR(kernel_norm_closed_form(KernelPoint(Complex{0.0, 0.5}), 2.0), 16.0 / 9.0, 1e-14);
}

TEST(Kernel, TruncatedNormMatchesGeometricSum) {
  // alpha = 0: ||k_z^N||^2 = sum_{n<=N} (n+1) r^{2n}.
  const double r2 = 0.49;
  for (int n : {0, 1, 10, 50}) {
    double s = 0.0;
    for (int m = 0; m <= n; ++m) s += (m + 1) * std::pow(r2, m);
    EXPECT_NEAR(truncated_kernel_norm({0.7, 0.0}, 0.0, n), std::sqrt(s), 1e-13);
  }
  EXPECT_DOUBLE_EQ(truncated_kernel_norm({0.0, 0.0}, 0.0, 10), 1.0);
}

TEST(Kernel, SeriesNormAndPairing) {
  const SpaceParams p(0.5, 40, 3);
  const KernelPoint pt({-0.2, 0.3}, 1);
  const auto k = kernel_series(pt, p);
  EXPECT_NEAR(norm(k), truncated_kernel_norm(pt.z, 0.5, 40), 1e-13);
  EXPECT_EQ(k.at(5, 0), Complex{});
  const CoefficientSeries f(p, std::vector<ComplexVector>(41, ComplexVector{1.0, Complex(0, 2), 3.0}));
  const Complex direct = evaluate(f, pt.z)[1];
  EXPECT_LT(std::abs(kernel_pairing(f, pt) - direct), 1e-12);
  EXPECT_THROW(kernel_series(KernelPoint(Complex{0.1, 0.0}, 3), p), DomainError);
}

TEST(AdjointKernel, ExactColumnsLeaveOnlyRounding) {
  const AnalyticMap phi{0.0, 0.5, 0.2};
  const auto b = composition_matrix(phi, 0.0, 32, exact_out_degree(phi, 32));
  const auto r = adjoint_kernel_residual(b, phi, KernelPoint(Complex{0.3, 0.0}));
  EXPECT_EQ(r.tail_bound, 0.0);
  EXPECT_LT(r.residual, 1e-14);
  EXPECT_LE(r.residual, r.bound());
  EXPECT_LT(std::abs(r.image - phi({0.3, 0.0})), 1e-16);
}

TEST(AdjointKernel, TruncatedRowsStayWithinTailBound) {
  const AnalyticMap phi{0.1, 0.5, Complex(0.0, 0.3)};
  for (int out : {8, 16, 24, 32}) {
    const auto b = composition_matrix(phi, 1.0, 20, out);
    const auto r = adjoint_kernel_residual(b, phi, KernelPoint(Complex{0.4, -0.2}));
    EXPECT_GT(r.tail_bound, 0.0);
    EXPECT_LE(r.residual, r.bound()) << "out=" << out;
  }
  EXPECT_EQ(adjoint_kernel_tail_bound(phi, {0.0, 0.0}, 1.0, 20, 5), 0.0);
}

TEST(AdjointKernel, TailBoundShrinksWithRows) {
  const AnalyticMap phi{0.0, 0.5, 0.2};
  double previous = adjoint_kernel_tail_bound(phi, {0.3, 0.0}, 0.0, 30, 10);
  for (int out : {20, 30, 40}) {
    const double t = adjoint_kernel_tail_bound(phi, {0.3, 0.0}, 0.0, 30, out);
    EXPECT_LE(t, previous);
    previous = t;
  }
}
