// Randomized invariants. Every generator is seeded so failures reproduce; the
// seed and case index are printed on failure.

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "bergman/harness.hpp"
#include "bergman/kernels.hpp"
#include "bergman/operators.hpp"
#include "bergman/quadrature.hpp"
#include "oracles.hpp"

using namespace bergman;

namespace {

constexpr std::uint64_t kSeed = 20240917;
constexpr int kCases = 40;

double max_abs(const Matrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

CoefficientSeries random_series(oracle::Generator& gen, const SpaceParams& p) {
  std::vector<ComplexVector> c(p.degree_cap() + 1, ComplexVector(p.fiber_dim()));
  for (auto& v : c) {
    for (auto& x : v) x = gen.gaussian();
  }
  return CoefficientSeries(p, c);
}

}  // namespace

TEST(Property, WeightsAgreeWithGammaRatio) {
  oracle::Generator gen(kSeed);
  for (int c = 0; c < 200; ++c) {
    const double alpha = gen.alpha();
    const int n = gen.integer(0, 150);
    EXPECT_NEAR(weight(n, alpha) / oracle::gamma_weight(n, alpha), 1.0, 1e-11)
        << "case " << c << " alpha=" << alpha << " n=" << n;
  }
}

TEST(Property, WeightsDecreaseForPositiveIndex) {
  oracle::Generator gen(kSeed + 1);
  for (int c = 0; c < kCases; ++c) {
    const WeightSequence w(gen.alpha(), 60);
    for (int n = 1; n <= 60; ++n) EXPECT_LT(w[n], w[n - 1]) << "case " << c;
  }
}

TEST(Property, CompositionMatrixMatchesOracle) {
  oracle::Generator gen(kSeed + 2);
  for (int c = 0; c < 15; ++c) {
    const auto phi = gen.self_map(gen.integer(0, 3), 0.95);
    const double alpha = gen.alpha();
    const int n = gen.integer(1, 8);
    const int out = n * std::max(static_cast<int>(phi.size()) - 1, 0);
    const auto b = composition_matrix(AnalyticMap(phi), alpha, n, out);
    EXPECT_LT(max_abs(b.entries() - oracle::composition_matrix(phi, alpha, n, out)), 1e-12)
        << "case " << c;
  }
}

TEST(Property, NormSandwichAndMonotone) {
  oracle::Generator gen(kSeed + 3);
  for (int c = 0; c < kCases; ++c) {
    const AnalyticMap phi(gen.self_map(gen.integer(1, 3), 0.9));
    const double alpha = gen.alpha();
    const double lower = harness::norm_lower_bound(phi[0], alpha);
    const double upper = harness::norm_upper_bound(phi[0], alpha);
    double previous = 0.0;
    for (int n : {4, 8, 16}) {
      const auto b = composition_matrix(phi, alpha, n, exact_out_degree(phi, n));
      const double value = oracle::spectral_norm(b.entries());
      EXPECT_LE(value, upper * (1.0 + 1e-12)) << "case " << c;
      EXPECT_GE(value, previous * (1.0 - 1e-12)) << "case " << c;
      previous = value;
    }
    // The lower bound is the norm of the adjoint on a kernel, approached only as N grows.
    const auto b = composition_matrix(phi, alpha, 48, exact_out_degree(phi, 48));
    EXPECT_GE(oracle::spectral_norm(b.entries()), lower * (1.0 - 1e-3)) << "case " << c;
  }
}

TEST(Property, PowerIterationMatchesSvd) {
  oracle::Generator gen(kSeed + 4);
  for (int c = 0; c < kCases; ++c) {
    const AnalyticMap phi(gen.self_map(gen.integer(0, 2), 0.95));
    const auto b = composition_matrix(phi, gen.alpha(), gen.integer(1, 20), gen.integer(0, 30));
    const auto est = estimate_operator_norm(b, {.tol = 1e-13, .max_iterations = 200000, .seed = kSeed});
    const double svd = oracle::spectral_norm(b.entries());
    EXPECT_NEAR(est.value, svd, 1e-9 * std::max(1.0, svd)) << "case " << c;
  }
}

TEST(Property, CompositionIsContravariant) {
  // C_psi C_phi = C_{phi o psi} on polynomials, with exact rows throughout.
  oracle::Generator gen(kSeed + 5);
  for (int c = 0; c < 20; ++c) {
    const AnalyticMap phi(gen.self_map(gen.integer(1, 2), 0.9));
    const AnalyticMap psi(gen.self_map(gen.integer(1, 2), 0.9));
    const double alpha = gen.alpha();
    const int n = gen.integer(1, 6);
    const int mid = exact_out_degree(phi, n);
    const int out = exact_out_degree(psi, mid);
    const Matrix lhs = composition_matrix(psi, alpha, mid, out).entries() *
                     composition_matrix(phi, alpha, n, mid).entries();
    const auto both = compose(phi, psi, phi.degree() * psi.degree());
    const auto rhs = composition_matrix(both, alpha, n, out, SelfMapCheck::trust).entries();
    EXPECT_LT(max_abs(lhs - rhs), 1e-11) << "case " << c;
  }
}

TEST(Property, RotationsAreUnitary) {
  oracle::Generator gen(kSeed + 6);
  for (int c = 0; c < kCases; ++c) {
    const Complex lambda = std::polar(1.0, gen.uniform(0.0, 2.0 * std::numbers::pi));
    const auto s = classify(composition_matrix(AnalyticMap::monomial(lambda, 1), gen.alpha(), 24, 24),
                            1e-12);
    EXPECT_TRUE(s.unitary()) << "case " << c;
    EXPECT_TRUE(s.normal()) << "case " << c;
  }
}

TEST(Property, ReproducingKernel) {
  oracle::Generator gen(kSeed + 7);
  for (int c = 0; c < kCases; ++c) {
    const SpaceParams p(gen.alpha(), gen.integer(0, 30), gen.integer(1, 4));
    const auto f = random_series(gen, p);
    const KernelPoint pt(gen.in_disk(0.9), gen.integer(0, p.fiber_dim() - 1));
    const Complex direct = evaluate(f, pt.z)[pt.j];
    EXPECT_LT(std::abs(inner_product(f, kernel_series(pt, p)) - direct),
              1e-11 * std::max(1.0, std::abs(direct)))
        << "case " << c;
    // Pointwise growth bound.
    EXPECT_LE(std::abs(direct), growth_bound(norm(f), pt.z, p.alpha()) * (1.0 + 1e-12));
  }
}

TEST(Property, TruncatedKernelNormIncreasesToClosedForm) {
  oracle::Generator gen(kSeed + 8);
  for (int c = 0; c < kCases; ++c) {
    const Complex z = gen.in_disk(0.95);
    const double alpha = gen.alpha();
    const double closed = kernel_norm_closed_form(KernelPoint(z), alpha);
    double previous = 0.0;
    for (int n = 0; n <= 64; n += 4) {
      const double t = truncated_kernel_norm(z, alpha, n);
      EXPECT_GE(t, previous) << "case " << c;
      EXPECT_LE(t, closed * (1.0 + 1e-14)) << "case " << c;
      previous = t;
    }
  }
}

TEST(Property, AdjointKernelResidualWithinBound) {
  oracle::Generator gen(kSeed + 9);
  for (int c = 0; c < kCases; ++c) {
    const AnalyticMap phi(gen.self_map(gen.integer(1, 3), 0.9));
    const double alpha = gen.alpha();
    const int n = gen.integer(2, 24);
    const int exact = exact_out_degree(phi, n);
    const int out = gen.integer(n / 2, exact);
    const KernelPoint p(gen.in_disk(0.8));
    const auto r = adjoint_kernel_residual(composition_matrix(phi, alpha, n, out), phi, p);
    EXPECT_LE(r.residual, r.bound()) << "case " << c << " out=" << out << " exact=" << exact;
  }
}

TEST(Property, QuadratureInnerProductExactForPolynomials) {
  oracle::Generator gen(kSeed + 10);
  for (int c = 0; c < 10; ++c) {
    const double alpha = gen.alpha();
    const SpaceParams p(alpha, gen.integer(0, 20), 2);
    const auto f = random_series(gen, p);
    const auto g = random_series(gen, p);
    const Complex exact = inner_product(f, g);
    EXPECT_LT(std::abs(quadrature_inner_product(f, g, DiskRule(alpha)) - exact),
              1e-11 * std::max(1.0, std::abs(exact)))
        << "case " << c;
  }
}

TEST(Property, GwcoMonomialClosedForm) {
  // phi = lambda z, psi = 1: s_m = |lambda|^{m-r} d_m m!/(m-r)! sqrt(w_{m-r}).
  oracle::Generator gen(kSeed + 11);
  for (int c = 0; c < kCases; ++c) {
    const double lam = gen.uniform(0.05, 0.99);
    const double alpha = gen.alpha();
    const int r = gen.integer(0, 3);
    const int m_max = gen.integer(r, 40);
    const auto s = harness::criterion_sequence({0.0, lam}, AnalyticMap::constant(1.0), r, m_max, alpha);
    for (int m = r; m <= m_max; ++m) {
      double ff = 1.0;
      for (int i = 0; i < r; ++i) ff *= m - i;
      const double closed = std::pow(lam, m - r) * ff *
                            std::sqrt(oracle::gamma_weight(m - r, alpha) / oracle::gamma_weight(m, alpha));
      EXPECT_NEAR(s[m - r] / closed, 1.0, 1e-10) << "case " << c << " m=" << m;
    }
  }
}

TEST(Property, SeededEstimatesAreReproducible) {
  oracle::Generator gen(kSeed + 12);
  for (int c = 0; c < 10; ++c) {
    const AnalyticMap phi(gen.self_map(2, 0.9));
    const auto b = composition_matrix(phi, 0.0, 12, 24);
    const std::uint64_t seed = static_cast<std::uint64_t>(gen.integer(0, 1 << 30));
    const auto a1 = estimate_operator_norm(b, {.seed = seed});
    const auto a2 = estimate_operator_norm(b, {.seed = seed});
    EXPECT_EQ(a1.value, a2.value);
    EXPECT_EQ(a1.residual, a2.residual);
  }
}
