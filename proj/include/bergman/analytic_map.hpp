#pragma once

// Scalar truncated power series used as inducing maps (Phi) and weights (Psi).
// Every operation that can raise the degree takes the truncation degree
// explicitly; nothing is truncated implicitly.

#include <complex>
#include <initializer_list>
#include <span>
#include <vector>

#include "bergman/core_space.hpp"

namespace bergman {

/// a_0 + a_1 z + ... + a_M z^M.
class AnalyticMap {
public:
  /// The zero map (degree 0).
  AnalyticMap();
  explicit AnalyticMap(std::vector<Complex> coeffs);
  AnalyticMap(std::initializer_list<Complex> coeffs);

  static AnalyticMap constant(Complex c);
  static AnalyticMap identity();
  /// lambda z^k.
  static AnalyticMap monomial(Complex lambda, int k);

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  /// Degree after dropping trailing (exactly) zero coefficients.
  int effective_degree() const noexcept;

  Complex operator[](int n) const { return n <= degree() ? coeffs_[n] : Complex{}; }
  std::span<const Complex> coeffs() const noexcept { return coeffs_; }

  Complex operator()(Complex z) const;
  /// sum |a_n| R^n, the nonnegative majorant evaluated at radius R >= 0.
  double majorant(double radius) const;

  /// Coefficients past out_degree are dropped; shorter maps are zero-padded.
  AnalyticMap truncated(int out_degree) const;

  friend AnalyticMap operator+(const AnalyticMap& a, const AnalyticMap& b);
  friend AnalyticMap operator*(Complex s, const AnalyticMap& a);

private:
  std::vector<Complex> coeffs_;
};

/// f o phi truncated at out_degree (Horner over truncated products).
AnalyticMap compose(const AnalyticMap& f, const AnalyticMap& phi, int out_degree);

/// Cauchy product truncated at out_degree.
AnalyticMap multiply(const AnalyticMap& a, const AnalyticMap& b, int out_degree);

/// r-th derivative; falls to the zero map when r exceeds the degree.
AnalyticMap differentiate(const AnalyticMap& f, int r);

/// phi^m truncated at out_degree.
AnalyticMap power(const AnalyticMap& phi, int m, int out_degree);

/// phi^0, ..., phi^{m_max}, one truncated multiply per rung.
std::vector<AnalyticMap> power_ladder(const AnalyticMap& phi, int m_max, int out_degree);

/// Truncated expansion of (c - z)/(1 - conj(c) z) = c - (1-|c|^2) sum_{k>=1} conj(c)^{k-1} z^k.
AnalyticMap mobius(Complex c, int out_degree);

/// m (m-1) ... (m-r+1); 1 for r = 0, 0 for r > m.
double falling_factorial(int m, int r);

struct CertifyOptions {
  std::vector<double> radii{0.9, 0.99, 0.999};
  int samples_per_circle = 4096;
  double slack = 1e-9;
};

/// Sampled evidence that a polynomial maps the disk into itself.
struct SelfMapCertificate {
  double sup_estimate = 0.0;
  double sample_radius = 0.0;  // outermost radius sampled
  int samples_per_circle = 0;
  int radii_count = 0;
  double slack = 0.0;

  bool accepted() const noexcept { return sup_estimate <= 1.0 + slack; }
};

SelfMapCertificate certify_self_map(const AnalyticMap& phi, const CertifyOptions& options = {});

}  // namespace bergman
