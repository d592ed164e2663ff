#pragma once

// Truncated model of the H-valued weighted Bergman space A^2_alpha(H).
//
// A function f(z) = sum_n y_n z^n is stored by its coefficient vectors
// y_0..y_N in C^d. The norm is the weighted Parseval sum
//
//   ||f||^2 = sum_n w_n ||y_n||^2,   w_n = n! Gamma(2+alpha) / Gamma(n+2+alpha),
//
// and E_{m,j} = d_m z^m e_j with d_m = 1/sqrt(w_m) is the orthonormal basis.

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace bergman {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Thrown when an argument violates a precondition of the model.
class DomainError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Weight exponent, truncation degree and fiber dimension of the discretized space.
class SpaceParams {
public:
  SpaceParams(double alpha, int degree_cap, int fiber_dim = 3);

  double alpha() const noexcept { return alpha_; }
  int degree_cap() const noexcept { return degree_cap_; }
  int fiber_dim() const noexcept { return fiber_dim_; }

  friend bool operator==(const SpaceParams&, const SpaceParams&) = default;

private:
  double alpha_;
  int degree_cap_;
  int fiber_dim_;
};

void require_valid_alpha(double alpha);

/// w_n by the recurrence w_n = w_{n-1} n / (n+1+alpha), w_0 = 1.
double weight(int n, double alpha);

/// d_{n,alpha} = 1/sqrt(w_n), the normalizing constant of E_{n,j}.
double basis_scale(int n, double alpha);

/// The monomial weights w_0..w_N of the space norm.
class WeightSequence {
public:
  WeightSequence(double alpha, int degree_cap);

  double alpha() const noexcept { return alpha_; }
  int degree_cap() const noexcept { return static_cast<int>(weights_.size()) - 1; }

  double operator[](std::size_t n) const { return weights_[n]; }
  double scale(std::size_t n) const { return scales_[n]; }

  std::span<const double> weights() const noexcept { return weights_; }
  std::span<const double> scales() const noexcept { return scales_; }

private:
  double alpha_;
  std::vector<double> weights_;
  std::vector<double> scales_;
};

/// An H-valued polynomial of degree at most degree_cap with coefficients in C^d.
class CoefficientSeries {
public:
  /// Zero series.
  explicit CoefficientSeries(const SpaceParams& params);
  /// coeffs[n] is y_n; requires degree_cap+1 entries of length fiber_dim, all finite.
  CoefficientSeries(const SpaceParams& params, std::vector<ComplexVector> coeffs);

  const SpaceParams& params() const noexcept { return params_; }
  int degree_cap() const noexcept { return params_.degree_cap(); }
  int fiber_dim() const noexcept { return params_.fiber_dim(); }

  const ComplexVector& coefficient(int n) const { return coeffs_.at(n); }
  Complex at(int n, int j) const { return coeffs_.at(n).at(j); }
  void set(int n, int j, Complex value);

  const std::vector<ComplexVector>& coefficients() const noexcept { return coeffs_; }

  CoefficientSeries& operator+=(const CoefficientSeries& other);
  CoefficientSeries& operator*=(Complex s);

private:
  SpaceParams params_;
  std::vector<ComplexVector> coeffs_;
};

CoefficientSeries operator+(CoefficientSeries a, const CoefficientSeries& b);
CoefficientSeries operator*(Complex s, CoefficientSeries f);

/// Series that is `scalar(z) * e_j`: scalar coefficients c_n placed in fiber slot j.
CoefficientSeries scalar_series(const SpaceParams& params, std::span<const Complex> coeffs,
                                int j);

/// <f, g> = sum_n w_n <y_n, s_n>, conjugating the second argument.
Complex inner_product(const CoefficientSeries& f, const CoefficientSeries& g);

double norm(const CoefficientSeries& f);

/// E_{m,n} = d_m z^m e_n.
CoefficientSeries basis_function(int m, int n, const SpaceParams& params);

/// f(z) by Horner's scheme; requires |z| < 1.
ComplexVector evaluate(const CoefficientSeries& f, Complex z);

/// ||f|| / (1-|z|^2)^{(alpha+2)/2}, the pointwise growth bound of the space.
double growth_bound(double function_norm, Complex z, double alpha);

}  // namespace bergman
