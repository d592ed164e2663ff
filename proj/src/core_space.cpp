#include "bergman/core_space.hpp"

#include <cmath>
#include <string>

namespace bergman {

namespace {

void require_finite(Complex c) {
  if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
    throw DomainError("coefficient series entries must be finite");
  }
}

void require_same_params(const CoefficientSeries& f, const CoefficientSeries& g) {
  if (!(f.params() == g.params())) {
    throw DomainError("series belong to different truncated spaces");
  }
}

}  // namespace

void require_valid_alpha(double alpha) {
  if (!(alpha > -1.0) || !std::isfinite(alpha)) {
    throw DomainError("weight exponent alpha must be finite and > -1, got " +
                      std::to_string(alpha));
  }
}

SpaceParams::SpaceParams(double alpha, int degree_cap, int fiber_dim)
    : alpha_(alpha), degree_cap_(degree_cap), fiber_dim_(fiber_dim) {
  require_valid_alpha(alpha);
  if (degree_cap < 0) throw DomainError("degree_cap must be >= 0");
  if (fiber_dim < 1) throw DomainError("fiber_dim must be >= 1");
}

double weight(int n, double alpha) {
  require_valid_alpha(alpha);
  if (n < 0) throw DomainError("weight index must be >= 0");
  double w = 1.0;
  for (int k = 1; k <= n; ++k) {
    w *= k / (k + 1.0 + alpha);
  }
  return w;
}

double basis_scale(int n, double alpha) { return 1.0 / std::sqrt(weight(n, alpha)); }

WeightSequence::WeightSequence(double alpha, int degree_cap) : alpha_(alpha) {
  require_valid_alpha(alpha);
  if (degree_cap < 0) throw DomainError("degree_cap must be >= 0");
  weights_.resize(degree_cap + 1);
  scales_.resize(degree_cap + 1);
  weights_[0] = 1.0;
  for (int k = 1; k <= degree_cap; ++k) {
    weights_[k] = weights_[k - 1] * (k / (k + 1.0 + alpha));
  }
  for (int k = 0; k <= degree_cap; ++k) {
    scales_[k] = 1.0 / std::sqrt(weights_[k]);
  }
}

CoefficientSeries::CoefficientSeries(const SpaceParams& params)
    : params_(params),
      coeffs_(params.degree_cap() + 1, ComplexVector(params.fiber_dim())) {}

CoefficientSeries::CoefficientSeries(const SpaceParams& params,
                                     std::vector<ComplexVector> coeffs)
    : params_(params), coeffs_(std::move(coeffs)) {
  if (static_cast<int>(coeffs_.size()) != params_.degree_cap() + 1) {
    throw DomainError("coefficient count must be degree_cap + 1");
  }
  for (const auto& y : coeffs_) {
    if (static_cast<int>(y.size()) != params_.fiber_dim()) {
      throw DomainError("coefficient vectors must have length fiber_dim");
    }
    for (Complex c : y) require_finite(c);
  }
}

void CoefficientSeries::set(int n, int j, Complex value) {
  require_finite(value);
  coeffs_.at(n).at(j) = value;
}

CoefficientSeries& CoefficientSeries::operator+=(const CoefficientSeries& other) {
  require_same_params(*this, other);
  for (std::size_t n = 0; n < coeffs_.size(); ++n) {
    for (std::size_t j = 0; j < coeffs_[n].size(); ++j) {
      coeffs_[n][j] += other.coeffs_[n][j];
    }
  }
  return *this;
}

CoefficientSeries& CoefficientSeries::operator*=(Complex s) {
  require_finite(s);
  for (auto& y : coeffs_) {
    for (auto& c : y) c *= s;
  }
  return *this;
}

CoefficientSeries operator+(CoefficientSeries a, const CoefficientSeries& b) {
  a += b;
  return a;
}

CoefficientSeries operator*(Complex s, CoefficientSeries f) {
  f *= s;
  return f;
}

CoefficientSeries scalar_series(const SpaceParams& params, std::span<const Complex> coeffs,
                                int j) {
  if (j < 0 || j >= params.fiber_dim()) throw DomainError("fiber index out of range");
  if (static_cast<int>(coeffs.size()) > params.degree_cap() + 1) {
    throw DomainError("scalar series exceeds the degree cap");
  }
  CoefficientSeries f(params);
  for (std::size_t n = 0; n < coeffs.size(); ++n) f.set(static_cast<int>(n), j, coeffs[n]);
  return f;
}

Complex inner_product(const CoefficientSeries& f, const CoefficientSeries& g) {
  require_same_params(f, g);
  const WeightSequence w(f.params().alpha(), f.degree_cap());
  Complex sum{};
  for (int n = 0; n <= f.degree_cap(); ++n) {
    Complex fiber{};
    const auto& y = f.coefficient(n);
    const auto& s = g.coefficient(n);
    for (std::size_t j = 0; j < y.size(); ++j) fiber += y[j] * std::conj(s[j]);
    sum += w[n] * fiber;
  }
  return sum;
}

double norm(const CoefficientSeries& f) {
  const WeightSequence w(f.params().alpha(), f.degree_cap());
  double sum = 0.0;
  for (int n = 0; n <= f.degree_cap(); ++n) {
    double fiber = 0.0;
    for (Complex c : f.coefficient(n)) fiber += std::norm(c);
    sum += w[n] * fiber;
  }
  return std::sqrt(sum);
}

CoefficientSeries basis_function(int m, int n, const SpaceParams& params) {
  if (m < 0 || m > params.degree_cap()) throw DomainError("basis degree out of range");
  if (n < 0 || n >= params.fiber_dim()) throw DomainError("basis fiber index out of range");
  CoefficientSeries e(params);
  e.set(m, n, basis_scale(m, params.alpha()));
  return e;
}

ComplexVector evaluate(const CoefficientSeries& f, Complex z) {
  if (!(std::abs(z) < 1.0)) throw DomainError("evaluation point must lie in the open unit disk");
  ComplexVector value(f.fiber_dim());
  for (int n = f.degree_cap(); n >= 0; --n) {
    const auto& y = f.coefficient(n);
    for (std::size_t j = 0; j < value.size(); ++j) value[j] = value[j] * z + y[j];
  }
  return value;
}

double growth_bound(double function_norm, Complex z, double alpha) {
  require_valid_alpha(alpha);
  if (!(std::abs(z) < 1.0)) throw DomainError("growth bound requires |z| < 1");
  return function_norm / std::pow(1.0 - std::norm(z), (alpha + 2.0) / 2.0);
}

}  // namespace bergman
