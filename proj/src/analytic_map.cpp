#include "bergman/analytic_map.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace bergman {

namespace {

void require_finite(std::span<const Complex> coeffs) {
  for (Complex c : coeffs) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw DomainError("analytic map coefficients must be finite");
    }
  }
}

void require_nonnegative_degree(int out_degree) {
  if (out_degree < 0) throw DomainError("truncation degree must be >= 0");
}

}  // namespace

AnalyticMap::AnalyticMap() : coeffs_(1) {}

AnalyticMap::AnalyticMap(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.emplace_back();
  require_finite(coeffs_);
}

AnalyticMap::AnalyticMap(std::initializer_list<Complex> coeffs)
    : AnalyticMap(std::vector<Complex>(coeffs)) {}

AnalyticMap AnalyticMap::constant(Complex c) { return AnalyticMap({c}); }

AnalyticMap AnalyticMap::identity() { return AnalyticMap({0.0, 1.0}); }

AnalyticMap AnalyticMap::monomial(Complex lambda, int k) {
  if (k < 0) throw DomainError("monomial degree must be >= 0");
  std::vector<Complex> c(k + 1);
  c[k] = lambda;
  return AnalyticMap(std::move(c));
}

int AnalyticMap::effective_degree() const noexcept {
  int d = degree();
  while (d > 0 && coeffs_[d] == Complex{}) --d;
  return d;
}

Complex AnalyticMap::operator()(Complex z) const {
  Complex value{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) value = value * z + *it;
  return value;
}

double AnalyticMap::majorant(double radius) const {
  double value = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    value = value * radius + std::abs(*it);
  }
  return value;
}

AnalyticMap AnalyticMap::truncated(int out_degree) const {
  require_nonnegative_degree(out_degree);
  std::vector<Complex> c(out_degree + 1);
  const int n = std::min(out_degree, degree());
  std::copy_n(coeffs_.begin(), n + 1, c.begin());
  return AnalyticMap(std::move(c));
}

AnalyticMap operator+(const AnalyticMap& a, const AnalyticMap& b) {
  std::vector<Complex> c(std::max(a.degree(), b.degree()) + 1);
  for (int n = 0; n < static_cast<int>(c.size()); ++n) c[n] = a[n] + b[n];
  return AnalyticMap(std::move(c));
}

AnalyticMap operator*(Complex s, const AnalyticMap& a) {
  std::vector<Complex> c(a.coeffs().begin(), a.coeffs().end());
  for (auto& x : c) x *= s;
  return AnalyticMap(std::move(c));
}

AnalyticMap multiply(const AnalyticMap& a, const AnalyticMap& b, int out_degree) {
  require_nonnegative_degree(out_degree);
  std::vector<Complex> c(out_degree + 1);
  const int da = std::min(a.degree(), out_degree);
  for (int i = 0; i <= da; ++i) {
    const Complex ai = a[i];
    if (ai == Complex{}) continue;
    const int db = std::min(b.degree(), out_degree - i);
    for (int j = 0; j <= db; ++j) c[i + j] += ai * b[j];
  }
  return AnalyticMap(std::move(c));
}

AnalyticMap compose(const AnalyticMap& f, const AnalyticMap& phi, int out_degree) {
  require_nonnegative_degree(out_degree);
  // Horner: (((a_M) phi + a_{M-1}) phi + ...) + a_0, truncating each product.
  AnalyticMap acc = AnalyticMap::constant(f[f.degree()]).truncated(out_degree);
  for (int n = f.degree() - 1; n >= 0; --n) {
    acc = multiply(acc, phi, out_degree);
    std::vector<Complex> c(acc.coeffs().begin(), acc.coeffs().end());
    c[0] += f[n];
    acc = AnalyticMap(std::move(c));
  }
  return acc;
}

double falling_factorial(int m, int r) {
  if (r < 0) throw DomainError("falling factorial order must be >= 0");
  if (r > m) return 0.0;
  double p = 1.0;
  for (int i = 0; i < r; ++i) p *= static_cast<double>(m - i);
  return p;
}

AnalyticMap differentiate(const AnalyticMap& f, int r) {
  if (r < 0) throw DomainError("derivative order must be >= 0");
  if (r > f.degree()) return AnalyticMap();
  std::vector<Complex> c(f.degree() - r + 1);
  for (int m = r; m <= f.degree(); ++m) c[m - r] = falling_factorial(m, r) * f[m];
  return AnalyticMap(std::move(c));
}

std::vector<AnalyticMap> power_ladder(const AnalyticMap& phi, int m_max, int out_degree) {
  if (m_max < 0) throw DomainError("power must be >= 0");
  require_nonnegative_degree(out_degree);
  std::vector<AnalyticMap> ladder;
  ladder.reserve(m_max + 1);
  ladder.push_back(AnalyticMap::constant(1.0).truncated(out_degree));
  for (int m = 1; m <= m_max; ++m) ladder.push_back(multiply(ladder.back(), phi, out_degree));
  return ladder;
}

AnalyticMap power(const AnalyticMap& phi, int m, int out_degree) {
  return power_ladder(phi, m, out_degree).back();
}

AnalyticMap mobius(Complex c, int out_degree) {
  require_nonnegative_degree(out_degree);
  if (!(std::abs(c) < 1.0)) throw DomainError("Mobius parameter must satisfy |c| < 1");
  std::vector<Complex> coeffs(out_degree + 1);
  coeffs[0] = c;
  const double scale = 1.0 - std::norm(c);
  Complex cbar_power = 1.0;
  for (int k = 1; k <= out_degree; ++k) {
    coeffs[k] = -scale * cbar_power;
    cbar_power *= std::conj(c);
  }
  return AnalyticMap(std::move(coeffs));
}

SelfMapCertificate certify_self_map(const AnalyticMap& phi, const CertifyOptions& options) {
  if (options.samples_per_circle < 1) throw DomainError("need at least one sample per circle");
  SelfMapCertificate cert;
  cert.samples_per_circle = options.samples_per_circle;
  cert.radii_count = static_cast<int>(options.radii.size());
  cert.slack = options.slack;
  for (double radius : options.radii) {
    if (!(radius > 0.0 && radius < 1.0)) throw DomainError("sample radii must lie in (0, 1)");
    cert.sample_radius = std::max(cert.sample_radius, radius);
    for (int k = 0; k < options.samples_per_circle; ++k) {
      const double theta = 2.0 * std::numbers::pi * k / options.samples_per_circle;
      cert.sup_estimate = std::max(cert.sup_estimate, std::abs(phi(std::polar(radius, theta))));
    }
  }
  return cert;
}

}  // namespace bergman
