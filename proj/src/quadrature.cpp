#include "bergman/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>

namespace bergman {

namespace {

struct JacobiValue {
  double p;   // P_n^{(a,0)}(x)
  double dp;  // derivative
};

// Three-term recurrence for the Jacobi polynomial P_n^{(a,b)} with b = 0.
JacobiValue jacobi(int n, double a, double x) {
  constexpr double b = 0.0;
  double p_prev = 1.0;
  double p = (a + 1.0) + (a + b + 2.0) * (x - 1.0) / 2.0;
  if (n == 0) return {1.0, 0.0};
  for (int k = 2; k <= n; ++k) {
    const double s = 2.0 * k + a + b;
    const double c1 = 2.0 * k * (k + a + b) * (s - 2.0);
    const double c2 = (s - 1.0) * (s * (s - 2.0) * x + a * a - b * b);
    const double c3 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * s;
    const double next = (c2 * p - c3 * p_prev) / c1;
    p_prev = p;
    p = next;
  }
  const double s = 2.0 * n + a + b;
  const double dp =
      (n * ((a - b) - s * x) * p + 2.0 * (n + a) * (n + b) * p_prev) / (s * (1.0 - x * x));
  return {p, dp};
}

}  // namespace

GaussRule gauss_jacobi_unit_interval(int n, double alpha) {
  require_valid_alpha(alpha);
  if (n < 1) throw DomainError("Gauss rule needs at least one node");
  const double a = alpha;
  constexpr double b = 0.0;

  // Golub-Welsch: nodes are eigenvalues of the symmetric Jacobi matrix on [-1, 1].
  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(std::max(n - 1, 1));
  for (int k = 0; k < n; ++k) {
    const double s = 2.0 * k + a + b;
    diag(k) = (k == 0) ? (b - a) / (a + b + 2.0) : (b * b - a * a) / (s * (s + 2.0));
  }
  for (int k = 1; k < n; ++k) {
    const double s = 2.0 * k + a + b;
    const double beta =
        4.0 * k * (k + a) * (k + b) * (k + a + b) / (s * s * (s + 1.0) * (s - 1.0));
    sub(k - 1) = std::sqrt(beta);
  }
  std::vector<double> x(n);
  if (n == 1) {
    x[0] = diag(0);
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub.head(n - 1), Eigen::EigenvaluesOnly);
    for (int i = 0; i < n; ++i) x[i] = solver.eigenvalues()(i);
  }

  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    // Newton polish, then the derivative form of the Christoffel weight, which keeps
    // full relative accuracy for the small weights near t = 1.
    double xi = x[i];
    for (int it = 0; it < 3; ++it) {
      const auto v = jacobi(n, a, xi);
      xi -= v.p / v.dp;
    }
    const auto v = jacobi(n, a, xi);
    // On [-1,1] the weight is 2^{a+1} / ((1-x^2) P_n'(x)^2); mapping t = (1+x)/2
    // rescales the measure by 2^{-(a+1)}.
    rule.nodes[i] = (1.0 + xi) / 2.0;
    rule.weights[i] = 1.0 / ((1.0 - xi * xi) * v.dp * v.dp);
  }
  return rule;
}

DiskRule::DiskRule(double alpha, int radial_count, int angular_count)
    : alpha_(alpha), angular_count_(angular_count),
      radial_(gauss_jacobi_unit_interval(radial_count, alpha)) {
  if (angular_count < 1) throw DomainError("angular rule needs at least one node");
  points_.reserve(static_cast<std::size_t>(radial_count) * angular_count);
  for (double t : radial_.nodes) {
    const double r = std::sqrt(t);
    for (int j = 0; j < angular_count; ++j) {
      points_.push_back(std::polar(r, 2.0 * std::numbers::pi * j / angular_count));
    }
  }
}

std::vector<Complex> DiskRule::sample(const std::function<Complex(Complex)>& g) const {
  std::vector<Complex> values(points_.size());
  std::transform(points_.begin(), points_.end(), values.begin(), g);
  return values;
}

Complex disk_integral(std::span<const Complex> samples, const DiskRule& rule) {
  if (samples.size() != rule.size()) throw DomainError("sample count does not match the rule");
  const int nt = rule.angular_count();
  Complex total{};
  for (int i = 0; i < rule.radial_count(); ++i) {
    Complex ring{};
    for (int j = 0; j < nt; ++j) {
      const Complex s = samples[static_cast<std::size_t>(i) * nt + j];
      if (std::isnan(s.real()) || std::isnan(s.imag())) {
        throw DomainError("NaN sample in disk integral");
      }
      ring += s;
    }
    total += rule.radial_rule().weights[i] * (ring / static_cast<double>(nt));
  }
  return (rule.alpha() + 1.0) * total;
}

Complex disk_integral(const std::function<Complex(Complex)>& g, const DiskRule& rule) {
  return disk_integral(rule.sample(g), rule);
}

double l2_norm(const AnalyticMap& h, const DiskRule& rule) {
  const Complex s = disk_integral([&](Complex z) { return Complex(std::norm(h(z))); }, rule);
  return std::sqrt(std::max(s.real(), 0.0));
}

double l2_norm_parseval(const AnalyticMap& h, double alpha) {
  const WeightSequence w(alpha, h.degree());
  double sum = 0.0;
  for (int k = 0; k <= h.degree(); ++k) sum += std::norm(h[k]) * w[k];
  return std::sqrt(sum);
}

Complex quadrature_inner_product(const CoefficientSeries& f, const CoefficientSeries& g,
                                 const DiskRule& rule) {
  if (!(f.params() == g.params())) throw DomainError("series belong to different spaces");
  if (f.params().alpha() != rule.alpha()) throw DomainError("rule weight differs from space");
  return disk_integral(
      [&](Complex z) {
        const auto fz = evaluate(f, z);
        const auto gz = evaluate(g, z);
        Complex s{};
        for (std::size_t j = 0; j < fz.size(); ++j) s += fz[j] * std::conj(gz[j]);
        return s;
      },
      rule);
}

Matrix gram_matrix_of_powers(const AnalyticMap& phi, int n_max, const DiskRule& rule) {
  if (n_max < 1) throw DomainError("gram matrix of powers needs n_max >= 1");
  const std::size_t np = rule.size();
  // values(p, n) = phi(z_p)^n
  Matrix values(np, n_max + 1);
  for (std::size_t p = 0; p < np; ++p) {
    const Complex v = phi(rule.points()[p]);
    Complex acc = 1.0;
    for (int n = 0; n <= n_max; ++n) {
      values(p, n) = acc;
      acc *= v;
    }
  }
  // Fold quadrature weights into the rows, then G = V^H W V (conjugated to <phi^i, phi^j>).
  Matrix weighted = values;
  const int nt = rule.angular_count();
  for (std::size_t p = 0; p < np; ++p) {
    const double wt = (rule.alpha() + 1.0) * rule.radial_rule().weights[p / nt] / nt;
    weighted.row(p) *= wt;
  }
  const Matrix g = values.transpose() * weighted.conjugate();
  return g;
}

double orthogonality_defect(const Matrix& gram) {
  double defect = 0.0;
  for (Eigen::Index i = 0; i < gram.rows(); ++i) {
    for (Eigen::Index j = 0; j < gram.cols(); ++j) {
      if (i == j) continue;
      const double scale = std::sqrt(std::abs(gram(i, i).real() * gram(j, j).real()));
      if (scale == 0.0) continue;
      defect = std::max(defect, std::abs(gram(i, j)) / scale);
    }
  }
  return defect;
}

}  // namespace bergman
