#include <cmath>
#include <stdexcept>

#include "bge/errors.hpp"
#include "bge/inference.hpp"
#include "bge/quadrature.hpp"
#include "bge/specfun.hpp"

namespace bge::inference {

bool t_integrable(double a, double b, double alpha, int i, int j, int k, int l, int m) {
  // V -> 1: (1 - V)^{b - 1 - i + j + m}; V -> 0: V^{a - 1 + i + (l - k)/α}
  return b - i + j + m > 0.0 && a + i + (l - k) / alpha > 0.0;
}

double t_expectation(double a, double b, double alpha, int i, int j, int k, int l, int m) {
  for (int v : {i, j, k, l, m}) {
    if (v < 0 || v > 2) throw std::domain_error("t_expectation: indices must lie in {0, 1, 2}");
  }
  if (!(a > 0.0 && b > 0.0 && alpha > 0.0)) {
    throw std::domain_error("t_expectation: a, b, alpha must be positive");
  }
  if (!t_integrable(a, b, alpha, i, j, k, l, m)) {
    throw std::domain_error("t_expectation: expectation is not finite at these parameters");
  }
  const double log_b = specfun::log_beta(a, b);
  const double pv = a - 1.0 + i - k / alpha;
  const double pc = b - 1.0 - i;
  const double sign = ((l + m) % 2 == 0) ? 1.0 : -1.0;
  auto integrand = [&](double v, double c) {
    if (v <= 0.0 || c <= 0.0) return 0.0;
    const double log_v = (v < 0.5) ? std::log(v) : std::log1p(-c);
    const double log_root = log_v / alpha;       // log V^{1/α}
    const double log_w = specfun::log1mexp(log_root);  // log(1 - V^{1/α})
    double s = pv * log_v + pc * std::log(c) - log_b;
    if (j != 0) s += j * log_w;
    if (l != 0) s += l * std::log(-log_w);
    if (m != 0) s += m * std::log(-log_v);
    return sign * std::exp(s);
  };
  const quadrature::Result r = quadrature::tanh_sinh_unit(integrand, 1e-12, 1e-12, 12);
  if (!r.converged && r.error > 1e-9 * std::max(1.0, std::fabs(r.value))) {
    throw ConvergenceError("t_expectation: quadrature did not converge", r.value, r.evaluations,
                           r.error);
  }
  return r.value;
}

InfoMatrix information_matrix(const BgeParams& theta, std::size_t n_scale) {
  const double a = theta.a();
  const double b = theta.b();
  const double lambda = theta.lambda();
  const double alpha = theta.alpha();
  auto T = [&](int i, int j, int k, int l, int m) {
    return t_expectation(a, b, alpha, i, j, k, l, m);
  };
  using specfun::digamma;
  using specfun::trigamma;
  const double tg_ab = trigamma(a + b);
  const double psi_gap = digamma(a) - digamma(a + b);

  InfoMatrix info;
  info.n_scale = n_scale;
  Eigen::Matrix4d& K = info.unit;

  const double t01110 = T(0, 1, 1, 1, 0);
  const double t11110 = T(1, 1, 1, 1, 0);

  K(0, 0) = trigamma(a) - tg_ab;
  K(0, 1) = -tg_ab;
  K(0, 2) = alpha / lambda * t01110;
  K(0, 3) = -psi_gap / alpha;
  K(1, 1) = trigamma(b) - tg_ab;
  K(1, 2) = -alpha / lambda * t11110;
  if (std::fabs(b - 1.0) > 1e-3) {
    K(1, 3) = (a * psi_gap + 1.0) / (alpha * (b - 1.0));
  } else {
    K(1, 3) = T(1, 0, 0, 0, 1) / alpha;
    info.fallback_entries.emplace_back("b,alpha");
  }

  double kll = 1.0 + (alpha * a - 1.0) * (T(0, 2, 2, 2, 0) + T(0, 1, 1, 2, 0));
  double kla = a * t01110;
  double kaa = 1.0;
  if (b != 1.0) {
    kll += alpha * (b - 1.0) *
           (alpha * T(2, 2, 2, 2, 0) + (alpha - 1.0) * T(1, 2, 2, 2, 0) - T(1, 1, 1, 2, 0));
    kla -= (b - 1.0) * (t11110 + T(2, 1, 1, 1, 1) + T(1, 1, 1, 1, 1));
    kaa += (b - 1.0) * (T(2, 0, 0, 0, 2) + T(1, 0, 0, 0, 2));
  }
  K(2, 2) = kll / (lambda * lambda);
  K(2, 3) = kla / lambda;
  K(3, 3) = kaa / (alpha * alpha);

  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < r; ++c) K(r, c) = K(c, r);
  }
  return info;
}

}  // namespace bge::inference
