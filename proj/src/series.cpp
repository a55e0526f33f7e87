#include "bge/series.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

#include "bge/errors.hpp"
#include "bge/quadrature.hpp"
#include "bge/specfun.hpp"

namespace bge::series {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// A weighted series Σ_j q_j g(j). g must be smooth and finite for real
// indices u >= 0; `ratio`, when below 1, bounds |t_{j+1} / t_j| for j >= b.
struct TermModel {
  double b;
  std::function<double(double)> g;
  double ratio = 1.0;
};

SeriesResult sum_finite(const TermModel& m, long nb) {
  SeriesResult r;
  double q = 1.0;
  double abs_sum = 0.0;
  for (long j = 0; j < nb; ++j) {
    if (j > 0) q *= static_cast<double>(j - nb) / static_cast<double>(j);
    const double t = q * m.g(static_cast<double>(j));
    r.value += t;
    abs_sum += std::fabs(t);
  }
  r.terms = static_cast<std::size_t>(nb);
  r.error_bound = 4.0 * kEps * abs_sum;
  return r;
}

// Direct summation certified by the geometric ratio bound. Returns false if
// the bound is not reached within `limit` terms.
bool sum_geometric(const TermModel& m, const SeriesControl& ctl, std::size_t limit,
                   SeriesResult& out) {
  double q = 1.0;
  double sum = 0.0;
  double abs_sum = 0.0;
  int small_run = 0;
  for (std::size_t j = 0; j < limit; ++j) {
    if (j > 0) q *= (static_cast<double>(j) - m.b) / static_cast<double>(j);
    const double t = q * m.g(static_cast<double>(j));
    sum += t;
    abs_sum += std::fabs(t);
    small_run = (std::fabs(t) < ctl.term_tol) ? small_run + 1 : 0;
    if (static_cast<double>(j) >= m.b + 1.0 && small_run >= 3) {
      const double tail = std::fabs(t) * m.ratio / (1.0 - m.ratio);
      if (tail < ctl.term_tol) {
        out.value = sum;
        out.error_bound = tail + 4.0 * kEps * abs_sum;
        out.terms = j + 1;
        out.tail_closed = false;
        return true;
      }
    }
  }
  return false;
}

// Direct terms below N, Euler-Maclaurin closure of the tail from N on, with
// N doubled until two successive estimates agree to term_tol.
SeriesResult sum_euler_maclaurin(const TermModel& m, const SeriesControl& ctl) {
  const specfun::SignedLogGamma g1mb = specfun::signed_log_gamma(1.0 - m.b);
  // q(u) = Γ(u + 1 - b) / (Γ(1 - b) Γ(u + 1)), valid for u > b - 1.
  auto weight = [&](double u) {
    return g1mb.sign * std::exp(specfun::log_gamma_ratio(u + 1.0, -m.b) - g1mb.log_abs);
  };
  auto term = [&](double u) { return weight(u) * m.g(u); };

  auto tail_from = [&](double n, double& quad_err) {
    auto integrand = [&](double s, double) {
      if (s <= 0.0) return 0.0;
      const double u = n / s;
      if (!(u < 1e300)) return 0.0;
      return term(u) * n / (s * s);
    };
    const quadrature::Result integral =
        quadrature::tanh_sinh_unit(integrand, 0.01 * ctl.term_tol, 1e-14, 10);
    quad_err = integral.converged ? 0.0 : integral.error;
    const double f0 = term(n);
    const double fp1 = term(n + 1.0);
    const double fm1 = term(n - 1.0);
    const double fp2 = term(n + 2.0);
    const double fm2 = term(n - 2.0);
    const double d1 = (-fp2 + 8.0 * fp1 - 8.0 * fm1 + fm2) / 12.0;
    const double d3 = (fp2 - 2.0 * fp1 + 2.0 * fm1 - fm2) / 2.0;
    return integral.value + 0.5 * f0 - d1 / 12.0 + d3 / 720.0;
  };

  std::size_t n = std::max<std::size_t>(64, static_cast<std::size_t>(std::ceil(m.b)) + 32);
  double q = 1.0;
  double direct = 0.0;
  double abs_sum = 0.0;
  std::size_t next = 0;
  auto extend_to = [&](std::size_t limit) {
    for (; next < limit; ++next) {
      if (next > 0) q *= (static_cast<double>(next) - m.b) / static_cast<double>(next);
      const double t = q * m.g(static_cast<double>(next));
      direct += t;
      abs_sum += std::fabs(t);
    }
  };

  double previous = std::numeric_limits<double>::quiet_NaN();
  for (;;) {
    extend_to(n);
    double quad_err = 0.0;
    const double total = direct + tail_from(static_cast<double>(n), quad_err);
    const double roundoff = 4.0 * kEps * abs_sum;
    if (!std::isnan(previous)) {
      const double err = std::fabs(total - previous) + quad_err;
      if (err <= ctl.term_tol + roundoff) {
        return {total, err + roundoff, n, true};
      }
    }
    if (2 * n > ctl.max_terms) {
      throw ConvergenceError("series: tail estimate did not settle within max_terms", total, n,
                             std::isnan(previous) ? std::fabs(total) : std::fabs(total - previous));
    }
    previous = total;
    n *= 2;
  }
}

SeriesResult sum_series(const TermModel& m, const SeriesControl& ctl) {
  if (ctl.max_terms < 1 || !(ctl.term_tol > 0.0)) {
    throw std::invalid_argument("SeriesControl: max_terms >= 1 and term_tol > 0 required");
  }
  if (integer_branch(m.b, ctl)) return sum_finite(m, std::lround(m.b));
  if (m.ratio < 1.0) {
    const std::size_t limit = std::min<std::size_t>(ctl.max_terms, 4096);
    SeriesResult r;
    if (sum_geometric(m, ctl, limit, r)) return r;
  }
  return sum_euler_maclaurin(m, ctl);
}

void require_x(double x, const char* what) {
  if (std::isnan(x) || x < 0.0) throw std::domain_error(std::string(what) + ": x must be >= 0");
}

}  // namespace

bool integer_branch(double b, const SeriesControl& ctl) {
  const double rb = std::round(b);
  return rb >= 1.0 && std::fabs(b - rb) <= ctl.integer_b_eps;
}

double expansion_weight(double b, std::size_t j) {
  double q = 1.0;
  for (std::size_t k = 1; k <= j; ++k) q *= (static_cast<double>(k) - b) / static_cast<double>(k);
  return q;
}

double expansion_weight_reflection(double b, std::size_t j) {
  const double jd = static_cast<double>(j);
  const double bj = b - jd;
  if (bj <= 0.0 && bj == std::floor(bj)) return 0.0;  // 1/Γ at a pole
  const specfun::SignedLogGamma gb = specfun::signed_log_gamma(b);
  const specfun::SignedLogGamma gbj = specfun::signed_log_gamma(bj);
  const double sign = ((j % 2 == 0) ? 1.0 : -1.0) * gb.sign * gbj.sign;
  return sign * std::exp(gb.log_abs - gbj.log_abs - specfun::log_gamma(jd + 1.0));
}

GeMomentTerms ge_moment_terms(double beta) {
  const double c = specfun::digamma(beta + 1.0) - specfun::digamma(1.0);
  const double k2 = specfun::trigamma(1.0) - specfun::trigamma(beta + 1.0);
  const double k3 = specfun::tetragamma(beta + 1.0) - specfun::tetragamma(1.0);
  const double k4 = specfun::pentagamma(1.0) - specfun::pentagamma(beta + 1.0);
  const double c2 = c * c;
  return {
      c,
      c2 + k2,
      -(c * (c2 + 3.0 * k2) + k3),
      c2 * c2 + 6.0 * c2 * k2 + 3.0 * k2 * k2 + 4.0 * c * k3 + k4,
  };
}

SeriesResult cdf_series(const BgeParams& theta, double x, const SeriesControl& ctl) {
  require_x(x, "cdf_series");
  if (x == 0.0) return {};
  const GePower gp = ge_power(theta.lambda(), theta.alpha(), x);
  const double a = theta.a();
  const double log_b = specfun::log_beta(a, theta.b());
  TermModel m{theta.b(),
              [&](double u) { return std::exp((a + u) * gp.log_y - log_b) / (a + u); },
              gp.y};
  return sum_series(m, ctl);
}

double closed_form_cdf_integer(const BgeParams& theta, double x, IntegerParameter which) {
  require_x(x, "closed_form_cdf_integer");
  const double a = theta.a();
  const double b = theta.b();
  const double selected = (which == IntegerParameter::a) ? a : b;
  const double rounded = std::round(selected);
  if (rounded < 1.0 || std::fabs(selected - rounded) > 1e-9) {
    throw std::domain_error("closed_form_cdf_integer: selected parameter is not a positive integer");
  }
  if (x == 0.0) return 0.0;
  const GePower gp = ge_power(theta.lambda(), theta.alpha(), x);
  const long n = std::lround(rounded);
  if (which == IntegerParameter::b) {
    // I_y(a, n) = y^a Σ_{k<n} (a)_k / k! (1 - y)^k
    double t = 1.0;
    double s = 1.0;
    for (long k = 1; k < n; ++k) {
      t *= (a + static_cast<double>(k - 1)) / static_cast<double>(k) * gp.one_minus_y;
      s += t;
    }
    return std::exp(a * gp.log_y) * s;
  }
  // I_y(n, b) = 1 - (1 - y)^b Σ_{k<n} (b)_k / k! y^k
  double t = 1.0;
  double s = 1.0;
  for (long k = 1; k < n; ++k) {
    t *= (b + static_cast<double>(k - 1)) / static_cast<double>(k) * gp.y;
    s += t;
  }
  return -std::expm1(b * gp.log_one_minus_y + std::log(s));
}

SeriesResult pdf_mixture(const BgeParams& theta, double x, const SeriesControl& ctl) {
  if (std::isnan(x) || x <= 0.0) throw std::domain_error("pdf_mixture: x must be > 0");
  const GePower gp = ge_power(theta.lambda(), theta.alpha(), x);
  const double a = theta.a();
  const double alpha = theta.alpha();
  const double lambda = theta.lambda();
  const double log_front =
      std::log(alpha * lambda) - lambda * x - specfun::log_beta(a, theta.b());
  // q_j-weighted GE(α(a + j)) densities reduce to αλ e^{-λx} z^{α(a+j) - 1} / B(a, b).
  TermModel m{theta.b(),
              [&](double u) { return std::exp(log_front + (alpha * (a + u) - 1.0) * gp.log_base); },
              gp.y};
  return sum_series(m, ctl);
}

double mgf_domain_limit(const BgeParams& theta) {
  return theta.lambda() * std::min(1.0, theta.b());
}

SeriesResult mgf(const BgeParams& theta, double t, const SeriesControl& ctl) {
  if (std::isnan(t) || t >= mgf_domain_limit(theta)) {
    throw std::domain_error("mgf: t must be below min(lambda, b * lambda)");
  }
  const double a = theta.a();
  const double alpha = theta.alpha();
  const double p = 1.0 - t / theta.lambda();
  const double log_front = std::log(alpha) - specfun::log_beta(a, theta.b());
  TermModel m{theta.b(),
              [&](double u) { return std::exp(log_front + specfun::log_beta(p, alpha * (a + u))); }};
  return sum_series(m, ctl);
}

SeriesResult raw_moment(const BgeParams& theta, int r, const SeriesControl& ctl) {
  if (r < 1 || r > 4) throw std::domain_error("raw_moment: r must be in 1..4");
  const double a = theta.a();
  const double alpha = theta.alpha();
  const double front =
      std::exp(-specfun::log_beta(a, theta.b()) - r * std::log(theta.lambda()));
  auto block = [r](const GeMomentTerms& g) {
    switch (r) {
      case 1:
        return g.c;
      case 2:
        return g.d;
      case 3:
        return -g.e;
      default:
        return g.f;
    }
  };
  TermModel m{theta.b(),
              [&](double u) { return front * block(ge_moment_terms(alpha * (a + u))) / (a + u); }};
  return sum_series(m, ctl);
}

MomentSet moment_set_from_raw(double mu1, double mu2, double mu3, double mu4) {
  const double m1sq = mu1 * mu1;
  const double var = mu2 - m1sq;
  const double c3 = mu3 - 3.0 * mu1 * mu2 + 2.0 * m1sq * mu1;
  const double c4 = mu4 - 4.0 * mu1 * mu3 + 6.0 * m1sq * mu2 - 3.0 * m1sq * m1sq;
  return {mu1, mu2, mu3, mu4, var, c3 / std::pow(var, 1.5), c4 / (var * var)};
}

MomentSet moments(const BgeParams& theta, const SeriesControl& ctl) {
  const double mu1 = raw_moment(theta, 1, ctl).value;
  const double mu2 = raw_moment(theta, 2, ctl).value;
  const double mu3 = raw_moment(theta, 3, ctl).value;
  const double mu4 = raw_moment(theta, 4, ctl).value;
  MomentSet s = moment_set_from_raw(mu1, mu2, mu3, mu4);
  if (!(s.variance > 0.0)) {
    throw ConvergenceError("moments: variance is not positive; series accuracy insufficient",
                           s.variance, 0, std::fabs(s.variance));
  }
  return s;
}

ShapeMeasures skewness_kurtosis(const BgeParams& theta, const SeriesControl& ctl) {
  const MomentSet s = moments(theta, ctl);
  return {s.skewness, s.kurtosis};
}

double shannon_entropy(const BgeParams& theta, const SeriesControl& ctl) {
  const double a = theta.a();
  const double b = theta.b();
  const double alpha = theta.alpha();
  const double lambda = theta.lambda();
  const double mu1 = raw_moment(theta, 1, ctl).value;
  const double psi_ab = specfun::digamma(a + b);
  double h = -std::log(alpha * lambda) + specfun::log_beta(a, b) + lambda * mu1 +
             (1.0 / alpha - a) * (specfun::digamma(a) - psi_ab);
  if (b != 1.0) h -= (b - 1.0) * (specfun::digamma(b) - psi_ab);
  return h;
}

}  // namespace bge::series
