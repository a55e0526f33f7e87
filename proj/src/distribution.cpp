#include "bge/distribution.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "bge/specfun.hpp"

namespace bge {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_parameter(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::invalid_argument(std::string("BgeParams: ") + name + " must be positive and finite");
  }
}

}  // namespace

BgeParams::BgeParams(double a, double b, double lambda, double alpha)
    : a_(a), b_(b), lambda_(lambda), alpha_(alpha) {
  check_parameter(a, "a");
  check_parameter(b, "b");
  check_parameter(lambda, "lambda");
  check_parameter(alpha, "alpha");
}

Sample::Sample(std::vector<double> values, std::string label)
    : values_(std::move(values)), label_(std::move(label)) {
  if (values_.empty()) throw std::invalid_argument("Sample: at least one observation is required");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!(values_[i] > 0.0) || !std::isfinite(values_[i])) {
      throw std::invalid_argument("Sample: observation " + std::to_string(i + 1) +
                                  " is not a positive finite number");
    }
  }
}

double Sample::mean() const {
  return std::accumulate(values_.begin(), values_.end(), 0.0) / static_cast<double>(values_.size());
}

GePower ge_power(double lambda, double alpha, double x) {
  if (!(x > 0.0)) throw std::domain_error("ge_power: x must be positive");
  GePower g{};
  const double eps = std::exp(-lambda * x);
  g.log_base = specfun::log1mexp(-lambda * x);
  g.log_y = alpha * g.log_base;
  g.y = std::exp(g.log_y);
  g.one_minus_y = -std::expm1(g.log_y);
  if (alpha * eps < 1e-10) {
    // 1 - y = α ε (1 + (1 - α) ε / 2 + ...) with ε = e^{-λx}
    g.log_one_minus_y = std::log(alpha) - lambda * x + 0.5 * (1.0 - alpha) * eps;
  } else {
    g.log_one_minus_y = specfun::log1mexp(g.log_y);
  }
  return g;
}

BgeDistribution::BgeDistribution(const BgeParams& params)
    : params_(params), log_beta_(specfun::log_beta(params.a(), params.b())) {}

OriginBehavior BgeDistribution::origin_behavior() const noexcept {
  const double power = params_.alpha() * params_.a();
  if (power > 1.0) return OriginBehavior::zero;
  if (power == 1.0) return OriginBehavior::finite;
  return OriginBehavior::unbounded;
}

double BgeDistribution::log_pdf(double x) const {
  if (std::isnan(x) || x < 0.0) throw std::domain_error("pdf: x must be >= 0");
  const double a = params_.a();
  const double b = params_.b();
  const double lambda = params_.lambda();
  const double alpha = params_.alpha();
  const double log_norm = std::log(alpha) + std::log(lambda) - log_beta_;
  if (x == 0.0) {
    switch (origin_behavior()) {
      case OriginBehavior::zero:
        return -kInf;
      case OriginBehavior::finite:
        return log_norm;
      case OriginBehavior::unbounded:
        return kInf;
    }
  }
  if (std::isinf(x)) return -kInf;
  const GePower g = ge_power(lambda, alpha, x);
  double lp = log_norm - lambda * x;
  if (alpha * a != 1.0) lp += (alpha * a - 1.0) * g.log_base;
  if (b != 1.0) lp += (b - 1.0) * g.log_one_minus_y;
  return lp;
}

double BgeDistribution::pdf(double x) const { return std::exp(log_pdf(x)); }

double BgeDistribution::cdf(double x) const {
  if (std::isnan(x)) throw std::domain_error("cdf: x is NaN");
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  const GePower g = ge_power(params_.lambda(), params_.alpha(), x);
  return specfun::inc_beta(g.y, g.one_minus_y, params_.a(), params_.b()).lower;
}

double BgeDistribution::survival(double x) const {
  if (std::isnan(x)) throw std::domain_error("survival: x is NaN");
  if (x <= 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  const GePower g = ge_power(params_.lambda(), params_.alpha(), x);
  return specfun::inc_beta(g.y, g.one_minus_y, params_.a(), params_.b()).upper;
}

double BgeDistribution::log_survival(double x) const {
  if (std::isnan(x)) throw std::domain_error("survival: x is NaN");
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return -kInf;
  const GePower g = ge_power(params_.lambda(), params_.alpha(), x);
  if (g.one_minus_y < 1e-280 && std::isfinite(g.log_one_minus_y)) {
    // Leading term of I_w(b, a) as w -> 0.
    return params_.b() * g.log_one_minus_y - std::log(params_.b()) - log_beta_;
  }
  return specfun::inc_beta(g.y, g.one_minus_y, params_.a(), params_.b()).log_upper;
}

double BgeDistribution::hazard(double x) const {
  if (std::isnan(x) || x < 0.0) throw std::domain_error("hazard: x must be >= 0");
  const double log_s = log_survival(x);
  if (std::isinf(log_s)) throw std::overflow_error("hazard: survival function underflows to zero");
  return std::exp(log_pdf(x) - log_s);
}

double BgeDistribution::quantile(double p) const {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("quantile: p must lie in (0, 1)");
  const specfun::BetaQuantile q =
      specfun::inc_beta_inverse(p, 1.0 - p, params_.a(), params_.b());
  if (q.y == 0.0) return 0.0;
  if (q.one_minus_y == 0.0) return kInf;
  const double log_y = (q.y < 0.5) ? std::log(q.y) : std::log1p(-q.one_minus_y);
  return -specfun::log1mexp(log_y / params_.alpha()) / params_.lambda();
}

namespace {

double transform_beta_draw(double g1, double g2, double alpha, double lambda) {
  const double s = g1 + g2;
  const double log_v = (g1 >= g2) ? std::log1p(-g2 / s) : std::log(g1 / s);
  return -specfun::log1mexp(log_v / alpha) / lambda;
}

}  // namespace

double BgeDistribution::draw(RandomStream& rng) const {
  std::gamma_distribution<double> ga(params_.a(), 1.0);
  std::gamma_distribution<double> gb(params_.b(), 1.0);
  for (;;) {
    const double g1 = ga(rng);
    const double g2 = gb(rng);
    const double x = transform_beta_draw(g1, g2, params_.alpha(), params_.lambda());
    if (x > 0.0 && std::isfinite(x)) return x;
  }
}

Sample BgeDistribution::sample(std::size_t n, RandomStream& rng) const {
  if (n == 0) throw std::invalid_argument("sample: n must be >= 1");
  std::gamma_distribution<double> ga(params_.a(), 1.0);
  std::gamma_distribution<double> gb(params_.b(), 1.0);
  std::vector<double> out;
  out.reserve(n);
  while (out.size() < n) {
    const double g1 = ga(rng);
    const double g2 = gb(rng);
    const double x = transform_beta_draw(g1, g2, params_.alpha(), params_.lambda());
    if (x > 0.0 && std::isfinite(x)) out.push_back(x);
  }
  return Sample(std::move(out), "simulated");
}

}  // namespace bge
