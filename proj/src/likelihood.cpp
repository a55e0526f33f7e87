#include <cmath>

#include "bge/inference.hpp"
#include "bge/specfun.hpp"

namespace bge::inference {

std::string to_string(Model model) {
  switch (model) {
    case Model::bge:
      return "bge";
    case Model::be:
      return "be";
    case Model::ge:
      return "ge";
    case Model::dge:
      return "dge";
    case Model::exp:
      return "exp";
  }
  return "bge";
}

std::optional<Model> parse_model(std::string_view tag) {
  if (tag == "bge") return Model::bge;
  if (tag == "be") return Model::be;
  if (tag == "ge") return Model::ge;
  if (tag == "dge") return Model::dge;
  if (tag == "exp") return Model::exp;
  return std::nullopt;
}

std::array<bool, 4> free_parameters(Model model) {
  switch (model) {
    case Model::bge:
      return {true, true, true, true};
    case Model::be:
      return {true, true, true, false};
    case Model::ge:
      return {false, false, true, true};
    case Model::dge:
      return {false, true, true, true};
    case Model::exp:
      return {false, false, true, false};
  }
  return {true, true, true, true};
}

int free_parameter_count(Model model) {
  int count = 0;
  for (bool f : free_parameters(model)) count += f ? 1 : 0;
  return count;
}

bool is_nested(Model null_model, Model alt_model) {
  const auto fn = free_parameters(null_model);
  const auto fa = free_parameters(alt_model);
  for (std::size_t k = 0; k < 4; ++k) {
    if (fn[k] && !fa[k]) return false;
  }
  return free_parameter_count(null_model) < free_parameter_count(alt_model);
}

double log_likelihood(const BgeParams& theta, const Sample& data) {
  const BgeDistribution dist(theta);
  double sum = 0.0;
  for (double y : data.values()) sum += dist.log_pdf(y);
  return sum;
}

ScoreVector score(const BgeParams& theta, const Sample& data) {
  const double a = theta.a();
  const double b = theta.b();
  const double lambda = theta.lambda();
  const double alpha = theta.alpha();
  const double n = static_cast<double>(data.size());
  const double psi_ab = specfun::digamma(a + b);

  ScoreVector s{n * (psi_ab - specfun::digamma(a)), n * (psi_ab - specfun::digamma(b)),
                n / lambda, n / alpha};
  for (double y : data.values()) {
    const GePower g = ge_power(lambda, alpha, y);
    const double ly = lambda * y;
    // e^{-λy} / (1 - e^{-λy})
    const double odds = std::exp(-ly - g.log_base);
    s.d_a += alpha * g.log_base;
    s.d_b += g.log_one_minus_y;
    s.d_lambda += -y + (alpha * a - 1.0) * y * odds;
    s.d_alpha += a * g.log_base;
    if (b != 1.0) {
      // G / (1 - G) with G = (1 - e^{-λy})^α
      const double log_ratio = g.log_y - g.log_one_minus_y;
      s.d_lambda -= (b - 1.0) * alpha * y * std::exp(log_ratio - ly - g.log_base);
      s.d_alpha += (b - 1.0) * std::exp(log_ratio + std::log(-g.log_base));
    }
  }
  return s;
}

}  // namespace bge::inference
