#pragma once

#include <cstddef>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace bge {

/// θ = (a, b, λ, α), every component strictly positive and finite.
class BgeParams {
 public:
  BgeParams(double a, double b, double lambda, double alpha);

  static BgeParams exponential(double lambda) { return {1.0, 1.0, lambda, 1.0}; }
  static BgeParams generalized_exponential(double lambda, double alpha) {
    return {1.0, 1.0, lambda, alpha};
  }
  static BgeParams beta_exponential(double a, double b, double lambda) {
    return {a, b, lambda, 1.0};
  }
  static BgeParams double_generalized_exponential(double b, double lambda, double alpha) {
    return {1.0, b, lambda, alpha};
  }

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double lambda() const noexcept { return lambda_; }
  double alpha() const noexcept { return alpha_; }

  bool is_ge() const noexcept { return a_ == 1.0 && b_ == 1.0; }
  bool is_be() const noexcept { return alpha_ == 1.0; }
  bool is_dge() const noexcept { return a_ == 1.0; }
  bool is_exponential() const noexcept { return is_ge() && alpha_ == 1.0; }

  bool operator==(const BgeParams&) const = default;

 private:
  double a_;
  double b_;
  double lambda_;
  double alpha_;
};

/// A validated set of strictly positive observations.
class Sample {
 public:
  explicit Sample(std::vector<double> values, std::string label = {});

  std::span<const double> values() const noexcept { return values_; }
  const std::string& label() const noexcept { return label_; }
  std::size_t size() const noexcept { return values_.size(); }
  double mean() const;

 private:
  std::vector<double> values_;
  std::string label_;
};

/// Caller-owned random stream; the library never keeps a generator of its own.
using RandomStream = std::mt19937_64;

/// Limit of the density as x -> 0+.
enum class OriginBehavior { zero, finite, unbounded };

/// log(1 - e^{-λx}), log y and 1 - y with y = (1 - e^{-λx})^α, all without
/// cancellation. x must be > 0.
struct GePower {
  double log_base;      // log(1 - e^{-λx})
  double log_y;         // α log(1 - e^{-λx})
  double y;             // (1 - e^{-λx})^α
  double one_minus_y;   // 1 - (1 - e^{-λx})^α
  double log_one_minus_y;
};
GePower ge_power(double lambda, double alpha, double x);

/// The beta generalized exponential distribution. Immutable once built.
class BgeDistribution {
 public:
  explicit BgeDistribution(const BgeParams& params);

  const BgeParams& params() const noexcept { return params_; }

  /// Density; x < 0 is a domain error and x == 0 returns the limit from the
  /// right (+inf when the density is unbounded at the origin).
  double pdf(double x) const;
  double log_pdf(double x) const;

  double cdf(double x) const;
  /// 1 - cdf, evaluated from the complementary incomplete beta ratio.
  double survival(double x) const;
  double log_survival(double x) const;

  /// pdf / survival. Throws std::overflow_error if the survival function is
  /// zero to working precision.
  double hazard(double x) const;

  /// Inverse cdf, 0 < p < 1.
  double quantile(double p) const;

  /// One draw: X = -log(1 - V^{1/α}) / λ with V ~ Beta(a, b).
  double draw(RandomStream& rng) const;
  Sample sample(std::size_t n, RandomStream& rng) const;

  OriginBehavior origin_behavior() const noexcept;

 private:
  BgeParams params_;
  double log_beta_;
};

}  // namespace bge
