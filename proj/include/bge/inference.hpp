#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bge/distribution.hpp"

namespace bge::inference {

/// BGE and its nested sub-models. Fixed parameters are held at 1.
enum class Model { bge, be, ge, dge, exp };

std::string to_string(Model model);
/// Accepts the lower-case tags "bge", "be", "ge", "dge", "exp".
std::optional<Model> parse_model(std::string_view tag);

/// Free-parameter mask in (a, b, λ, α) order.
std::array<bool, 4> free_parameters(Model model);
int free_parameter_count(Model model);
bool is_nested(Model null_model, Model alt_model);

inline constexpr std::array<const char*, 4> kParameterNames = {"a", "b", "lambda", "alpha"};

struct ScoreVector {
  double d_a;
  double d_b;
  double d_lambda;
  double d_alpha;

  Eigen::Vector4d as_vector() const { return {d_a, d_b, d_lambda, d_alpha}; }
};

double log_likelihood(const BgeParams& theta, const Sample& data);

/// Analytic gradient of the total log-likelihood.
ScoreVector score(const BgeParams& theta, const Sample& data);

/// T_{i,j,k,l,m} = E[(1-V)^{-i} (1-V^{1/α})^j V^{i-k/α} log(1-V^{1/α})^l log(V)^m],
/// V ~ Beta(a, b). Throws std::domain_error when the expectation diverges.
double t_expectation(double a, double b, double alpha, int i, int j, int k, int l, int m);

/// True when T_{i,j,k,l,m} is finite at (a, b, α).
bool t_integrable(double a, double b, double alpha, int i, int j, int k, int l, int m);

struct InfoMatrix {
  Eigen::Matrix4d unit;
  std::size_t n_scale = 1;
  /// Entries not taken from the closed forms, e.g. "b,alpha".
  std::vector<std::string> fallback_entries;

  Eigen::Matrix4d total() const { return static_cast<double>(n_scale) * unit; }
};

/// Expected (Fisher) information per observation, scaled by n_scale.
InfoMatrix information_matrix(const BgeParams& theta, std::size_t n_scale = 1);

struct FitResult {
  Model model = Model::bge;
  BgeParams params{1.0, 1.0, 1.0, 1.0};
  double loglik = 0.0;
  /// ∞-norm of the score with respect to the log of each free parameter.
  double score_norm = 0.0;
  /// Inverse total information over the free parameters; zero rows and
  /// columns for fixed ones, NaN if the information is not positive definite.
  Eigen::Matrix4d covariance = Eigen::Matrix4d::Zero();
  bool converged = false;
  /// A free parameter ran off towards 0 or infinity.
  bool boundary = false;
  int iterations = 0;
  /// Ladder position of the winning start (0 = moment-matched GE start).
  int start_index = 0;
  std::string message;
};

struct FitOptions {
  std::optional<BgeParams> init;
  double gradient_tol = 1e-6;
  int max_iterations = 5000;
  /// Bounds on each free parameter; leaving them sets `boundary`.
  double lower_bound = 1e-8;
  double upper_bound = 1e8;
  bool compute_covariance = true;
};

FitResult fit_mle(const Sample& data, Model model, const FitOptions& options = {});

struct ConfidenceInterval {
  std::string parameter;
  double estimate;
  double standard_error;
  double lower;
  double upper;
};

/// θ̂ᵢ ± z_{γ/2} √(K_n⁻¹)ᵢᵢ for each free parameter. Throws std::domain_error
/// if the covariance is not positive definite.
std::vector<ConfidenceInterval> confidence_intervals(const FitResult& fit, double gamma);

struct LrTestResult {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
  Model null_model = Model::exp;
  Model alt_model = Model::bge;
  /// False when the alternative fit ended below the null fit by more than
  /// the optimizer tolerance.
  bool consistent = true;
  FitResult null_fit;
  FitResult alt_fit;
};

LrTestResult lr_test(const FitResult& null_fit, const FitResult& alt_fit);

/// Fits both models; the alternative is also started from the null estimate
/// and the better of the two alternative fits is kept.
LrTestResult lr_test(const Sample& data, Model null_model, Model alt_model,
                     const FitOptions& options = {});

}  // namespace bge::inference
