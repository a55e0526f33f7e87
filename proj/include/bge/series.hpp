#pragma once

#include <cstddef>

#include "bge/distribution.hpp"

// Expansions of the BGE cdf, density, mgf and moments as weighted sums over
// GE components. Every real-b sum carries the weights
//   q_j = (-1)^j Γ(b) / (Γ(b - j) j!),
// which terminate at j = b - 1 when b is a positive integer.

namespace bge::series {

struct SeriesControl {
  std::size_t max_terms = 100000;
  double term_tol = 1e-12;
  double integer_b_eps = 1e-9;
};

/// True when the finite (integer b) branch applies.
bool integer_branch(double b, const SeriesControl& ctl);

struct SeriesResult {
  double value = 0.0;
  double error_bound = 0.0;
  std::size_t terms = 0;
  /// The infinite tail was closed analytically rather than bounded by a
  /// geometric ratio.
  bool tail_closed = false;
};

/// q_j by the product recurrence q_j = q_{j-1} (j - b) / j.
double expansion_weight(double b, std::size_t j);

/// The same weight through signed log-gamma values of Γ(b) and Γ(b - j).
double expansion_weight_reflection(double b, std::size_t j);

/// GE moment building blocks for the component GE(λ = 1, β) with β = α(a + j):
/// c = E[Y], d = E[Y²], e = -E[Y³], f = E[Y⁴], Y = -log(1 - W), W ~ Beta(β, 1).
struct GeMomentTerms {
  double c;
  double d;
  double e;
  double f;
};
GeMomentTerms ge_moment_terms(double beta);

SeriesResult cdf_series(const BgeParams& theta, double x, const SeriesControl& ctl = {});

enum class IntegerParameter { a, b };

/// Finite-sum cdf when a (or b) is a positive integer.
double closed_form_cdf_integer(const BgeParams& theta, double x, IntegerParameter which);

SeriesResult pdf_mixture(const BgeParams& theta, double x, const SeriesControl& ctl = {});

/// Upper end of the mgf domain: M(t) is computed for t < min(λ, bλ).
double mgf_domain_limit(const BgeParams& theta);

SeriesResult mgf(const BgeParams& theta, double t, const SeriesControl& ctl = {});

/// μ'_r, r in 1..4.
SeriesResult raw_moment(const BgeParams& theta, int r, const SeriesControl& ctl = {});

struct MomentSet {
  double mu1;
  double mu2;
  double mu3;
  double mu4;
  double variance;
  double skewness;
  double kurtosis;
};

MomentSet moments(const BgeParams& theta, const SeriesControl& ctl = {});

/// Central moment ratios computed from raw moments.
MomentSet moment_set_from_raw(double mu1, double mu2, double mu3, double mu4);

struct ShapeMeasures {
  double skewness;
  double kurtosis;
};
ShapeMeasures skewness_kurtosis(const BgeParams& theta, const SeriesControl& ctl = {});

double shannon_entropy(const BgeParams& theta, const SeriesControl& ctl = {});

}  // namespace bge::series
