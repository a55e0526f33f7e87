#pragma once

// Special-function kernel: log-gamma, beta, the regularized incomplete beta
// ratio and its inverse, polygamma functions, the regularized upper incomplete
// gamma and a few derived quantiles. All functions are pure.

namespace bge::specfun {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kEulerGamma = 0.577215664901532860606512090082402431;
inline constexpr double kLnSqrt2Pi = 0.918938533204672741780329736405617640;

/// ln Γ(x) for x > 0.
double log_gamma(double x);

/// ln|Γ(x)| with the sign of Γ(x), for any real x that is not a pole.
struct SignedLogGamma {
  double log_abs;
  int sign;
};
SignedLogGamma signed_log_gamma(double x);

/// ln Γ(x + d) - ln Γ(x) without cancellation for large x. Requires x > 0 and
/// x + d > 0.
double log_gamma_ratio(double x, double d);

/// Stirling remainder ln Γ(x) - [(x - 1/2) ln x - x + ln √(2π)], x >= 10.
double stirling_correction(double x);

double log_beta(double a, double b);
double beta(double a, double b);

/// I_y(a, b) together with its complement 1 - I_y(a, b) and their logs. The
/// side that is not obtained by subtraction carries full relative accuracy.
struct IncBeta {
  double lower;
  double upper;
  double log_lower;
  double log_upper;
};

/// Evaluate I_y(a, b) given both y and 1 - y. Callers that know 1 - y more
/// accurately than the subtraction (e.g. from expm1) should use this overload.
IncBeta inc_beta(double y, double one_minus_y, double a, double b);

/// Regularized incomplete beta ratio I_y(a, b).
double inc_beta_ratio(double y, double a, double b);

/// Root y of I_y(a, b) = p, returned together with 1 - y.
struct BetaQuantile {
  double y;
  double one_minus_y;
};

/// Solve I_y(a, b) = p where q = 1 - p is supplied separately so that upper
/// tail probabilities keep their precision.
BetaQuantile inc_beta_inverse(double p, double q, double a, double b);

double inc_beta_inverse(double p, double a, double b);

enum class PolygammaOrder : int {
  digamma = 0,
  trigamma = 1,
  tetragamma = 2,
  pentagamma = 3,
};

/// ψ⁽ᵏ⁾(x) for x > 0.
double polygamma(double x, PolygammaOrder order);

inline double digamma(double x) { return polygamma(x, PolygammaOrder::digamma); }
inline double trigamma(double x) { return polygamma(x, PolygammaOrder::trigamma); }
inline double tetragamma(double x) { return polygamma(x, PolygammaOrder::tetragamma); }
inline double pentagamma(double x) { return polygamma(x, PolygammaOrder::pentagamma); }

/// Regularized upper incomplete gamma Q(s, x) = Γ(s, x) / Γ(s).
double gamma_q(double s, double x);

/// Regularized lower incomplete gamma P(s, x).
double gamma_p(double s, double x);

/// Pr[χ²_dof > w].
double chi_square_survival(double w, int dof);

/// Standard normal quantile Φ⁻¹(p), 0 < p < 1.
double normal_quantile(double p);

/// Standard normal cdf.
double normal_cdf(double z);

/// log(1 - exp(z)) for z <= 0.
double log1mexp(double z);

}  // namespace bge::specfun
