#include "bge/order_stats.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include "bge/errors.hpp"
#include "bge/quadrature.hpp"
#include "bge/specfun.hpp"

namespace bge::order_stats {
namespace {

using Poly = std::vector<double>;

Poly multiply(const Poly& x, const Poly& y) {
  Poly out(x.size() + y.size() - 1, 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0) continue;
    for (std::size_t j = 0; j < y.size(); ++j) out[i + j] += x[i] * y[j];
  }
  return out;
}

Poly power(const Poly& base, std::size_t k) {
  Poly out{1.0};
  for (std::size_t j = 0; j < k; ++j) out = multiply(out, base);
  return out;
}

double log_binomial(std::size_t n, std::size_t k) {
  return specfun::log_gamma(static_cast<double>(n) + 1.0) -
         specfun::log_gamma(static_cast<double>(k) + 1.0) -
         specfun::log_gamma(static_cast<double>(n - k) + 1.0);
}

// Coefficients of F^{k+i-1} expanded in powers of y, grouped by total degree.
struct Expansion {
  std::vector<Poly> by_k;  // index k = 0..n-i
  std::size_t max_degree = 0;
};

Expansion build_expansion(const BgeParams& theta, const OrderStatIndex& idx,
                          const MixtureTermBudget& budget, const series::SeriesControl& ctl,
                          ProductBound bound) {
  if (budget.per_index_cap < 1 || budget.total_term_cap < 1) {
    throw std::invalid_argument("MixtureTermBudget: caps must be >= 1");
  }
  const bool finite = series::integer_branch(theta.b(), ctl);
  const double b = finite ? std::round(theta.b()) : theta.b();
  const std::size_t degree =
      finite ? static_cast<std::size_t>(b) - 1 : budget.per_index_cap;
  Poly p(degree + 1);
  Poly unweighted(degree + 1, 1.0);
  double q = 1.0;
  for (std::size_t m = 0; m <= degree; ++m) {
    if (m > 0) q *= (static_cast<double>(m) - b) / static_cast<double>(m);
    p[m] = q / (theta.a() + static_cast<double>(m));
  }
  Expansion e;
  const std::size_t i = idx.i();
  for (std::size_t k = 0; k <= idx.n() - i; ++k) {
    Poly poly = (bound == ProductBound::k_plus_i_minus_1)
                    ? power(p, k + i - 1)
                    : multiply(power(p, k), power(unweighted, i - 1));
    e.max_degree = std::max(e.max_degree, poly.size() - 1);
    e.by_k.push_back(std::move(poly));
  }
  return e;
}

double component_shape(const BgeParams& theta, ComponentShape shape, std::size_t k,
                       std::size_t i, std::size_t m) {
  const double a = theta.a();
  const double md = static_cast<double>(m);
  const double ki = static_cast<double>(k + i);
  const double i1 = static_cast<double>(i + 1);
  switch (shape) {
    case ComponentShape::derived:
      return a * ki + md;
    case ComponentShape::printed:
      return theta.alpha() * (a * i1 + md);
    case ComponentShape::printed_without_alpha:
      return a * i1 + md;
    case ComponentShape::alpha_times_derived:
      return theta.alpha() * (a * ki + md);
  }
  return a * ki + md;
}

// Σ_k Σ_M w_{k,M} h(A_{k,M}) by degree shell. The infinite (real b) sum stops
// after two consecutive shells below term_tol; the finite one is summed in full
// because alternating shells can cancel.
series::SeriesResult sum_mixture(const BgeParams& theta, const OrderStatIndex& idx,
                                 const MixtureTermBudget& budget, const series::SeriesControl& ctl,
                                 const MixtureReading& reading,
                                 const std::function<double(const BgeParams&)>& h) {
  const Expansion e = build_expansion(theta, idx, budget, ctl, reading.bound);
  const std::size_t i = idx.i();
  const std::size_t n = idx.n();
  const double b = theta.b();
  const double log_bab = specfun::log_beta(theta.a(), b);
  const double log_norm =
      specfun::log_beta(static_cast<double>(i), static_cast<double>(n - i + 1));

  const bool finite = series::integer_branch(b, ctl);
  series::SeriesResult r;
  int quiet_shells = 0;
  for (std::size_t m = 0; m <= e.max_degree; ++m) {
    double shell = 0.0;
    for (std::size_t k = 0; k < e.by_k.size(); ++k) {
      const Poly& poly = e.by_k[k];
      if (m >= poly.size() || poly[m] == 0.0) continue;
      if (r.terms >= budget.total_term_cap) {
        throw ConvergenceError("order statistic mixture: total_term_cap exhausted", r.value,
                               r.terms, std::fabs(shell));
      }
      const double shape = component_shape(theta, reading.shape, k, i, m);
      const double log_w = log_binomial(n - i, k) + std::log(std::fabs(poly[m])) +
                           specfun::log_beta(shape, b) -
                           static_cast<double>(k + i) * log_bab - log_norm;
      const double sign = ((k % 2 == 0) ? 1.0 : -1.0) * (poly[m] < 0.0 ? -1.0 : 1.0);
      shell += sign * std::exp(log_w) * h(BgeParams(shape, b, theta.lambda(), theta.alpha()));
      ++r.terms;
    }
    r.value += shell;
    r.error_bound = std::fabs(shell);
    quiet_shells = (std::fabs(shell) < ctl.term_tol) ? quiet_shells + 1 : 0;
    if (!finite && m >= 1 && quiet_shells >= 2) break;
  }
  return r;
}

}  // namespace

OrderStatIndex::OrderStatIndex(std::size_t i, std::size_t n) : i_(i), n_(n) {
  if (i < 1 || i > n) throw std::invalid_argument("OrderStatIndex: 1 <= i <= n required");
}

std::string to_string(ComponentShape shape) {
  switch (shape) {
    case ComponentShape::derived:
      return "a(k+i)+M";
    case ComponentShape::printed:
      return "alpha*(a(i+1)+M)";
    case ComponentShape::printed_without_alpha:
      return "a(i+1)+M";
    case ComponentShape::alpha_times_derived:
      return "alpha*(a(k+i)+M)";
  }
  return "?";
}

std::string to_string(ProductBound bound) {
  return bound == ProductBound::k_plus_i_minus_1 ? "k+i-1" : "k (literal k+j-1 at j=1)";
}

double pdf_direct(const BgeParams& theta, const OrderStatIndex& idx, double x) {
  if (std::isnan(x) || x <= 0.0) throw std::domain_error("order statistic pdf: x must be > 0");
  const BgeDistribution dist(theta);
  const GePower gp = ge_power(theta.lambda(), theta.alpha(), x);
  const specfun::IncBeta ib = specfun::inc_beta(gp.y, gp.one_minus_y, theta.a(), theta.b());
  const double i = static_cast<double>(idx.i());
  const double n = static_cast<double>(idx.n());
  double lp = dist.log_pdf(x) - specfun::log_beta(i, n - i + 1.0);
  if (idx.i() > 1) lp += (i - 1.0) * ib.log_lower;
  if (idx.i() < idx.n()) lp += (n - i) * dist.log_survival(x);
  return std::exp(lp);
}

series::SeriesResult pdf_mixture(const BgeParams& theta, const OrderStatIndex& idx, double x,
                                 const MixtureTermBudget& budget, const series::SeriesControl& ctl,
                                 const MixtureReading& reading) {
  if (std::isnan(x) || x <= 0.0) throw std::domain_error("order statistic pdf: x must be > 0");
  return sum_mixture(theta, idx, budget, ctl, reading,
                     [x](const BgeParams& c) { return BgeDistribution(c).pdf(x); });
}

double moment(const BgeParams& theta, const OrderStatIndex& idx, int r, MomentMethod method,
              const MixtureTermBudget& budget, const series::SeriesControl& ctl) {
  if (r < 1 || r > 4) throw std::domain_error("order statistic moment: r must be in 1..4");
  if (method == MomentMethod::mixture) {
    return sum_mixture(theta, idx, budget, ctl, {},
                       [&](const BgeParams& c) { return series::raw_moment(c, r, ctl).value; })
        .value;
  }
  auto integrand = [&](double x) {
    if (!(x > 0.0)) return 0.0;
    return std::pow(x, r) * pdf_direct(theta, idx, x);
  };
  quadrature::Result q = quadrature::tanh_sinh_half_line(integrand, 0.0, 1e-14, 1e-12, 10);
  if (!q.converged) q = quadrature::gauss_kronrod_half_line(integrand, 0.0, 1e-14, 1e-12);
  if (!q.converged) {
    throw ConvergenceError("order statistic moment: quadrature did not converge", q.value,
                           q.evaluations, q.error);
  }
  return q.value;
}

series::SeriesResult mgf(const BgeParams& theta, const OrderStatIndex& idx, double t,
                         const MixtureTermBudget& budget, const series::SeriesControl& ctl) {
  if (std::isnan(t) || t >= series::mgf_domain_limit(theta)) {
    throw std::domain_error("order statistic mgf: t must be below min(lambda, b * lambda)");
  }
  return sum_mixture(theta, idx, budget, ctl, {},
                     [&](const BgeParams& c) { return series::mgf(c, t, ctl).value; });
}

double mixture_weight_total(const BgeParams& theta, const OrderStatIndex& idx,
                            const MixtureTermBudget& budget, const series::SeriesControl& ctl,
                            const MixtureReading& reading) {
  return sum_mixture(theta, idx, budget, ctl, reading, [](const BgeParams&) { return 1.0; })
      .value;
}

std::vector<ReconciliationRow> reconcile(const BgeParams& theta, const OrderStatIndex& idx,
                                         std::span<const double> xs,
                                         const MixtureTermBudget& budget,
                                         const series::SeriesControl& ctl) {
  std::vector<ReconciliationRow> rows;
  for (ProductBound bound : {ProductBound::k_plus_i_minus_1, ProductBound::literal_k}) {
    for (ComponentShape shape :
         {ComponentShape::derived, ComponentShape::printed, ComponentShape::printed_without_alpha,
          ComponentShape::alpha_times_derived}) {
      const MixtureReading reading{shape, bound};
      double worst = 0.0;
      for (double x : xs) {
        const double direct = pdf_direct(theta, idx, x);
        const double mix = pdf_mixture(theta, idx, x, budget, ctl, reading).value;
        const double rel = std::fabs(mix - direct) / std::max(std::fabs(direct), 1e-300);
        worst = std::isfinite(rel) ? std::max(worst, rel) : HUGE_VAL;
      }
      rows.push_back({reading, worst, mixture_weight_total(theta, idx, budget, ctl, reading)});
    }
  }
  return rows;
}

}  // namespace bge::order_stats
