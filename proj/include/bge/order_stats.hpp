#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "bge/distribution.hpp"
#include "bge/series.hpp"

namespace bge::order_stats {

/// Rank i of a sample of size n, 1 <= i <= n.
class OrderStatIndex {
 public:
  OrderStatIndex(std::size_t i, std::size_t n);

  std::size_t i() const noexcept { return i_; }
  std::size_t n() const noexcept { return n_; }

 private:
  std::size_t i_;
  std::size_t n_;
};

/// Truncation of the multi-index sums of the real-b mixture.
struct MixtureTermBudget {
  std::size_t per_index_cap = 25;
  std::size_t total_term_cap = 200000;
};

/// First shape parameter of the component BGE density for term (k, M),
/// M = m_1 + ... + m_K.
enum class ComponentShape {
  derived,                // a(k + i) + M
  printed,                // α{a(i + 1) + M}
  printed_without_alpha,  // a(i + 1) + M
  alpha_times_derived,    // α{a(k + i) + M}
};

/// Number of weighted factors in the product over m_j.
enum class ProductBound {
  k_plus_i_minus_1,  // all K = k + i - 1 indices weighted
  literal_k,         // upper index k + j - 1 read at j = 1; remaining indices unweighted
};

struct MixtureReading {
  ComponentShape shape = ComponentShape::derived;
  ProductBound bound = ProductBound::k_plus_i_minus_1;
};

std::string to_string(ComponentShape shape);
std::string to_string(ProductBound bound);

/// f_{i:n}(x) = f(x) F(x)^{i-1} {1 - F(x)}^{n-i} / B(i, n - i + 1).
double pdf_direct(const BgeParams& theta, const OrderStatIndex& idx, double x);

/// Mixture of BGE densities; `terms` counts component evaluations and
/// `error_bound` is the magnitude of the last degree shell summed.
series::SeriesResult pdf_mixture(const BgeParams& theta, const OrderStatIndex& idx, double x,
                                 const MixtureTermBudget& budget = {},
                                 const series::SeriesControl& ctl = {},
                                 const MixtureReading& reading = {});

enum class MomentMethod { mixture, quadrature };

double moment(const BgeParams& theta, const OrderStatIndex& idx, int r,
              MomentMethod method = MomentMethod::quadrature,
              const MixtureTermBudget& budget = {}, const series::SeriesControl& ctl = {});

/// δ-weighted sum of component mgfs; t below min(λ, bλ).
series::SeriesResult mgf(const BgeParams& theta, const OrderStatIndex& idx, double t,
                         const MixtureTermBudget& budget = {},
                         const series::SeriesControl& ctl = {});

/// Sum of all mixture weights (1 for a correct reading).
double mixture_weight_total(const BgeParams& theta, const OrderStatIndex& idx,
                            const MixtureTermBudget& budget = {},
                            const series::SeriesControl& ctl = {},
                            const MixtureReading& reading = {});

struct ReconciliationRow {
  MixtureReading reading;
  double max_relative_error;
  double weight_total;
};

/// Compare every mixture reading against the direct density at the given
/// points.
std::vector<ReconciliationRow> reconcile(const BgeParams& theta, const OrderStatIndex& idx,
                                         std::span<const double> xs,
                                         const MixtureTermBudget& budget = {},
                                         const series::SeriesControl& ctl = {});

}  // namespace bge::order_stats
