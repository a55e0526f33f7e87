#pragma once

#include <span>

#include "bge/distribution.hpp"
#include "bge/inference.hpp"

// Strengths of 1.5 cm glass fibres (63 observations) and the reference
// maximum-likelihood results reported for them.

namespace bge::glass_fibre {

std::span<const double> values();
Sample sample();

struct ReferenceFit {
  inference::Model model;
  BgeParams params;
  double loglik;
};

/// Reference estimates for Model::bge, Model::be or Model::ge.
ReferenceFit reference_fit(inference::Model model);

struct ReferenceLr {
  inference::Model null_model;
  double statistic;
  double p_value;
};

/// Reference LR tests against the full BGE model (null = be or ge).
ReferenceLr reference_lr(inference::Model null_model);

}  // namespace bge::glass_fibre
