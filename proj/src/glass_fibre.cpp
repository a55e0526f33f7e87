#include "bge/glass_fibre.hpp"

#include <array>
#include <stdexcept>
#include <vector>

namespace bge::glass_fibre {
namespace {

constexpr std::array<double, 63> kStrengths = {
    0.55, 0.93, 1.25, 1.36, 1.49, 1.52, 1.58, 1.61, 1.64, 1.68, 1.73, 1.81, 2.00,
    0.74, 1.04, 1.27, 1.39, 1.49, 1.53, 1.59, 1.61, 1.66, 1.68, 1.76, 1.82, 2.01,
    0.77, 1.11, 1.28, 1.42, 1.50, 1.54, 1.60, 1.62, 1.66, 1.69, 1.76, 1.84, 2.24,
    0.81, 1.13, 1.29, 1.48, 1.50, 1.55, 1.61, 1.62, 1.66, 1.70, 1.77, 1.84,
    0.84, 1.24, 1.30, 1.48, 1.51, 1.55, 1.61, 1.63, 1.67, 1.70, 1.78, 1.89};

}  // namespace

std::span<const double> values() { return kStrengths; }

Sample sample() {
  return Sample(std::vector<double>(kStrengths.begin(), kStrengths.end()), "glass-fibre");
}

ReferenceFit reference_fit(inference::Model model) {
  using inference::Model;
  switch (model) {
    case Model::bge:
      return {model, BgeParams(0.4125, 93.4655, 0.92271, 22.6124), -15.5995};
    case Model::be:
      return {model, BgeParams::beta_exponential(17.7786, 22.7222, 0.3898), -24.1270};
    case Model::ge:
      return {model, BgeParams::generalized_exponential(2.6105, 31.3032), -31.3834};
    default:
      throw std::invalid_argument("reference_fit: only bge, be and ge have reference values");
  }
}

ReferenceLr reference_lr(inference::Model null_model) {
  using inference::Model;
  if (null_model == Model::be) return {null_model, 17.0550, 3.63e-5};
  if (null_model == Model::ge) return {null_model, 31.5678, 1.39e-7};
  throw std::invalid_argument("reference_lr: null model must be be or ge");
}

}  // namespace bge::glass_fibre
