#include "rne/needs.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "rne/errors.hpp"

namespace rne {

namespace {

constexpr double kSumTolerance = 1e-9;

NeedsDistribution distribution_from_masses(std::vector<double> masses, double smoothing) {
  if (smoothing < 0.0) throw DomainError("smoothing must be non-negative");
  double total = std::accumulate(masses.begin(), masses.end(), 0.0);
  if (!(total > 0.0)) throw DegenerateInputError("weighted needs mass is zero");
  if (smoothing > 0.0) {
    const double bump = smoothing * total;
    for (double& m : masses) m += bump;
    total = std::accumulate(masses.begin(), masses.end(), 0.0);
  }
  for (double& m : masses) m /= total;
  return NeedsDistribution(std::move(masses), true);
}

}  // namespace

NeedsVector::NeedsVector(std::vector<double> values, std::vector<std::string> labels)
    : values_(std::move(values)), labels_(std::move(labels)) {
  if (values_.empty()) throw DimensionError("needs vector must have at least one category");
  if (!labels_.empty() && labels_.size() != values_.size())
    throw DimensionError("needs labels and values differ in length");
  for (double v : values_) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("needs values must be finite and >= 0");
  }
}

NeedsVector NeedsVector::scaled(double factor) const {
  if (!(factor > 0.0)) throw DomainError("scale factor must be positive");
  std::vector<double> out(values_);
  for (double& v : out) v *= factor;
  return NeedsVector(std::move(out), labels_);
}

WeightVector::WeightVector(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw DimensionError("weight vector must have at least one category");
  for (double w : values_) {
    if (!(w > 0.0) || !std::isfinite(w)) throw DomainError("weights must be finite and > 0");
  }
}

NeedsDistribution::NeedsDistribution(std::vector<double> probs, bool normalized)
    : probs_(std::move(probs)), normalized_(normalized) {
  if (probs_.empty()) throw DimensionError("distribution must have at least one category");
  for (double p : probs_) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("probabilities must lie in [0, 1]");
  }
  if (normalized_ && std::abs(mass() - 1.0) > kSumTolerance)
    throw DomainError("normalized distribution does not sum to 1");
}

double NeedsDistribution::mass() const {
  return std::accumulate(probs_.begin(), probs_.end(), 0.0);
}

GroupNeedsMatrix::GroupNeedsMatrix(std::vector<NeedsVector> rows) : rows_(std::move(rows)) {
  for (const auto& r : rows_) {
    if (r.size() != rows_.front().size()) throw DimensionError("group rows differ in length");
  }
}

std::vector<double> GroupNeedsMatrix::column_sums() const {
  std::vector<double> sums(categories(), 0.0);
  for (const auto& r : rows_) {
    for (std::size_t k = 0; k < sums.size(); ++k) sums[k] += r[k];
  }
  return sums;
}

double NeedsLevels::value(NeedsLevel level) const {
  switch (level) {
    case NeedsLevel::kSafety: return safety;
    case NeedsLevel::kBasic: return basic;
    case NeedsLevel::kCapability: return capability;
    case NeedsLevel::kTeaming: return teaming;
  }
  return 0.0;
}

NeedsDistribution normalize_needs(const NeedsVector& needs, const WeightVector& weights,
                                  double smoothing) {
  if (needs.size() != weights.size())
    throw DimensionError("needs and weights differ in length");
  std::vector<double> masses(needs.size());
  for (std::size_t k = 0; k < masses.size(); ++k) masses[k] = needs[k] * weights[k];
  return distribution_from_masses(std::move(masses), smoothing);
}

NeedsDistribution group_distribution(const GroupNeedsMatrix& group, const WeightVector& weights,
                                     double smoothing) {
  if (group.empty()) throw DegenerateInputError("group has no members");
  if (group.categories() != weights.size())
    throw DimensionError("group needs and weights differ in length");
  std::vector<double> masses = group.column_sums();
  for (std::size_t k = 0; k < masses.size(); ++k) masses[k] *= weights[k];
  return distribution_from_masses(std::move(masses), smoothing);
}

NeedsDistribution sort_distribution(const NeedsDistribution& dist) {
  std::vector<double> p(dist.probs().begin(), dist.probs().end());
  std::stable_sort(p.begin(), p.end(), std::greater<>());
  return NeedsDistribution(std::move(p), dist.normalized());
}

NeedsDistribution truncate_distribution(const NeedsDistribution& dist, int decimals) {
  if (decimals < 1) throw DomainError("truncation needs at least one decimal");
  const double scale = std::pow(10.0, decimals);
  std::vector<double> p(dist.probs().begin(), dist.probs().end());
  for (double& v : p) {
    // 1e-9 absorbs representation error so 0.29 stays 0.29 rather than 0.28.
    v = std::floor(v * scale + 1e-9) / scale;
  }
  return NeedsDistribution(std::move(p), false);
}

double needs_expectation(const ExpectationTerms& terms, bool lower_gate) {
  if (terms.weights.size() != terms.probs.size())
    throw DimensionError("expectation weights and probabilities differ in length");
  if (terms.weights.empty()) throw DegenerateInputError("expectation has no terms");
  for (double p : terms.probs) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("expectation probability outside [0, 1]");
  }
  if (!lower_gate) return 0.0;
  return std::inner_product(terms.weights.begin(), terms.weights.end(), terms.probs.begin(), 0.0);
}

NeedsLevels evaluate_hierarchy(const std::array<ExpectationTerms, 4>& terms,
                               const std::array<double, 4>& thresholds) {
  NeedsLevels out;
  std::array<double, 4> values{};
  bool gate = true;
  for (std::size_t level = 0; level < 4; ++level) {
    values[level] = needs_expectation(terms[level], gate);
    gate = gate && values[level] >= thresholds[level];
    out.gate_satisfied[level] = gate;
  }
  out.safety = values[0];
  out.basic = values[1];
  out.capability = values[2];
  out.teaming = values[3];
  return out;
}

}  // namespace rne
