#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace rne {

// Ordered, non-negative needs magnitudes of one agent. Labels are optional
// category names; when present they match the value count.
class NeedsVector {
 public:
  NeedsVector() = default;
  explicit NeedsVector(std::vector<double> values,
                       std::vector<std::string> labels = {});

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t k) const { return values_[k]; }
  std::span<const double> values() const { return values_; }
  const std::vector<std::string>& labels() const { return labels_; }

  // Every component multiplied by `factor` (> 0).
  NeedsVector scaled(double factor) const;

  friend bool operator==(const NeedsVector&, const NeedsVector&) = default;

 private:
  std::vector<double> values_;
  std::vector<std::string> labels_;
};

// Strictly positive per-category priority weights.
class WeightVector {
 public:
  WeightVector() = default;
  explicit WeightVector(std::vector<double> values);

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t k) const { return values_[k]; }
  std::span<const double> values() const { return values_; }

 private:
  std::vector<double> values_;
};

// Probabilities over needs categories. `normalized` is false for vectors that
// were truncated or typed in from rounded figures; those skip the sum check.
class NeedsDistribution {
 public:
  NeedsDistribution() = default;
  explicit NeedsDistribution(std::vector<double> probs, bool normalized = true);

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t k) const { return probs_[k]; }
  std::span<const double> probs() const { return probs_; }
  bool normalized() const { return normalized_; }
  double mass() const;

 private:
  std::vector<double> probs_;
  bool normalized_ = true;
};

// One row per group member, all rows the same length.
class GroupNeedsMatrix {
 public:
  GroupNeedsMatrix() = default;
  explicit GroupNeedsMatrix(std::vector<NeedsVector> rows);

  std::size_t members() const { return rows_.size(); }
  std::size_t categories() const { return rows_.empty() ? 0 : rows_.front().size(); }
  bool empty() const { return rows_.empty(); }
  const std::vector<NeedsVector>& rows() const { return rows_; }

  // Per-category sum over members.
  std::vector<double> column_sums() const;

 private:
  std::vector<NeedsVector> rows_;
};

// Behaviour weights (or action levels, or utilities) paired with the
// conditional probabilities that the behaviour is achieved. Probabilities are
// supplied already estimated; sensing is outside this library.
struct ExpectationTerms {
  std::vector<double> weights;
  std::vector<double> probs;
};

enum class NeedsLevel : std::size_t { kSafety = 0, kBasic = 1, kCapability = 2, kTeaming = 3 };

struct NeedsLevels {
  double safety = 0.0;
  double basic = 0.0;
  double capability = 0.0;
  double teaming = 0.0;
  std::array<bool, 4> gate_satisfied{};

  double value(NeedsLevel level) const;
};

// d_k = n_k w_k / sum(n w). `smoothing` adds smoothing * sum(n w) to every
// weighted mass before normalising, so zero categories stay strictly positive
// and the result is still invariant to scaling the needs.
NeedsDistribution normalize_needs(const NeedsVector& needs, const WeightVector& weights,
                                  double smoothing = 0.0);

// Column-sum form: d_k = (sum_i n_ik) w_k / sum_k((sum_i n_ik) w_k).
NeedsDistribution group_distribution(const GroupNeedsMatrix& group, const WeightVector& weights,
                                     double smoothing = 0.0);

// Descending order; mass unchanged.
NeedsDistribution sort_distribution(const NeedsDistribution& dist);

// Floors each probability to `decimals` places. Result is flagged unnormalized.
NeedsDistribution truncate_distribution(const NeedsDistribution& dist, int decimals);

// sum_i weights_i * probs_i when the lower level is satisfied, otherwise 0.
double needs_expectation(const ExpectationTerms& terms, bool lower_gate);

// Evaluates the four levels bottom-up. A level is satisfied when its value
// reaches its threshold and every level below is satisfied; a level whose
// lower gate is closed evaluates to 0.
NeedsLevels evaluate_hierarchy(const std::array<ExpectationTerms, 4>& terms,
                               const std::array<double, 4>& thresholds);

}  // namespace rne
