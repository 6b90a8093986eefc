#pragma once

#include <compare>
#include <optional>
#include <string_view>

#include "rne/needs.hpp"

namespace rne {

enum class LogBase { kNatural, kBase10, kBase2 };

LogBase parse_log_base(std::string_view text);
std::string_view to_string(LogBase base);

// Numeric conventions for every trust computation.
//
// `smoothing` keeps zero categories (observers carry no capacity or
// resources) from producing infinite trust: weighted masses are lifted by
// epsilon times the total mass before normalising, and a zero q component met
// directly in rne() is read as epsilon. With smoothing off the strict value,
// +inf, is returned instead.
//
// `sort` reorders distributions descending before comparison. `truncate_decimals`
// floors both distributions to that many places; the results are no longer
// normalized and the trust value may go negative.
struct RneConfig {
  LogBase log_base = LogBase::kNatural;
  double epsilon = 1e-9;
  bool smoothing = true;
  bool sort = false;
  std::optional<int> truncate_decimals;

  void validate() const;
  double smoothing_mass() const { return smoothing ? epsilon : 0.0; }
};

struct TrustValue {
  double value = 0.0;

  bool is_infinite() const;
  auto operator<=>(const TrustValue&) const = default;
};

// sum_k p_k log(p_k / q_k) in the configured base, with 0 log(0/q) = 0.
TrustValue rne(const NeedsDistribution& p, const NeedsDistribution& q, const RneConfig& cfg);

// Applies the configured sort and truncation to a distribution.
NeedsDistribution prepare_distribution(const NeedsDistribution& dist, const RneConfig& cfg);

TrustValue agent_agent_trust(const NeedsVector& trustor, const NeedsVector& trustee,
                             const WeightVector& weights, const RneConfig& cfg);

TrustValue agent_group_trust(const NeedsVector& trustor, const GroupNeedsMatrix& group,
                             const WeightVector& weights, const RneConfig& cfg);

TrustValue group_group_trust(const GroupNeedsMatrix& trustor, const GroupNeedsMatrix& trustee,
                             const WeightVector& weights, const RneConfig& cfg);

// Mean of agent_agent_trust over all ordered member pairs. Lower means the
// members trust each other more. Requires at least two members.
double intra_group_trust(const GroupNeedsMatrix& group, const WeightVector& weights,
                         const RneConfig& cfg);

}  // namespace rne
