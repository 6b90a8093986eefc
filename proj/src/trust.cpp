#include "rne/trust.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "rne/errors.hpp"

namespace rne {

LogBase parse_log_base(std::string_view text) {
  if (text == "natural" || text == "e" || text == "ln") return LogBase::kNatural;
  if (text == "10" || text == "base-10" || text == "log10") return LogBase::kBase10;
  if (text == "2" || text == "base-2" || text == "log2") return LogBase::kBase2;
  throw ConfigError("unknown log base '" + std::string(text) + "'");
}

std::string_view to_string(LogBase base) {
  switch (base) {
    case LogBase::kNatural: return "natural";
    case LogBase::kBase10: return "10";
    case LogBase::kBase2: return "2";
  }
  return "natural";
}

void RneConfig::validate() const {
  if (!(epsilon > 0.0)) throw ConfigError("rne epsilon must be positive");
  if (truncate_decimals && *truncate_decimals < 1)
    throw ConfigError("rne truncation needs at least one decimal");
}

bool TrustValue::is_infinite() const { return std::isinf(value); }

TrustValue rne(const NeedsDistribution& p, const NeedsDistribution& q, const RneConfig& cfg) {
  if (p.size() != q.size()) throw DimensionError("distributions differ in length");
  double sum = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const double pk = p[k];
    if (pk == 0.0) continue;
    double qk = q[k];
    if (qk == 0.0) {
      if (!cfg.smoothing) return TrustValue{std::numeric_limits<double>::infinity()};
      qk = cfg.epsilon;
    }
    sum += pk * std::log(pk / qk);
  }
  switch (cfg.log_base) {
    case LogBase::kNatural: break;
    case LogBase::kBase10: sum /= std::numbers::ln10; break;
    case LogBase::kBase2: sum /= std::numbers::ln2; break;
  }
  return TrustValue{sum};
}

NeedsDistribution prepare_distribution(const NeedsDistribution& dist, const RneConfig& cfg) {
  NeedsDistribution out = cfg.sort ? sort_distribution(dist) : dist;
  if (cfg.truncate_decimals) out = truncate_distribution(out, *cfg.truncate_decimals);
  return out;
}

TrustValue agent_agent_trust(const NeedsVector& trustor, const NeedsVector& trustee,
                             const WeightVector& weights, const RneConfig& cfg) {
  const double s = cfg.smoothing_mass();
  return rne(prepare_distribution(normalize_needs(trustor, weights, s), cfg),
             prepare_distribution(normalize_needs(trustee, weights, s), cfg), cfg);
}

TrustValue agent_group_trust(const NeedsVector& trustor, const GroupNeedsMatrix& group,
                             const WeightVector& weights, const RneConfig& cfg) {
  const double s = cfg.smoothing_mass();
  return rne(prepare_distribution(normalize_needs(trustor, weights, s), cfg),
             prepare_distribution(group_distribution(group, weights, s), cfg), cfg);
}

TrustValue group_group_trust(const GroupNeedsMatrix& trustor, const GroupNeedsMatrix& trustee,
                             const WeightVector& weights, const RneConfig& cfg) {
  const double s = cfg.smoothing_mass();
  return rne(prepare_distribution(group_distribution(trustor, weights, s), cfg),
             prepare_distribution(group_distribution(trustee, weights, s), cfg), cfg);
}

double intra_group_trust(const GroupNeedsMatrix& group, const WeightVector& weights,
                         const RneConfig& cfg) {
  const auto& rows = group.rows();
  if (rows.size() < 2) throw DegenerateInputError("intra-group trust needs two or more members");
  const double s = cfg.smoothing_mass();
  std::vector<NeedsDistribution> dists;
  dists.reserve(rows.size());
  for (const auto& r : rows) dists.push_back(prepare_distribution(normalize_needs(r, weights, s), cfg));
  double total = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < dists.size(); ++i) {
    for (std::size_t j = 0; j < dists.size(); ++j) {
      if (i == j) continue;
      total += rne(dists[i], dists[j], cfg).value;
      ++pairs;
    }
  }
  return total / static_cast<double>(pairs);
}

}  // namespace rne
