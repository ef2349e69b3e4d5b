#pragma once

/// Score aggregation: weighted arithmetic means, rules into a category
/// score and categories into the overall score. Skipped and errored rules
/// contribute nothing — a rule that could not run must not read as a zero.

#include <algorithm>
#include <optional>
#include <vector>

namespace mllint {

struct WeightedScore {
    double score = 0;
    double weight = 0;
};

/// Weighted arithmetic mean of the entries, or nullopt when no weight
/// contributes. The result is clamped into [min, max] of the contributing
/// scores: mathematically the mean always lies there, so this only guards
/// against float round-off (e.g. all inputs exactly 100 must yield 100).
inline std::optional<double> weighted_mean(const std::vector<WeightedScore>& entries) {
    double weight_sum = 0;
    double product_sum = 0;
    double lo = 0, hi = 0;
    bool any = false;
    for (const WeightedScore& entry : entries) {
        if (entry.weight <= 0) continue;
        weight_sum += entry.weight;
        product_sum += entry.weight * entry.score;
        if (!any) {
            lo = hi = entry.score;
            any = true;
        } else {
            lo = std::min(lo, entry.score);
            hi = std::max(hi, entry.score);
        }
    }
    if (!any || weight_sum <= 0) return std::nullopt;
    return std::clamp(product_sum / weight_sum, lo, hi);
}

} // namespace mllint
