#pragma once

/// Importance weights. Each built-in rule carries a Likert-scale weight
/// (1..5) per maturity preset; category weights are the mean of their
/// member rules' effective weights so a category's pull on the overall
/// score tracks how much its rules matter, not how many it has.

#include <map>
#include <string>
#include <vector>

#include "mllint/config.hpp"
#include "mllint/registry.hpp"
#include "mllint/rule.hpp"

namespace mllint {

enum class Profile { poc, production };

inline Profile profile_from_name(const std::string& name) {
    if (name == "poc") return Profile::poc;
    if (name == "production") return Profile::production;
    throw ConfigError("unknown profile '" + name + "'");
}

struct PresetWeight {
    const char* slug;
    double poc;
    double production;
};

/// Likert importance per maturity stage. Proof-of-concept code tolerates
/// looser hygiene; production code does not.
inline const std::vector<PresetWeight>& preset_weights() {
    static const std::vector<PresetWeight> table = {
        {"version-control.code.git", 3, 4},
        {"version-control.code.git-no-big-files", 3, 4},
        {"version-control.data.dvc", 1, 3},
        {"version-control.data.dvc-in-use", 1, 3},
        {"dependency-management.use", 3, 4},
        {"dependency-management.single", 2, 3},
        {"dependency-management.dev-separation", 2, 2},
        {"continuous-integration.use", 2, 3},
        {"code-quality.use-linters", 2, 3},
        {"code-quality.no-issues", 1, 2},
        {"testing.has-tests", 2, 3},
        {"testing.pass", 2, 3},
        {"testing.coverage", 2, 3},
    };
    return table;
}

struct WeightProfile {
    std::string name; // "poc", "production", or "custom" once overridden
    std::map<std::string, double> rule_weights;
    std::map<Category, double> category_weights;

    double rule_weight(const std::string& slug) const {
        auto it = rule_weights.find(slug);
        return it == rule_weights.end() ? 0.0 : it->second;
    }
    double category_weight(Category category) const {
        auto it = category_weights.find(category);
        return it == category_weights.end() ? 0.0 : it->second;
    }
};

/// Effective weights for this run: preset values, then per-rule overrides
/// from the config (disabled ⇒ weight 0), then custom rules; category
/// weights are recomputed as the mean of the effective member weights.
inline WeightProfile resolve_weights(const Config& config) {
    Profile profile = profile_from_name(config.profile);
    WeightProfile resolved;
    resolved.name = config.profile;

    for (const PresetWeight& preset : preset_weights())
        resolved.rule_weights[preset.slug] =
            profile == Profile::poc ? preset.poc : preset.production;
    for (const CustomRuleSpec& spec : config.custom_rules)
        resolved.rule_weights[spec.slug] = spec.weight;

    bool overridden = false;
    for (const auto& [slug, override_] : config.rule_overrides) {
        if (override_.weight) {
            resolved.rule_weights[slug] = *override_.weight;
            overridden = true;
        }
        if (override_.disabled) {
            resolved.rule_weights[slug] = 0;
            overridden = true;
        }
    }
    if (overridden) resolved.name = "custom";

    std::map<Category, double> total;
    std::map<Category, int> count;
    for (const Rule& rule : builtin_rules()) {
        total[rule.category] += resolved.rule_weights[rule.slug];
        count[rule.category] += 1;
    }
    for (const CustomRuleSpec& spec : config.custom_rules) {
        total[Category::custom] += resolved.rule_weights[spec.slug];
        count[Category::custom] += 1;
    }
    for (const auto& [category, sum] : total)
        resolved.category_weights[category] = sum / count[category];
    return resolved;
}

} // namespace mllint
