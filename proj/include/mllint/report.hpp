#pragma once

/// The hierarchical lint result: rules → categories → overall, plus run
/// metadata. Holds the project's name, never its absolute path, so reports
/// are reproducible across machines.

#include <optional>
#include <string>
#include <vector>

#include "mllint/rule.hpp"

namespace mllint {

struct RuleReport {
    std::string slug;
    std::string name;
    RuleStatus status = RuleStatus::evaluated;
    double score = 0;    // meaningful only when status == evaluated
    std::string reason;  // set when skipped/errored
    std::string details; // Markdown, possibly empty
    double weight = 0;   // effective weight used for aggregation
};

inline bool operator==(const RuleReport& a, const RuleReport& b) {
    return a.slug == b.slug && a.name == b.name && a.status == b.status && a.score == b.score &&
           a.reason == b.reason && a.details == b.details && a.weight == b.weight;
}

struct CategoryReport {
    Category category = Category::version_control;
    std::optional<double> score;
    double weight = 0; // effective category weight
    std::vector<RuleReport> rules;
};

inline bool operator==(const CategoryReport& a, const CategoryReport& b) {
    return a.category == b.category && a.score == b.score && a.weight == b.weight &&
           a.rules == b.rules;
}

struct Report {
    std::string project_name; // basename of the linted root
    std::string profile_name; // poc | production | custom
    std::optional<double> overall_score;
    std::vector<CategoryReport> categories; // fixed registry order
    std::string tool_version;
    std::string config_digest; // hash of the effective configuration
};

inline bool operator==(const Report& a, const Report& b) {
    return a.project_name == b.project_name && a.profile_name == b.profile_name &&
           a.overall_score == b.overall_score && a.categories == b.categories &&
           a.tool_version == b.tool_version && a.config_digest == b.config_digest;
}

} // namespace mllint
