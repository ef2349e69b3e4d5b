#pragma once

#include <algorithm>
#include <array>
#include <string>
#include <string_view>

namespace mllint {

enum class Category {
    version_control,
    dependency_management,
    continuous_integration,
    code_quality,
    testing,
    custom,
};

inline constexpr std::array<Category, 5> kBuiltinCategories = {
    Category::version_control,  Category::dependency_management, Category::continuous_integration,
    Category::code_quality,     Category::testing,
};

inline std::string_view category_id(Category c) {
    switch (c) {
        case Category::version_control: return "version-control";
        case Category::dependency_management: return "dependency-management";
        case Category::continuous_integration: return "continuous-integration";
        case Category::code_quality: return "code-quality";
        case Category::testing: return "testing";
        case Category::custom: return "custom";
    }
    return "";
}

inline bool category_from_id(std::string_view id, Category& out) {
    for (Category c : kBuiltinCategories) {
        if (category_id(c) == id) {
            out = c;
            return true;
        }
    }
    if (id == "custom") {
        out = Category::custom;
        return true;
    }
    return false;
}

inline std::string_view category_name(Category c) {
    switch (c) {
        case Category::version_control: return "Version Control";
        case Category::dependency_management: return "Dependency Management";
        case Category::continuous_integration: return "Continuous Integration";
        case Category::code_quality: return "Code Quality";
        case Category::testing: return "Testing";
        case Category::custom: return "Custom";
    }
    return "";
}

/// Slugs are dot-separated runs of [a-z0-9-].
inline bool valid_slug(std::string_view slug) {
    if (slug.empty() || slug.front() == '.' || slug.back() == '.') return false;
    bool segment_empty = true;
    for (char c : slug) {
        if (c == '.') {
            if (segment_empty) return false;
            segment_empty = true;
        } else if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-') {
            segment_empty = false;
        } else {
            return false;
        }
    }
    return !segment_empty;
}

struct Rule {
    std::string slug;
    std::string name;
    Category category = Category::custom;
    std::string summary; // Markdown, includes fix guidance
};

enum class RuleStatus { evaluated, skipped, errored };

inline std::string_view status_id(RuleStatus s) {
    switch (s) {
        case RuleStatus::evaluated: return "evaluated";
        case RuleStatus::skipped: return "skipped";
        case RuleStatus::errored: return "errored";
    }
    return "";
}

/// Outcome of evaluating one rule. `score` is meaningful only when
/// status == evaluated; `reason` only otherwise.
struct RuleResult {
    RuleStatus status = RuleStatus::evaluated;
    double score = 0.0;
    std::string reason;
    std::string details;

    static RuleResult pass(double score, std::string details = "") {
        RuleResult r;
        r.status = RuleStatus::evaluated;
        r.score = std::clamp(score, 0.0, 100.0);
        r.details = std::move(details);
        return r;
    }

    static RuleResult skip(std::string reason, std::string details = "") {
        RuleResult r;
        r.status = RuleStatus::skipped;
        r.reason = std::move(reason);
        r.details = std::move(details);
        return r;
    }

    static RuleResult error(std::string reason, std::string details = "") {
        RuleResult r;
        r.status = RuleStatus::errored;
        r.reason = std::move(reason);
        r.details = std::move(details);
        return r;
    }
};

} // namespace mllint
