#pragma once

/// One full lint run: scan the project, evaluate every rule against the
/// shared immutable context, aggregate scores, return the Report.

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "mllint/aggregate.hpp"
#include "mllint/config.hpp"
#include "mllint/registry.hpp"
#include "mllint/report.hpp"
#include "mllint/rules/ci.hpp"
#include "mllint/rules/code_quality.hpp"
#include "mllint/rules/custom.hpp"
#include "mllint/rules/dependencies.hpp"
#include "mllint/rules/testing.hpp"
#include "mllint/rules/version_control.hpp"
#include "mllint/scan.hpp"
#include "mllint/version.hpp"
#include "mllint/weights.hpp"

namespace mllint {

namespace detail {

inline RuleResult evaluate_builtin(const Rule& rule, const ProjectContext& context,
                                   const Config& config) {
    const std::string& slug = rule.slug;
    if (slug == "version-control.code.git") return rule_uses_git(context);
    if (slug == "version-control.code.git-no-big-files")
        return rule_no_large_files(context, config.thresholds.large_file_bytes);
    if (slug == "version-control.data.dvc") return rule_uses_dvc(context);
    if (slug == "version-control.data.dvc-in-use") return rule_dvc_in_use(context);
    if (slug == "dependency-management.use") return rule_uses_manager(context);
    if (slug == "dependency-management.single") return rule_single_manager(context);
    if (slug == "dependency-management.dev-separation")
        return rule_dev_runtime_separation(context);
    if (slug == "continuous-integration.use") return rule_has_ci(context);
    if (slug == "code-quality.use-linters") return rule_uses_linters(context);
    if (slug == "code-quality.no-issues") return rule_linters_clean(context);
    if (slug == "testing.has-tests")
        return rule_has_tests(context, config.thresholds.test_ratio_target);
    if (slug == "testing.pass") return rule_tests_pass(context, config);
    if (slug == "testing.coverage")
        return rule_coverage(context, config, config.thresholds.coverage_target);
    return RuleResult::error("rule has no implementation");
}

inline bool rule_disabled(const Config& config, const std::string& slug, double weight) {
    if (weight <= 0) return true;
    auto it = config.rule_overrides.find(slug);
    return it != config.rule_overrides.end() && it->second.disabled;
}

inline RuleReport make_rule_report(const std::string& slug, const std::string& name,
                                   double weight, RuleResult result) {
    RuleReport report;
    report.slug = slug;
    report.name = name;
    report.weight = weight;
    report.status = result.status;
    report.score = result.status == RuleStatus::evaluated ? result.score : 0;
    report.reason = result.reason;
    report.details = result.details;
    return report;
}

} // namespace detail

/// Project name used in report headers: the basename of the linted root.
inline std::string project_display_name(const std::filesystem::path& root) {
    std::string name = root.filename().string();
    return name.empty() ? std::string("project") : name;
}

inline Report lint_project(const std::filesystem::path& root, const Config& config) {
    ProjectContext context = scan(root);
    WeightProfile weights = resolve_weights(config);

    Report report;
    report.project_name = project_display_name(context.root);
    report.profile_name = weights.name;
    report.tool_version = kToolVersion;
    report.config_digest = config_digest(config);

    std::map<Category, CategoryReport> by_category;
    for (Category category : kBuiltinCategories) {
        CategoryReport category_report;
        category_report.category = category;
        category_report.weight = weights.category_weight(category);
        by_category[category] = std::move(category_report);
    }
    if (!config.custom_rules.empty()) {
        CategoryReport category_report;
        category_report.category = Category::custom;
        category_report.weight = weights.category_weight(Category::custom);
        by_category[Category::custom] = std::move(category_report);
    }

    for (const Rule& rule : builtin_rules()) {
        double weight = weights.rule_weight(rule.slug);
        RuleResult result;
        if (detail::rule_disabled(config, rule.slug, weight)) {
            result = RuleResult::skip("disabled by configuration");
        } else {
            try {
                result = detail::evaluate_builtin(rule, context, config);
            } catch (const std::exception& e) {
                result = RuleResult::error(e.what());
            }
        }
        by_category[rule.category].rules.push_back(
            detail::make_rule_report(rule.slug, rule.name, weight, std::move(result)));
    }
    for (const CustomRuleSpec& spec : config.custom_rules) {
        double weight = weights.rule_weight(spec.slug);
        RuleResult result;
        if (detail::rule_disabled(config, spec.slug, weight)) {
            result = RuleResult::skip("disabled by configuration");
        } else {
            try {
                result = run_custom_rule(spec, context.root);
            } catch (const std::exception& e) {
                result = RuleResult::error(e.what());
            }
        }
        by_category[Category::custom].rules.push_back(
            detail::make_rule_report(spec.slug, spec.name, weight, std::move(result)));
    }

    std::vector<WeightedScore> category_entries;
    auto finalize_category = [&](Category category) {
        auto it = by_category.find(category);
        if (it == by_category.end()) return;
        CategoryReport& category_report = it->second;
        std::vector<WeightedScore> entries;
        for (const RuleReport& rule : category_report.rules)
            if (rule.status == RuleStatus::evaluated && rule.weight > 0)
                entries.push_back({rule.score, rule.weight});
        category_report.score = weighted_mean(entries);
        if (category_report.score && category_report.weight > 0)
            category_entries.push_back({*category_report.score, category_report.weight});
        report.categories.push_back(std::move(category_report));
    };
    for (Category category : kBuiltinCategories) finalize_category(category);
    finalize_category(Category::custom);

    report.overall_score = weighted_mean(category_entries);
    return report;
}

} // namespace mllint
