#pragma once

/// Report serialization: deterministic Markdown and canonical JSON.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mllint/report.hpp"
#include "mllint/rule.hpp"
#include "mllint/strings.hpp"

namespace mllint {

namespace detail {

/// Table cells must stay on one line and must not break the column
/// structure: newlines collapse to spaces, pipes are escaped.
inline std::string markdown_cell(std::string_view text) {
    std::string out;
    bool last_space = false;
    for (char c : text) {
        if (c == '\n' || c == '\r' || c == '\t') c = ' ';
        if (c == ' ') {
            if (last_space) continue;
            last_space = true;
        } else {
            last_space = false;
        }
        if (c == '|') out += "\\|";
        else out += c;
    }
    return std::string(trim(out));
}

inline std::string score_cell(const RuleReport& rule) {
    if (rule.status == RuleStatus::evaluated) return format_score(rule.score) + "%";
    return "-";
}

inline std::string status_cell(const RuleReport& rule) {
    std::string status{status_id(rule.status)};
    if (rule.status != RuleStatus::evaluated && !rule.reason.empty())
        status += ": " + rule.reason;
    return markdown_cell(status);
}

} // namespace detail

/// Deterministic CommonMark document: H1 title, overall-score line, one H2
/// per category with a rule table, H3 fix-detail sections when non-empty.
/// `include_details=false` (the CLI's --quiet) drops the detail sections.
inline std::string render_markdown(const Report& report, bool include_details = true) {
    std::string out;
    out += "# ML project report: " + detail::markdown_cell(report.project_name) + "\n\n";
    if (report.overall_score)
        out += "Overall score: **" + format_score(*report.overall_score) + "%**\n\n";
    else
        out += "Overall score: n/a (no rule could be evaluated)\n\n";
    out += "Profile: " + report.profile_name + " · mllint " + report.tool_version +
           " · config digest `" + report.config_digest + "`\n";

    for (const CategoryReport& category : report.categories) {
        out += "\n## " + std::string(category_name(category.category)) + "\n\n";
        if (category.score)
            out += "Category score: **" + format_score(*category.score) + "%**\n\n";
        else
            out += "Category score: n/a\n\n";
        out += "| Rule | Score | Weight | Status |\n";
        out += "| --- | --- | --- | --- |\n";
        for (const RuleReport& rule : category.rules) {
            out += "| " + detail::markdown_cell(rule.slug) + " | " + detail::score_cell(rule) +
                   " | " + format_score(rule.weight) + " | " + detail::status_cell(rule) +
                   " |\n";
        }
        if (include_details) {
            for (const RuleReport& rule : category.rules) {
                if (rule.details.empty()) continue;
                out += "\n### " + detail::markdown_cell(rule.name) + "\n\n";
                std::string details{trim(rule.details)};
                out += details + "\n";
            }
        }
    }
    return out;
}

inline nlohmann::json report_to_json_value(const Report& report) {
    nlohmann::json doc;
    doc["project"] = report.project_name;
    doc["profile"] = report.profile_name;
    doc["tool_version"] = report.tool_version;
    doc["config_digest"] = report.config_digest;
    if (report.overall_score)
        doc["overall_score"] = *report.overall_score;
    else
        doc["overall_score"] = nullptr;
    doc["categories"] = nlohmann::json::array();
    for (const CategoryReport& category : report.categories) {
        nlohmann::json cat;
        cat["category"] = std::string(category_id(category.category));
        cat["name"] = std::string(category_name(category.category));
        if (category.score)
            cat["score"] = *category.score;
        else
            cat["score"] = nullptr;
        cat["weight"] = category.weight;
        cat["rules"] = nlohmann::json::array();
        for (const RuleReport& rule : category.rules) {
            nlohmann::json r;
            r["slug"] = rule.slug;
            r["name"] = rule.name;
            r["status"] = std::string(status_id(rule.status));
            if (rule.status == RuleStatus::evaluated)
                r["score"] = rule.score;
            else
                r["score"] = nullptr;
            r["reason"] = rule.reason;
            r["details"] = rule.details;
            r["weight"] = rule.weight;
            cat["rules"].push_back(std::move(r));
        }
        doc["categories"].push_back(std::move(cat));
    }
    return doc;
}

/// Canonical JSON: keys sorted (nlohmann's object is ordered), two-space
/// indent, shortest round-trip float form, trailing newline.
inline std::string render_json(const Report& report) {
    return report_to_json_value(report).dump(2) + "\n";
}

inline Report report_from_json(std::string_view text) {
    nlohmann::json doc = nlohmann::json::parse(text); // throws on malformed input
    Report report;
    report.project_name = doc.at("project").get<std::string>();
    report.profile_name = doc.at("profile").get<std::string>();
    report.tool_version = doc.at("tool_version").get<std::string>();
    report.config_digest = doc.at("config_digest").get<std::string>();
    if (!doc.at("overall_score").is_null())
        report.overall_score = doc.at("overall_score").get<double>();
    for (const auto& cat : doc.at("categories")) {
        CategoryReport category;
        if (!category_from_id(cat.at("category").get<std::string>(), category.category))
            throw std::runtime_error("unknown category id in report JSON");
        if (!cat.at("score").is_null()) category.score = cat.at("score").get<double>();
        category.weight = cat.at("weight").get<double>();
        for (const auto& r : cat.at("rules")) {
            RuleReport rule;
            rule.slug = r.at("slug").get<std::string>();
            rule.name = r.at("name").get<std::string>();
            std::string status = r.at("status").get<std::string>();
            if (status == "evaluated")
                rule.status = RuleStatus::evaluated;
            else if (status == "skipped")
                rule.status = RuleStatus::skipped;
            else if (status == "errored")
                rule.status = RuleStatus::errored;
            else
                throw std::runtime_error("unknown rule status in report JSON");
            if (!r.at("score").is_null()) rule.score = r.at("score").get<double>();
            rule.reason = r.at("reason").get<std::string>();
            rule.details = r.at("details").get<std::string>();
            rule.weight = r.at("weight").get<double>();
            category.rules.push_back(std::move(rule));
        }
        report.categories.push_back(std::move(category));
    }
    return report;
}

} // namespace mllint
