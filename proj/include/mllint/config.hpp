#pragma once

/// User configuration: `mllint.toml` at the project root. Missing file
/// means defaults; a malformed or inconsistent file is a ConfigError.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mllint/registry.hpp"
#include "mllint/strings.hpp"
#include "mllint/toml.hpp"

namespace mllint {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Thresholds {
    std::int64_t large_file_bytes = 10 * 1024 * 1024;
    double test_ratio_target = 0.25;  // test files per source file
    double coverage_target = 0.8;     // line rate considered "enough"
};

struct RuleOverride {
    std::optional<double> weight;
    bool disabled = false;
};

struct CustomRuleSpec {
    std::string slug;
    std::string name;
    std::string run; // command line, whitespace-tokenized, no shell
    double weight = 1.0;
};

struct Config {
    std::string profile = "production"; // "poc" | "production"
    std::map<std::string, RuleOverride> rule_overrides;
    Thresholds thresholds;
    std::string test_report_path;     // empty = search defaults
    std::string coverage_report_path; // empty = search defaults
    std::vector<CustomRuleSpec> custom_rules;
};

namespace detail {

inline double require_number(const toml::Value& v, const std::string& field) {
    if (!v.is_number()) throw ConfigError("field '" + field + "' must be a number");
    return v.number();
}

inline std::string require_string(const toml::Value& v, const std::string& field) {
    if (!v.is_string()) throw ConfigError("field '" + field + "' must be a string");
    return v.string();
}

inline void validate_slugs(const Config& config) {
    std::set<std::string> known;
    for (const Rule& rule : builtin_rules()) known.insert(rule.slug);
    for (const CustomRuleSpec& spec : config.custom_rules) {
        if (!valid_slug(spec.slug))
            throw ConfigError("custom rule slug '" + spec.slug + "' is not a valid slug");
        if (spec.slug.find('.') == std::string::npos)
            throw ConfigError("custom rule slug '" + spec.slug +
                              "' must be namespaced (contain a '.')");
        if (!known.insert(spec.slug).second)
            throw ConfigError("custom rule slug '" + spec.slug + "' collides with another rule");
        if (trim(spec.run).empty())
            throw ConfigError("custom rule '" + spec.slug + "' has an empty run command");
    }
    for (const auto& [slug, override_] : config.rule_overrides) {
        if (!known.count(slug)) throw ConfigError("unknown rule slug '" + slug + "' in [rules]");
        if (override_.weight && *override_.weight < 0)
            throw ConfigError("weight for rule '" + slug + "' must be non-negative");
    }
}

inline void validate_thresholds(const Thresholds& t) {
    if (t.large_file_bytes <= 0) throw ConfigError("thresholds.large-file-bytes must be positive");
    if (t.test_ratio_target <= 0) throw ConfigError("thresholds.test-ratio-target must be positive");
    if (t.coverage_target <= 0 || t.coverage_target > 1)
        throw ConfigError("thresholds.coverage-target must be in (0, 1]");
}

} // namespace detail

inline Config parse_config(std::string_view toml_text) {
    toml::Value doc;
    try {
        doc = toml::parse(toml_text);
    } catch (const toml::ParseError& e) {
        throw ConfigError(std::string("malformed mllint.toml: ") + e.what());
    }

    Config config;
    if (const auto* profile = doc.get("profile")) {
        config.profile = detail::require_string(*profile, "profile");
        if (config.profile != "poc" && config.profile != "production")
            throw ConfigError("profile must be \"poc\" or \"production\", got \"" +
                              config.profile + "\"");
    }
    if (const auto* rules = doc.get("rules")) {
        if (!rules->is_table()) throw ConfigError("[rules] must be a table");
        if (const auto* disabled = rules->get("disabled")) {
            if (!disabled->is_array()) throw ConfigError("rules.disabled must be an array");
            for (const auto& item : disabled->array())
                config.rule_overrides[detail::require_string(item, "rules.disabled")].disabled =
                    true;
        }
        if (const auto* weights = rules->get("weights")) {
            if (!weights->is_table()) throw ConfigError("[rules.weights] must be a table");
            for (const auto& [slug, value] : weights->table())
                config.rule_overrides[slug].weight =
                    detail::require_number(value, "rules.weights." + slug);
        }
    }
    if (const auto* thresholds = doc.get("thresholds")) {
        if (!thresholds->is_table()) throw ConfigError("[thresholds] must be a table");
        if (const auto* v = thresholds->get("large-file-bytes")) {
            if (!v->is_integer())
                throw ConfigError("thresholds.large-file-bytes must be an integer");
            config.thresholds.large_file_bytes = v->integer();
        }
        if (const auto* v = thresholds->get("test-ratio-target"))
            config.thresholds.test_ratio_target =
                detail::require_number(*v, "thresholds.test-ratio-target");
        if (const auto* v = thresholds->get("coverage-target"))
            config.thresholds.coverage_target =
                detail::require_number(*v, "thresholds.coverage-target");
    }
    if (const auto* testing = doc.get("testing")) {
        if (!testing->is_table()) throw ConfigError("[testing] must be a table");
        if (const auto* v = testing->get("report"))
            config.test_report_path = detail::require_string(*v, "testing.report");
        if (const auto* v = testing->get("coverage-report"))
            config.coverage_report_path = detail::require_string(*v, "testing.coverage-report");
    }
    if (const auto* custom = doc.get("custom-rules")) {
        if (!custom->is_array()) throw ConfigError("[[custom-rules]] must be an array of tables");
        for (const auto& entry : custom->array()) {
            if (!entry.is_table()) throw ConfigError("[[custom-rules]] entries must be tables");
            CustomRuleSpec spec;
            if (const auto* v = entry.get("slug"))
                spec.slug = detail::require_string(*v, "custom-rules.slug");
            else
                throw ConfigError("custom rule is missing a slug");
            if (const auto* v = entry.get("name"))
                spec.name = detail::require_string(*v, "custom-rules.name");
            else
                spec.name = spec.slug;
            if (const auto* v = entry.get("run"))
                spec.run = detail::require_string(*v, "custom-rules.run");
            else
                throw ConfigError("custom rule '" + spec.slug + "' is missing a run command");
            if (const auto* v = entry.get("weight")) {
                spec.weight = detail::require_number(*v, "custom-rules.weight");
                if (spec.weight < 0)
                    throw ConfigError("custom rule '" + spec.slug +
                                      "' weight must be non-negative");
            }
            config.custom_rules.push_back(std::move(spec));
        }
    }

    detail::validate_slugs(config);
    detail::validate_thresholds(config.thresholds);
    return config;
}

inline Config load_config(const std::filesystem::path& root) {
    std::filesystem::path file = root / "mllint.toml";
    std::error_code ec;
    if (!std::filesystem::exists(file, ec)) return Config{};
    std::ifstream in(file, std::ios::binary);
    if (!in) throw ConfigError("cannot read " + file.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

/// Deterministic text form of the effective configuration; the report's
/// config digest is the FNV-1a hash of this.
inline std::string canonical_config(const Config& config) {
    std::ostringstream out;
    out << "profile=" << config.profile << '\n';
    out << "thresholds.large-file-bytes=" << config.thresholds.large_file_bytes << '\n';
    out << "thresholds.test-ratio-target=" << format_str("%.17g", config.thresholds.test_ratio_target)
        << '\n';
    out << "thresholds.coverage-target=" << format_str("%.17g", config.thresholds.coverage_target)
        << '\n';
    out << "testing.report=" << config.test_report_path << '\n';
    out << "testing.coverage-report=" << config.coverage_report_path << '\n';
    for (const auto& [slug, override_] : config.rule_overrides) { // std::map: sorted
        out << "override." << slug << ".disabled=" << (override_.disabled ? "true" : "false")
            << '\n';
        if (override_.weight)
            out << "override." << slug << ".weight=" << format_str("%.17g", *override_.weight)
                << '\n';
    }
    for (const CustomRuleSpec& spec : config.custom_rules)
        out << "custom." << spec.slug << "=" << spec.name << "|" << spec.run << "|"
            << format_str("%.17g", spec.weight) << '\n';
    return out.str();
}

inline std::string config_digest(const Config& config) {
    return to_hex64(fnv1a64(canonical_config(config)));
}

} // namespace mllint
