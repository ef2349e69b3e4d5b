#pragma once

/// User-defined rules: external programs declared in mllint.toml that
/// print a JSON result on stdout.

#include <string>

#include <nlohmann/json.hpp>

#include "mllint/config.hpp"
#include "mllint/process.hpp"
#include "mllint/rule.hpp"
#include "mllint/strings.hpp"

namespace mllint {

/// Protocol: run the command (whitespace tokenization, no shell) from the
/// project root with MLLINT_PROJECT_ROOT set; on exit 0 its stdout must be
/// `{"score": <0..100>, "details": <optional string>}`.
inline RuleResult run_custom_rule(const CustomRuleSpec& spec,
                                  const std::filesystem::path& root) {
    std::vector<std::string> argv = split_command(spec.run);
    if (argv.empty()) return RuleResult::error("empty run command");

    RunOptions options;
    options.workdir = root;
    options.extra_env.emplace_back("MLLINT_PROJECT_ROOT", root.string());
    options.timeout = std::chrono::seconds(60);
    RunResult result = run_process(argv, options);

    if (result.start_failed)
        return RuleResult::error("could not start `" + argv.front() + "`");
    if (result.timed_out) return RuleResult::error("custom rule timed out after 60 s");
    if (result.exit_code != 0) {
        std::string excerpt{trim(result.error).substr(0, 300)};
        std::string reason = "exited with code " + std::to_string(result.exit_code);
        if (!excerpt.empty()) reason += ": " + excerpt;
        return RuleResult::error(reason);
    }

    nlohmann::json doc = nlohmann::json::parse(result.output, nullptr, false);
    if (doc.is_discarded() || !doc.is_object() || !doc.contains("score") ||
        !doc["score"].is_number())
        return RuleResult::error("invalid custom-rule output");
    double score = doc["score"].get<double>();
    if (score < 0 || score > 100) return RuleResult::error("score out of range");
    std::string details;
    if (doc.contains("details")) {
        if (!doc["details"].is_string()) return RuleResult::error("invalid custom-rule output");
        details = doc["details"].get<std::string>();
    }
    return RuleResult::pass(score, details);
}

} // namespace mllint
