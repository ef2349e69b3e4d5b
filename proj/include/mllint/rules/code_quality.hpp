#pragma once

/// Code-quality rules: adoption of the five supported linters and, when
/// they are installed, how clean the project is under them. The linters
/// are invoked as external tools and never reimplemented.

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mllint/process.hpp"
#include "mllint/rule.hpp"
#include "mllint/rules/dependencies.hpp"
#include "mllint/scan.hpp"
#include "mllint/strings.hpp"

namespace mllint {

inline const std::vector<std::string>& linter_tools() {
    static const std::vector<std::string> tools = {"pylint", "mypy", "black", "isort", "bandit"};
    return tools;
}

struct LinterMessage {
    std::string tool;
    std::string file;     // relative to the project root when possible
    int line = 0;         // 0 = absent
    std::string code;     // tool-specific id (C0114, B101, …); may be empty
    std::string severity; // info | warning | error
    std::string text;
};

class ToolOutputError : public std::runtime_error {
public:
    explicit ToolOutputError(const std::string& tool, std::string_view raw)
        : std::runtime_error(tool + " produced unparseable output: " + sample(raw)) {}

private:
    static std::string sample(std::string_view raw) {
        std::string s{raw.substr(0, 200)};
        return s.empty() ? "<empty>" : s;
    }
};

/// A tool counts as adopted when a configuration artifact for it exists or
/// it is declared as a development dependency.
inline std::map<std::string, bool> detect_linter_adoption(const ProjectContext& context) {
    std::map<std::string, bool> adoption;
    for (const std::string& tool : linter_tools())
        adoption[tool] = context.linter_configs.count(tool) > 0;
    for (const ManagerDetection& detection : detect_managers(context))
        for (const DependencyDecl& decl : detection.dev_deps)
            if (adoption.count(decl.name)) adoption[decl.name] = true;
    return adoption;
}

inline RuleResult rule_uses_linters(const ProjectContext& context) {
    std::map<std::string, bool> adoption = detect_linter_adoption(context);
    int adopted = 0;
    std::string missing;
    for (const std::string& tool : linter_tools()) {
        if (adoption[tool])
            ++adopted;
        else
            missing += "- `" + tool + "`\n";
    }
    double score = 100.0 * adopted / static_cast<double>(linter_tools().size());
    std::string details;
    if (!missing.empty())
        details =
            "The following linters have no configuration in this project and are not declared "
            "as development dependencies:\n\n" +
            missing +
            "\nAdopt them (add a config section or list them as dev dependencies) to catch "
            "code-quality issues early.";
    return RuleResult::pass(score, details);
}

inline std::string severity_from_pylint(const std::string& type) {
    if (type == "error" || type == "fatal") return "error";
    if (type == "warning") return "warning";
    return "info"; // convention, refactor, information
}

inline std::vector<LinterMessage> parse_pylint_json(std::string_view text) {
    std::vector<LinterMessage> messages;
    if (trim(text).empty()) return messages;
    nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
    if (doc.is_discarded() || !doc.is_array()) throw ToolOutputError("pylint", text);
    for (const auto& record : doc) {
        if (!record.is_object()) throw ToolOutputError("pylint", text);
        LinterMessage message;
        message.tool = "pylint";
        message.file = record.value("path", "");
        message.line = record.value("line", 0);
        message.code = record.value("message-id", "");
        message.severity = severity_from_pylint(record.value("type", ""));
        message.text = record.value("message", "");
        if (message.text.empty()) message.text = record.value("symbol", "issue");
        messages.push_back(std::move(message));
    }
    return messages;
}

inline std::vector<LinterMessage> parse_mypy_lines(std::string_view text) {
    std::vector<LinterMessage> messages;
    for (const std::string& line : split_lines(text)) {
        if (trim(line).empty()) continue;
        // path:line[:col]: severity: message   (or path: severity: message)
        std::vector<std::string> parts = split(line, ':');
        if (parts.size() < 3) throw ToolOutputError("mypy", line);
        LinterMessage message;
        message.tool = "mypy";
        message.file = trim(parts[0]);
        size_t index = 1;
        auto is_number = [](const std::string& s) {
            std::string_view t = trim(s);
            return !t.empty() && t.find_first_not_of("0123456789") == std::string::npos;
        };
        if (is_number(parts[index])) {
            message.line = std::atoi(std::string(trim(parts[index])).c_str());
            ++index;
            if (index < parts.size() && is_number(parts[index])) ++index; // column
        }
        if (index + 1 > parts.size() - 1) throw ToolOutputError("mypy", line);
        std::string severity{trim(parts[index])};
        ++index;
        if (severity == "error")
            message.severity = "error";
        else if (severity == "warning")
            message.severity = "warning";
        else if (severity == "note")
            message.severity = "info";
        else
            throw ToolOutputError("mypy", line);
        std::string body = parts[index];
        for (size_t i = index + 1; i < parts.size(); ++i) body += ":" + parts[i];
        message.text = trim(body);
        if (message.text.empty()) throw ToolOutputError("mypy", line);
        messages.push_back(std::move(message));
    }
    return messages;
}

inline std::vector<LinterMessage> parse_bandit_json(std::string_view text) {
    std::vector<LinterMessage> messages;
    if (trim(text).empty()) throw ToolOutputError("bandit", text);
    nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
    if (doc.is_discarded() || !doc.is_object() || !doc.contains("results"))
        throw ToolOutputError("bandit", text);
    for (const auto& record : doc["results"]) {
        LinterMessage message;
        message.tool = "bandit";
        message.file = record.value("filename", "");
        message.line = record.value("line_number", 0);
        message.code = record.value("test_id", "");
        std::string severity = to_lower(record.value("issue_severity", ""));
        message.severity =
            severity == "high" ? "error" : (severity == "medium" ? "warning" : "info");
        message.text = record.value("issue_text", "security issue");
        messages.push_back(std::move(message));
    }
    return messages;
}

inline std::vector<LinterMessage> parse_black_output(std::string_view text) {
    std::vector<LinterMessage> messages;
    for (const std::string& line : split_lines(text)) {
        std::string trimmed{trim(line)};
        if (trimmed.rfind("would reformat ", 0) != 0) continue;
        LinterMessage message;
        message.tool = "black";
        message.file = trimmed.substr(std::string("would reformat ").size());
        message.severity = "warning";
        message.text = "would reformat";
        messages.push_back(std::move(message));
    }
    return messages;
}

inline std::vector<LinterMessage> parse_isort_output(std::string_view text) {
    std::vector<LinterMessage> messages;
    for (const std::string& line : split_lines(text)) {
        std::string trimmed{trim(line)};
        if (trimmed.rfind("ERROR", 0) != 0) continue;
        if (trimmed.find("Imports are incorrectly sorted") == std::string::npos) continue;
        LinterMessage message;
        message.tool = "isort";
        message.severity = "warning";
        // "ERROR: <path> Imports are incorrectly sorted and/or formatted."
        size_t start = trimmed.find(' ');
        size_t end = trimmed.find(" Imports are incorrectly sorted");
        if (start != std::string::npos && end != std::string::npos && end > start)
            message.file = trim(trimmed.substr(start + 1, end - start - 1));
        message.text = "imports are incorrectly sorted";
        messages.push_back(std::move(message));
    }
    return messages;
}

struct LinterRun {
    bool available = false;
    bool timed_out = false;
    bool parse_failed = false;
    std::string note;
    std::vector<LinterMessage> messages;
};

/// Invoke one linter over the project with machine-readable flags. Exit
/// codes that merely signal "issues found" are success; only a missing
/// executable makes the tool unavailable.
inline LinterRun run_linter(const std::string& tool, const ProjectContext& context) {
    LinterRun run;
    if (!find_in_path(tool)) {
        run.note = tool + " is not installed";
        return run;
    }
    std::vector<std::string> argv;
    if (tool == "pylint") {
        argv = {"pylint", "--output-format=json"};
        for (const fs::path& file : context.python_files) argv.push_back(file.generic_string());
    } else if (tool == "mypy") {
        argv = {"mypy", "--no-error-summary"};
        for (const fs::path& file : context.python_files) argv.push_back(file.generic_string());
    } else if (tool == "black") {
        argv = {"black", "--check", "."};
    } else if (tool == "isort") {
        argv = {"isort", "--check-only", "."};
    } else if (tool == "bandit") {
        argv = {"bandit", "-f", "json", "-r", "."};
    } else {
        run.note = "unknown tool " + tool;
        return run;
    }

    RunOptions options;
    options.workdir = context.root;
    options.timeout = std::chrono::seconds(120);
    RunResult result = run_process(argv, options);
    if (result.start_failed) {
        run.note = tool + " could not be started";
        return run;
    }
    run.available = true;
    if (result.timed_out) {
        run.timed_out = true;
        run.note = "timeout";
        return run;
    }
    try {
        if (tool == "pylint")
            run.messages = parse_pylint_json(result.output);
        else if (tool == "mypy")
            run.messages = parse_mypy_lines(result.output);
        else if (tool == "black")
            run.messages = parse_black_output(result.error);
        else if (tool == "isort")
            run.messages = parse_isort_output(result.error);
        else if (tool == "bandit")
            run.messages = parse_bandit_json(result.output);
    } catch (const ToolOutputError& e) {
        run.parse_failed = true;
        run.note = e.what();
        return run;
    }
    // Normalize message paths to be root-relative.
    std::string prefix = context.root.string() + "/";
    for (LinterMessage& message : run.messages) {
        if (message.file.rfind(prefix, 0) == 0) message.file = message.file.substr(prefix.size());
        if (message.file.rfind("./", 0) == 0) message.file = message.file.substr(2);
    }
    return run;
}

inline RuleResult rule_linters_clean(const ProjectContext& context) {
    size_t n = context.python_files.size();
    if (n == 0) return RuleResult::skip("no Python files to lint");
    std::map<std::string, bool> adoption = detect_linter_adoption(context);

    std::vector<std::pair<std::string, LinterRun>> runs;
    bool any_adopted = false;
    for (const std::string& tool : linter_tools()) {
        if (!adoption[tool]) continue;
        any_adopted = true;
        runs.emplace_back(tool, run_linter(tool, context));
    }
    if (!any_adopted) return RuleResult::skip("no linters adopted by this project");

    double score_sum = 0;
    int contributing = 0;
    std::string per_tool;
    std::string failures;
    std::vector<LinterMessage> all_messages;
    for (const auto& [tool, run] : runs) {
        if (!run.available || run.timed_out || run.parse_failed) {
            failures += "- `" + tool + "`: " + run.note + "\n";
            continue;
        }
        double m = static_cast<double>(run.messages.size());
        double tool_score = std::max(0.0, 100.0 * (1.0 - m / static_cast<double>(n)));
        score_sum += tool_score;
        ++contributing;
        per_tool += "- `" + tool + "`: " + std::to_string(run.messages.size()) +
                    " message(s), score " + format_score(tool_score) + "%\n";
        all_messages.insert(all_messages.end(), run.messages.begin(), run.messages.end());
    }

    if (contributing == 0) {
        bool any_parse_failure = false;
        for (const auto& [tool, run] : runs)
            if (run.parse_failed) any_parse_failure = true;
        std::string flattened = replace_all(failures, "- ", "");
        std::string reasons = replace_all(std::string(trim(flattened)), "\n", "; ");
        if (any_parse_failure) return RuleResult::error(reasons);
        return RuleResult::skip(reasons.empty() ? "no adopted linter available" : reasons);
    }

    // Group messages by (tool, code) and keep the most frequent groups.
    std::map<std::string, std::vector<const LinterMessage*>> groups;
    for (const LinterMessage& message : all_messages) {
        std::string key = message.tool + " " + (message.code.empty() ? "-" : message.code);
        groups[key].push_back(&message);
    }
    std::vector<std::pair<std::string, std::vector<const LinterMessage*>>> ordered(
        groups.begin(), groups.end());
    std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
        if (a.second.size() != b.second.size()) return a.second.size() > b.second.size();
        return a.first < b.first;
    });

    std::string details = "Messages per adopted linter:\n\n" + per_tool;
    if (!failures.empty()) details += "\nTools that could not contribute:\n\n" + failures;
    if (!all_messages.empty()) {
        details += "\nMost frequent messages (top 20 groups):\n\n";
        size_t shown = 0;
        for (const auto& [key, group] : ordered) {
            if (shown >= 20) break;
            const LinterMessage& first = *group.front();
            std::string location = first.file;
            if (first.line > 0) location += ":" + std::to_string(first.line);
            details += "- " + key + " ×" + std::to_string(group.size()) + ": " + first.text +
                       (location.empty() ? "" : " (e.g. " + location + ")") + "\n";
            ++shown;
        }
    }
    return RuleResult::pass(score_sum / contributing, details);
}

} // namespace mllint
