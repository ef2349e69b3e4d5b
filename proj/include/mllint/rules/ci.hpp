#pragma once

/// Continuous Integration rule: detect a usable CI configuration file.

#include <string>

#include "mllint/rule.hpp"
#include "mllint/scan.hpp"
#include "mllint/yaml.hpp"

namespace mllint {

/// 100 when any recognized CI config is present. GitHub workflows must
/// contain a non-empty `jobs` mapping to count, so an empty template file
/// does not produce a false positive.
inline RuleResult rule_has_ci(const ProjectContext& context) {
    std::string warnings;
    for (const CiConfig& config : context.ci_configs) {
        if (config.provider != "github") return RuleResult::pass(100);
        std::optional<std::string> text = read_file(context.root / config.path);
        if (!text) {
            warnings += "- could not read `" + config.path.generic_string() + "`\n";
            continue;
        }
        if (yaml::has_nonempty_key(*text, "jobs")) return RuleResult::pass(100);
        warnings += "- `" + config.path.generic_string() + "` defines no jobs\n";
    }
    std::string details =
        "No continuous-integration configuration was found. Set up a CI pipeline that runs "
        "your tests and linters on every push, for example:\n\n"
        "- GitHub Actions: a workflow under `.github/workflows/` with at least one job\n"
        "- GitLab CI: `.gitlab-ci.yml`\n"
        "- Azure Pipelines: `azure-pipelines.yml`\n"
        "- Travis CI: `.travis.yml`\n"
        "- Jenkins: `Jenkinsfile`\n"
        "- Bitbucket Pipelines: `bitbucket-pipelines.yml`\n"
        "- CircleCI: `.circleci/config.yml`\n";
    if (!warnings.empty()) details += "\nCandidates that did not count:\n\n" + warnings;
    return RuleResult::pass(0, details);
}

} // namespace mllint
