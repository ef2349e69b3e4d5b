#pragma once

/// Thin wrapper over the `git` executable. mllint never links libgit2 or
/// reimplements the object store; if git is not on PATH, git-based rules
/// report themselves as skipped rather than failing the project.

#include <filesystem>
#include <string>
#include <vector>

#include "mllint/process.hpp"
#include "mllint/strings.hpp"

namespace mllint {

struct GitResult {
    bool ok = false;          // ran and exited 0
    bool unavailable = false; // no git executable on PATH
    int exit_code = -1;
    std::string output; // stdout
    std::string error;  // stderr
};

inline bool git_available() { return find_in_path("git").has_value(); }

inline GitResult run_git(const std::filesystem::path& root, std::vector<std::string> args,
                         const std::string& stdin_data = {}) {
    GitResult result;
    if (!git_available()) {
        result.unavailable = true;
        return result;
    }
    std::vector<std::string> argv = {"git", "-C", root.string()};
    for (auto& arg : args) argv.push_back(std::move(arg));
    RunOptions options;
    options.stdin_data = stdin_data;
    options.timeout = std::chrono::seconds(120);
    RunResult run = run_process(argv, options);
    if (run.start_failed) {
        result.unavailable = true;
        return result;
    }
    result.exit_code = run.exit_code;
    result.ok = !run.timed_out && run.exit_code == 0;
    result.output = std::move(run.output);
    result.error = run.timed_out ? "git timed out" : std::move(run.error);
    return result;
}

/// True when the project root is inside a git work tree according to git
/// itself (the authoritative check; `.git` may be a gitdir pointer file).
inline bool inside_git_work_tree(const std::filesystem::path& root) {
    GitResult result = run_git(root, {"rev-parse", "--is-inside-work-tree"});
    return result.ok && trim(result.output) == "true";
}

} // namespace mllint
