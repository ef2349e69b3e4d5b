#pragma once

/// Version Control rules: Git usage, large files in Git history, DVC
/// presence, and DVC actually tracking data.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "mllint/config.hpp"
#include "mllint/git.hpp"
#include "mllint/rule.hpp"
#include "mllint/scan.hpp"
#include "mllint/strings.hpp"

namespace mllint {

struct HistoryBlob {
    std::string object_id;
    std::string path; // repository-relative; may be empty for pathless blobs
    std::uint64_t size_bytes = 0;
};

struct HistoryBlobsResult {
    bool ok = false;
    std::string error; // set when !ok
    std::vector<HistoryBlob> blobs;
};

/// Every blob reachable from any ref, deduplicated by object id. Uses
/// `rev-list --objects --all` piped into `cat-file --batch-check`; never
/// touches the object store directly.
inline HistoryBlobsResult list_history_blobs(const ProjectContext& context) {
    HistoryBlobsResult result;
    if (!context.git_available) {
        result.error = "git executable not found";
        return result;
    }
    GitResult rev_list = run_git(context.root, {"rev-list", "--objects", "--all"});
    if (!rev_list.ok) {
        result.error = rev_list.unavailable ? "git executable not found"
                                            : "git rev-list failed: " + std::string(trim(rev_list.error));
        return result;
    }
    GitResult cat_file = run_git(
        context.root,
        {"cat-file", "--batch-check=%(objecttype) %(objectname) %(objectsize) %(rest)"},
        rev_list.output);
    if (!cat_file.ok) {
        result.error = cat_file.unavailable ? "git executable not found"
                                            : "git cat-file failed: " + std::string(trim(cat_file.error));
        return result;
    }
    std::set<std::string> seen;
    for (const std::string& line : split_lines(cat_file.output)) {
        std::vector<std::string> fields = split(line, ' ');
        if (fields.size() < 3 || fields[0] != "blob") continue;
        if (!seen.insert(fields[1]).second) continue;
        HistoryBlob blob;
        blob.object_id = fields[1];
        blob.size_bytes = std::strtoull(fields[2].c_str(), nullptr, 10);
        if (fields.size() > 3) {
            std::string path = fields[3];
            for (size_t i = 4; i < fields.size(); ++i) path += " " + fields[i];
            blob.path = path;
        }
        result.blobs.push_back(std::move(blob));
    }
    result.ok = true;
    return result;
}

inline RuleResult rule_uses_git(const ProjectContext& context) {
    if (context.has_git_dir) return RuleResult::pass(100);
    return RuleResult::pass(
        0,
        "This project is not tracked with Git. Run `git init` in the project root and commit "
        "your work so code changes stay reviewable and reversible.");
}

inline RuleResult rule_no_large_files(const ProjectContext& context,
                                      std::int64_t threshold_bytes) {
    if (!context.has_git_dir) return RuleResult::skip("not a Git repository");
    HistoryBlobsResult history = list_history_blobs(context);
    if (!history.ok) return RuleResult::skip(history.error);

    std::vector<HistoryBlob> offenders;
    for (const HistoryBlob& blob : history.blobs)
        if (blob.size_bytes > static_cast<std::uint64_t>(threshold_bytes))
            offenders.push_back(blob);
    if (offenders.empty()) return RuleResult::pass(100);

    std::sort(offenders.begin(), offenders.end(),
              [](const HistoryBlob& a, const HistoryBlob& b) {
                  if (a.size_bytes != b.size_bytes) return a.size_bytes > b.size_bytes;
                  return a.path < b.path;
              });
    std::string details = "Large files found in the Git history (threshold " +
                          std::to_string(threshold_bytes) + " bytes):\n\n";
    for (const HistoryBlob& blob : offenders) {
        std::string label = blob.path.empty() ? blob.object_id : blob.path;
        details += "- `" + label + "` — " + std::to_string(blob.size_bytes) + " bytes (" +
                   format_str("%.1f", static_cast<double>(blob.size_bytes) / (1024.0 * 1024.0)) +
                   " MiB)\n";
    }
    details +=
        "\nConsider tracking large data files with DVC instead of Git, and rewrite history "
        "(e.g. `git filter-repo`) to drop blobs that should never have been committed.";
    return RuleResult::pass(0, details);
}

inline RuleResult rule_uses_dvc(const ProjectContext& context) {
    if (context.uses_dvc()) return RuleResult::pass(100);
    return RuleResult::pass(
        0,
        "No Data Version Control setup was found (`.dvc/` directory or `dvc.yaml`). Version "
        "your datasets with [DVC](https://dvc.org) so experiments stay reproducible. Note that "
        "only DVC is detected; ad-hoc data-versioning schemes cannot be recognized statically.");
}

inline RuleResult rule_dvc_in_use(const ProjectContext& context) {
    if (!context.uses_dvc())
        return RuleResult::skip("project does not use DVC");
    bool has_pointer = false;
    for (const fs::path& artifact : context.data_versioning_artifacts)
        if (artifact.extension() == ".dvc") has_pointer = true;
    if (has_pointer || context.has_dvc_lock) return RuleResult::pass(100);
    return RuleResult::pass(
        0,
        "DVC is initialized but tracking no data: no `*.dvc` pointer files or `dvc.lock` were "
        "found. Add your datasets with `dvc add <path>` so DVC actually versions them.");
}

} // namespace mllint
