#pragma once

/// Project scanner: one filesystem walk up front collects everything the
/// rules need, so individual rules stay pure functions over this context.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mllint/git.hpp"
#include "mllint/strings.hpp"
#include "mllint/toml.hpp"

namespace mllint {

namespace fs = std::filesystem;

/// Directory names never worth descending into: VCS metadata, virtualenvs,
/// caches, and other tool-generated trees.
inline const std::set<std::string>& excluded_dir_names() {
    static const std::set<std::string> names = {
        ".git", ".hg",          ".svn",        ".tox",        ".venv",       "venv",
        "env",  "node_modules", "__pycache__", ".mypy_cache", ".pytest_cache",
    };
    return names;
}

/// A directory containing pyvenv.cfg is a virtual environment regardless
/// of its name.
inline bool is_virtualenv(const fs::path& dir) {
    std::error_code ec;
    return fs::is_regular_file(dir / "pyvenv.cfg", ec);
}

/// Heuristic for "this Python file holds tests": test_*.py / *_test.py,
/// or any directory component named test/ or tests/.
inline bool is_test_file(const fs::path& relative) {
    std::string stem = relative.stem().string();
    if (stem.rfind("test_", 0) == 0) return true;
    if (stem.size() >= 5 && stem.compare(stem.size() - 5, 5, "_test") == 0) return true;
    for (auto it = relative.begin(); it != relative.end(); ++it) {
        if (std::next(it) == relative.end()) break; // the filename itself
        std::string part = it->string();
        if (part == "test" || part == "tests") return true;
    }
    return false;
}

struct CiConfig {
    std::string provider; // github | gitlab | azure | travis | jenkins | bitbucket | circleci
    fs::path path;        // relative to root
};

/// Everything the rules may want to know about the project, collected once
/// and immutable afterwards.
struct ProjectContext {
    fs::path root;                      // absolute, normalized
    std::vector<fs::path> python_files; // relative to root, sorted; includes tests
    std::vector<fs::path> test_files;   // subset of python_files
    bool has_git_dir = false;           // `.git` entry exists (dir or pointer file)
    bool git_available = false;         // `git` executable found on PATH
    // manifest kind → file(s): requirements-txt, dev-requirements, setup-py,
    // pipfile, pyproject, poetry-lock, pipfile-lock
    std::map<std::string, std::vector<fs::path>> manifest_files;
    std::vector<CiConfig> ci_configs;
    std::map<std::string, std::string> linter_configs; // tool → evidence location
    std::vector<fs::path> data_versioning_artifacts;   // dvc.yaml, dvc.lock, *.dvc, .dvc/
    std::vector<std::string> warnings;                 // non-fatal scan notes
    std::optional<toml::Value> pyproject;              // parsed pyproject.toml, if valid
    std::optional<toml::Value> pipfile;                // parsed Pipfile, if valid

    bool has_dvc_dir = false;  // .dvc/ directory at root
    bool has_dvc_yaml = false; // dvc.yaml at root
    bool has_dvc_lock = false; // dvc.lock at root

    /// "Project uses DVC" predicate: the tool is set up, regardless of
    /// whether any data is tracked yet.
    bool uses_dvc() const { return has_dvc_dir || has_dvc_yaml; }

    bool has_manifest(const std::string& kind) const { return manifest_files.count(kind) > 0; }
};

inline std::optional<std::string> read_file(const fs::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

namespace detail {

inline std::optional<toml::Value> try_parse_toml(const fs::path& file,
                                                 std::vector<std::string>& warnings,
                                                 const std::string& label) {
    std::optional<std::string> text = read_file(file);
    if (!text) return std::nullopt;
    try {
        return toml::parse(*text);
    } catch (const toml::ParseError& e) {
        warnings.push_back(label + ": " + e.what());
        return std::nullopt;
    }
}

inline void walk(const fs::path& dir, const fs::path& relative, ProjectContext& context) {
    std::error_code ec;
    std::vector<fs::directory_entry> entries;
    for (fs::directory_iterator it(dir, ec); !ec && it != fs::directory_iterator();
         it.increment(ec))
        entries.push_back(*it);
    if (ec) {
        context.warnings.push_back("unreadable directory: " +
                                   (relative.empty() ? std::string(".") : relative.string()));
        return;
    }
    std::sort(entries.begin(), entries.end(),
              [](const fs::directory_entry& a, const fs::directory_entry& b) {
                  return a.path().filename() < b.path().filename();
              });
    for (const fs::directory_entry& entry : entries) {
        std::string name = entry.path().filename().string();
        fs::path entry_relative = relative / name;
        if (entry.is_symlink(ec)) continue; // never follow symlinks
        if (entry.is_directory(ec)) {
            if (excluded_dir_names().count(name)) continue;
            if (relative == ".dvc" && name == "cache") continue; // DVC blob store
            if (is_virtualenv(entry.path())) continue;
            walk(entry.path(), entry_relative, context);
        } else if (entry.is_regular_file(ec)) {
            std::string ext = entry.path().extension().string();
            if (ext == ".py")
                context.python_files.push_back(entry_relative);
            else if (ext == ".dvc")
                context.data_versioning_artifacts.push_back(entry_relative);
        }
    }
}

inline void collect_manifests(ProjectContext& context) {
    std::error_code ec;
    const fs::path& root = context.root;
    std::vector<fs::path> requirements;
    for (const auto& entry : fs::directory_iterator(root, ec)) {
        if (!entry.is_regular_file(ec)) continue;
        std::string name = entry.path().filename().string();
        if (name.rfind("requirements", 0) == 0 && name.size() > 4 &&
            name.compare(name.size() - 4, 4, ".txt") == 0)
            requirements.push_back(name);
    }
    std::sort(requirements.begin(), requirements.end());
    if (!requirements.empty()) context.manifest_files["requirements-txt"] = requirements;
    if (fs::is_regular_file(root / "dev-requirements.txt", ec))
        context.manifest_files["dev-requirements"] = {"dev-requirements.txt"};
    if (fs::is_regular_file(root / "setup.py", ec)) context.manifest_files["setup-py"] = {"setup.py"};
    if (fs::is_regular_file(root / "Pipfile", ec)) context.manifest_files["pipfile"] = {"Pipfile"};
    if (fs::is_regular_file(root / "pyproject.toml", ec))
        context.manifest_files["pyproject"] = {"pyproject.toml"};
    if (fs::is_regular_file(root / "poetry.lock", ec))
        context.manifest_files["poetry-lock"] = {"poetry.lock"};
    if (fs::is_regular_file(root / "Pipfile.lock", ec))
        context.manifest_files["pipfile-lock"] = {"Pipfile.lock"};

    if (context.has_manifest("pyproject"))
        context.pyproject =
            try_parse_toml(root / "pyproject.toml", context.warnings, "pyproject.toml");
    if (context.has_manifest("pipfile"))
        context.pipfile = try_parse_toml(root / "Pipfile", context.warnings, "Pipfile");
}

inline void collect_ci_configs(ProjectContext& context) {
    std::error_code ec;
    const fs::path& root = context.root;
    fs::path workflows = root / ".github" / "workflows";
    if (fs::is_directory(workflows, ec)) {
        std::vector<fs::path> found;
        for (const auto& entry : fs::directory_iterator(workflows, ec)) {
            if (!entry.is_regular_file(ec)) continue;
            std::string ext = entry.path().extension().string();
            if (ext == ".yml" || ext == ".yaml")
                found.push_back(entry.path().lexically_relative(root));
        }
        std::sort(found.begin(), found.end());
        for (fs::path& path : found) context.ci_configs.push_back({"github", std::move(path)});
    }
    struct Candidate {
        const char* provider;
        const char* path;
    };
    for (const Candidate& candidate : std::initializer_list<Candidate>{
             {"gitlab", ".gitlab-ci.yml"},
             {"azure", "azure-pipelines.yml"},
             {"travis", ".travis.yml"},
             {"jenkins", "Jenkinsfile"},
             {"bitbucket", "bitbucket-pipelines.yml"},
         }) {
        if (fs::is_regular_file(root / candidate.path, ec))
            context.ci_configs.push_back({candidate.provider, candidate.path});
    }
    if (fs::is_regular_file(root / ".circleci" / "config.yml", ec))
        context.ci_configs.push_back({"circleci", fs::path(".circleci") / "config.yml"});
}

/// True when an INI-style file contains a `[section]` header.
inline bool ini_has_section(const fs::path& file, const std::string& section) {
    std::optional<std::string> text = read_file(file);
    if (!text) return false;
    for (const std::string& raw : split_lines(*text))
        if (trim(raw) == "[" + section + "]") return true;
    return false;
}

inline void collect_linter_configs(ProjectContext& context) {
    std::error_code ec;
    const fs::path& root = context.root;
    auto pyproject_tool = [&](const char* tool) {
        return context.pyproject && context.pyproject->get_path({"tool", tool}) != nullptr;
    };

    if (fs::is_regular_file(root / ".pylintrc", ec))
        context.linter_configs["pylint"] = ".pylintrc";
    else if (pyproject_tool("pylint"))
        context.linter_configs["pylint"] = "pyproject.toml [tool.pylint]";

    if (fs::is_regular_file(root / "mypy.ini", ec))
        context.linter_configs["mypy"] = "mypy.ini";
    else if (fs::is_regular_file(root / "setup.cfg", ec) &&
             ini_has_section(root / "setup.cfg", "mypy"))
        context.linter_configs["mypy"] = "setup.cfg [mypy]";
    else if (pyproject_tool("mypy"))
        context.linter_configs["mypy"] = "pyproject.toml [tool.mypy]";

    if (pyproject_tool("black")) context.linter_configs["black"] = "pyproject.toml [tool.black]";

    if (fs::is_regular_file(root / ".isort.cfg", ec))
        context.linter_configs["isort"] = ".isort.cfg";
    else if (pyproject_tool("isort"))
        context.linter_configs["isort"] = "pyproject.toml [tool.isort]";

    if (fs::is_regular_file(root / ".bandit", ec))
        context.linter_configs["bandit"] = ".bandit";
    else if (pyproject_tool("bandit"))
        context.linter_configs["bandit"] = "pyproject.toml [tool.bandit]";
}

} // namespace detail

inline ProjectContext scan(const fs::path& requested_root) {
    std::error_code ec;
    fs::path root = fs::absolute(requested_root, ec).lexically_normal();
    while (root.has_parent_path() && root.filename().empty()) root = root.parent_path();
    if (ec || !fs::is_directory(root))
        throw std::runtime_error("not a directory: " + requested_root.string());

    ProjectContext context;
    context.root = root;

    fs::file_status git_entry = fs::symlink_status(root / ".git", ec);
    context.has_git_dir = !ec && fs::exists(git_entry);
    context.git_available = git_available();

    detail::walk(root, fs::path(), context);
    std::sort(context.python_files.begin(), context.python_files.end());
    for (const fs::path& file : context.python_files)
        if (is_test_file(file)) context.test_files.push_back(file);

    context.has_dvc_dir = fs::is_directory(root / ".dvc", ec);
    context.has_dvc_yaml = fs::is_regular_file(root / "dvc.yaml", ec);
    context.has_dvc_lock = fs::is_regular_file(root / "dvc.lock", ec);
    if (context.has_dvc_dir) context.data_versioning_artifacts.push_back(".dvc");
    if (context.has_dvc_yaml) context.data_versioning_artifacts.push_back("dvc.yaml");
    if (context.has_dvc_lock) context.data_versioning_artifacts.push_back("dvc.lock");
    std::sort(context.data_versioning_artifacts.begin(), context.data_versioning_artifacts.end());

    detail::collect_manifests(context);
    detail::collect_ci_configs(context);
    detail::collect_linter_configs(context);
    return context;
}

} // namespace mllint
