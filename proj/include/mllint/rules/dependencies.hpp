#pragma once

/// Dependency-management rules: manager detection from manifest files,
/// single-manager discipline, and dev/runtime dependency separation.

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mllint/rule.hpp"
#include "mllint/scan.hpp"
#include "mllint/strings.hpp"
#include "mllint/toml.hpp"

namespace mllint {

struct DependencyDecl {
    std::string name;         // normalized: lowercase, [-_.] runs collapsed to '-'
    std::string version_spec; // raw constraint text, possibly empty
    bool pinned = false;      // spec contains '=='
    std::string raw;          // declaration as written (markers/comments stripped)
};

inline bool operator==(const DependencyDecl& a, const DependencyDecl& b) {
    return a.name == b.name && a.version_spec == b.version_spec && a.pinned == b.pinned &&
           a.raw == b.raw;
}

/// PyPA package-name normalization: case-insensitive, runs of `-_.`
/// equivalent to a single dash.
inline std::string normalize_package_name(std::string_view name) {
    std::string out;
    bool in_separator = false;
    for (char c : name) {
        if (c == '-' || c == '_' || c == '.') {
            in_separator = true;
            continue;
        }
        if (in_separator && !out.empty()) out += '-';
        in_separator = false;
        out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return out;
}

/// Parse one requirement declaration ("name[extras]<op>version"); returns
/// nothing for empty lines, comments, and directives (-r/-e/--…).
inline std::optional<DependencyDecl> parse_requirement_line(std::string_view line) {
    std::string_view view = line;
    if (size_t marker = view.find(';'); marker != std::string_view::npos)
        view = view.substr(0, marker);
    if (size_t comment = view.find(" #"); comment != std::string_view::npos)
        view = view.substr(0, comment);
    view = trim(view);
    if (view.empty() || view[0] == '#') return std::nullopt;
    if (view[0] == '-') return std::nullopt; // -r / -e / --directive
    std::string text{view};

    size_t name_end = 0;
    while (name_end < text.size()) {
        char c = text[name_end];
        if (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.') {
            ++name_end;
            continue;
        }
        break;
    }
    if (name_end == 0) return std::nullopt;

    DependencyDecl decl;
    decl.name = normalize_package_name(text.substr(0, name_end));
    std::string rest = text.substr(name_end);
    if (!rest.empty() && rest[0] == '[') { // extras ignored
        if (size_t close = rest.find(']'); close != std::string::npos)
            rest = rest.substr(close + 1);
        else
            rest.clear();
    }
    decl.version_spec = trim(rest);
    decl.pinned = decl.version_spec.find("==") != std::string::npos;
    decl.raw = text;
    return decl;
}

inline std::vector<DependencyDecl> parse_requirements(std::string_view text) {
    std::vector<DependencyDecl> decls;
    for (const std::string& line : split_lines(text))
        if (auto decl = parse_requirement_line(line)) decls.push_back(std::move(*decl));
    return decls;
}

struct ManagerDetection {
    std::string kind; // requirements-txt | setup-py | pipenv | poetry | pep621
    fs::path evidence;
    std::vector<DependencyDecl> runtime_deps;
    std::vector<DependencyDecl> dev_deps;
    bool has_dev_section = false;    // a dev-dependency table/file exists, even if empty
    std::vector<std::string> notes;  // parse warnings and caveats
};

namespace detail {

inline bool dev_named_requirements(const fs::path& file) {
    return to_lower(file.stem().string()).find("dev") != std::string::npos;
}

inline void parse_toml_dep_table(const toml::Value& table, std::vector<DependencyDecl>& out) {
    for (const auto& [name, value] : table.table()) {
        if (to_lower(name) == "python") continue; // interpreter constraint, not a package
        DependencyDecl decl;
        decl.name = normalize_package_name(name);
        if (value.is_string())
            decl.version_spec = value.string();
        else if (value.is_table()) {
            if (const auto* version = value.get("version"); version && version->is_string())
                decl.version_spec = version->string();
        }
        decl.pinned = decl.version_spec.find("==") != std::string::npos;
        decl.raw = name + (decl.version_spec.empty() ? "" : " = \"" + decl.version_spec + "\"");
        out.push_back(std::move(decl));
    }
}

inline ManagerDetection detect_requirements_txt(const ProjectContext& context) {
    ManagerDetection detection;
    detection.kind = "requirements-txt";
    std::vector<fs::path> files = context.manifest_files.at("requirements-txt");
    if (auto it = context.manifest_files.find("dev-requirements");
        it != context.manifest_files.end())
        files.insert(files.end(), it->second.begin(), it->second.end());
    for (const fs::path& file : files) {
        bool dev = dev_named_requirements(file);
        if (!dev && detection.evidence.empty()) detection.evidence = file;
        if (dev) detection.has_dev_section = true;
        std::optional<std::string> text = read_file(context.root / file);
        if (!text) {
            detection.notes.push_back("could not read " + file.string());
            continue;
        }
        std::vector<DependencyDecl> decls = parse_requirements(*text);
        auto& target = dev ? detection.dev_deps : detection.runtime_deps;
        target.insert(target.end(), decls.begin(), decls.end());
    }
    if (detection.evidence.empty()) detection.evidence = files.front();
    return detection;
}

inline ManagerDetection detect_pipenv(const ProjectContext& context) {
    ManagerDetection detection;
    detection.kind = "pipenv";
    detection.evidence = "Pipfile";
    if (!context.pipfile) {
        detection.notes.push_back("Pipfile could not be parsed; dependency lists unavailable");
        return detection;
    }
    if (const auto* packages = context.pipfile->get("packages"); packages && packages->is_table())
        parse_toml_dep_table(*packages, detection.runtime_deps);
    if (const auto* dev = context.pipfile->get("dev-packages"); dev && dev->is_table()) {
        detection.has_dev_section = true;
        parse_toml_dep_table(*dev, detection.dev_deps);
    }
    return detection;
}

inline ManagerDetection detect_poetry(const ProjectContext& context) {
    ManagerDetection detection;
    detection.kind = "poetry";
    detection.evidence = "pyproject.toml";
    const toml::Value& pyproject = *context.pyproject;
    if (const auto* deps = pyproject.get_path({"tool", "poetry", "dependencies"});
        deps && deps->is_table())
        parse_toml_dep_table(*deps, detection.runtime_deps);
    if (const auto* dev = pyproject.get_path({"tool", "poetry", "dev-dependencies"});
        dev && dev->is_table()) {
        detection.has_dev_section = true;
        parse_toml_dep_table(*dev, detection.dev_deps);
    }
    if (const auto* groups = pyproject.get_path({"tool", "poetry", "group"});
        groups && groups->is_table()) {
        for (const auto& [group_name, group] : groups->table()) {
            (void)group_name;
            if (const auto* deps = group.get("dependencies"); deps && deps->is_table()) {
                detection.has_dev_section = true;
                parse_toml_dep_table(*deps, detection.dev_deps);
            }
        }
    }
    return detection;
}

inline ManagerDetection detect_pep621(const ProjectContext& context) {
    ManagerDetection detection;
    detection.kind = "pep621";
    detection.evidence = "pyproject.toml";
    const toml::Value& pyproject = *context.pyproject;
    if (const auto* deps = pyproject.get_path({"project", "dependencies"});
        deps && deps->is_array()) {
        for (const auto& item : deps->array())
            if (item.is_string())
                if (auto decl = parse_requirement_line(item.string()))
                    detection.runtime_deps.push_back(std::move(*decl));
    }
    if (const auto* optional = pyproject.get_path({"project", "optional-dependencies"});
        optional && optional->is_table()) {
        for (const auto& [group, deps] : optional->table()) {
            std::string name = to_lower(group);
            if (name != "dev" && name != "test" && name != "lint") continue;
            detection.has_dev_section = true;
            if (!deps.is_array()) continue;
            for (const auto& item : deps.array())
                if (item.is_string())
                    if (auto decl = parse_requirement_line(item.string()))
                        detection.dev_deps.push_back(std::move(*decl));
        }
    }
    return detection;
}

} // namespace detail

/// One detection per manifest kind present, in fixed order: requirements-txt,
/// setup-py, pipenv, poetry, pep621. A single pyproject.toml yields at most
/// one kind; poetry wins over PEP 621 when both tables are present.
inline std::vector<ManagerDetection> detect_managers(const ProjectContext& context) {
    std::vector<ManagerDetection> detections;
    if (context.has_manifest("requirements-txt"))
        detections.push_back(detail::detect_requirements_txt(context));
    if (context.has_manifest("setup-py")) {
        ManagerDetection detection;
        detection.kind = "setup-py";
        detection.evidence = "setup.py";
        detection.notes.push_back(
            "setup.py dependencies are not extracted: that would require executing the file");
        detections.push_back(std::move(detection));
    }
    if (context.has_manifest("pipfile")) detections.push_back(detail::detect_pipenv(context));
    if (context.has_manifest("pyproject") && context.pyproject) {
        bool has_poetry = context.pyproject->get_path({"tool", "poetry"}) != nullptr;
        bool has_pep621 = context.pyproject->get("project") != nullptr;
        if (has_poetry) {
            ManagerDetection detection = detail::detect_poetry(context);
            if (has_pep621)
                detection.notes.push_back(
                    "pyproject.toml declares both [tool.poetry] and [project]; "
                    "treating it as a Poetry project");
            detections.push_back(std::move(detection));
        } else if (has_pep621) {
            detections.push_back(detail::detect_pep621(context));
        }
    }
    return detections;
}

/// Known development-only tools; one of these sitting in runtime
/// dependencies signals missing dev/runtime separation.
inline const std::set<std::string>& dev_only_tools() {
    static const std::set<std::string> tools = {"pytest",  "black", "isort",      "mypy",
                                                "pylint",  "bandit", "flake8",    "pre-commit"};
    return tools;
}

inline RuleResult rule_uses_manager(const ProjectContext& context) {
    std::vector<ManagerDetection> detections = detect_managers(context);
    if (detections.empty())
        return RuleResult::pass(
            0,
            "No dependency manifest was found (`requirements.txt`, `setup.py`, `Pipfile`, or "
            "`pyproject.toml`). Declare your dependencies with a dependency manager such as "
            "Poetry or Pipenv so others can reproduce your environment.");
    bool any_deps = false;
    for (const ManagerDetection& detection : detections)
        if (!detection.runtime_deps.empty() || !detection.dev_deps.empty()) any_deps = true;
    bool has_lockfile =
        context.has_manifest("poetry-lock") || context.has_manifest("pipfile-lock");
    if (any_deps || has_lockfile) return RuleResult::pass(100);
    return RuleResult::pass(50,
                            "A dependency manifest is present but declares no dependencies. "
                            "List the packages your project imports so the environment is "
                            "reproducible.");
}

inline RuleResult rule_single_manager(const ProjectContext& context) {
    std::vector<ManagerDetection> detections = detect_managers(context);
    if (detections.empty()) return RuleResult::skip("no dependency manager detected");
    if (detections.size() == 1) return RuleResult::pass(100);

    std::string details = "Multiple dependency managers detected:\n\n";
    for (const ManagerDetection& detection : detections)
        details += "- " + detection.kind + " (`" + detection.evidence.string() + "`)\n";

    const ManagerDetection* requirements = nullptr;
    bool has_setup_py = false;
    for (const ManagerDetection& detection : detections) {
        if (detection.kind == "requirements-txt") requirements = &detection;
        if (detection.kind == "setup-py") has_setup_py = true;
    }
    if (requirements && has_setup_py) {
        if (std::optional<std::string> setup_text = read_file(context.root / "setup.py")) {
            std::vector<std::string> duplicated;
            for (const DependencyDecl& decl : requirements->runtime_deps)
                if (decl.pinned && setup_text->find(decl.raw) != std::string::npos)
                    duplicated.push_back(decl.raw);
            if (!duplicated.empty()) {
                details += "\nrequirements.txt pins are duplicated inside setup.py:\n\n";
                for (const std::string& raw : duplicated) details += "- `" + raw + "`\n";
            }
        }
    }
    details +=
        "\nPick one dependency manager as the single source of truth and remove the others.";
    return RuleResult::pass(0, details);
}

inline RuleResult rule_dev_runtime_separation(const ProjectContext& context) {
    std::vector<ManagerDetection> detections = detect_managers(context);
    if (detections.empty()) return RuleResult::skip("no dependency manager detected");

    bool has_dev_section = false;
    std::vector<std::string> leaked;
    for (const ManagerDetection& detection : detections) {
        if (detection.has_dev_section) has_dev_section = true;
        for (const DependencyDecl& decl : detection.runtime_deps)
            if (dev_only_tools().count(decl.name)) leaked.push_back(decl.name);
    }
    std::sort(leaked.begin(), leaked.end());
    leaked.erase(std::unique(leaked.begin(), leaked.end()), leaked.end());

    if (leaked.empty()) return RuleResult::pass(100);

    std::string listing;
    for (const std::string& name : leaked) listing += "- `" + name + "`\n";
    if (has_dev_section)
        return RuleResult::pass(
            50, "Development tools appear among the runtime dependencies even though a "
                "dev-dependency section exists:\n\n" +
                    listing + "\nMove them into the development section.");
    return RuleResult::pass(
        0, "Development tools appear among the runtime dependencies and no dev-dependency "
           "section exists:\n\n" +
               listing +
               "\nSeparate development dependencies (e.g. a Poetry dev group or a "
               "`requirements-dev.txt`) from what the project needs at runtime.");
}

} // namespace mllint
