#pragma once

/// The built-in rule registry. Order is fixed and is the order rules and
/// categories appear in reports.

#include <vector>

#include "mllint/rule.hpp"

namespace mllint {

inline const std::vector<Rule>& builtin_rules() {
    static const std::vector<Rule> rules = {
        {"version-control.code.git", "Project uses Git", Category::version_control,
         "Source code should be version controlled with Git so that every change is tracked, "
         "reviewable and revertible. Run `git init` in the project root, create a `.gitignore` "
         "for caches and virtual environments, and commit your code in small, focused commits."},

        {"version-control.code.git-no-big-files",
         "Project should not have any large files in its Git history", Category::version_control,
         "Large binary files (datasets, model weights, bulky notebooks) bloat the repository "
         "forever: Git keeps every version of every blob. Keep data out of Git and track it with "
         "a data versioning tool instead. To remove an already-committed large file, rewrite "
         "history with `git filter-repo --strip-blobs-bigger-than 10M` and force-push."},

        {"version-control.data.dvc", "Project uses Data Version Control",
         Category::version_control,
         "Datasets change just like code does, so they should be versioned alongside it. DVC "
         "stores data in a cache or remote while committing only small pointer files to Git. "
         "Install it with `pip install dvc` and initialise the project with `dvc init`."},

        {"version-control.data.dvc-in-use", "DVC is tracking data files",
         Category::version_control,
         "Initialising DVC is not enough: at least one dataset should actually be tracked. Add "
         "data with `dvc add data/your-dataset.csv` (creating a `.dvc` pointer file to commit) "
         "or define pipeline stages in `dvc.yaml` so `dvc repro` records a `dvc.lock`."},

        {"dependency-management.use", "Project uses a dependency manager",
         Category::dependency_management,
         "Declaring dependencies in a manifest makes the project installable and reproducible "
         "for everyone else. Use Poetry (`pyproject.toml`), Pipenv (`Pipfile`), PEP 621 project "
         "metadata, or at minimum a groomed `requirements.txt`, and declare every library the "
         "project imports with sensible version constraints."},

        {"dependency-management.single", "Project uses a single dependency manager",
         Category::dependency_management,
         "Multiple manifests (for example `requirements.txt` duplicated inside `setup.py`) "
         "drift apart and leave newcomers guessing which one is authoritative. Pick one "
         "dependency manager as the source of truth, generate the others from it if some tool "
         "requires them, and remove the duplicates."},

        {"dependency-management.dev-separation",
         "Project separates development dependencies from runtime dependencies",
         Category::dependency_management,
         "Tools for developing the project (pytest, linters, formatters) should not be installed "
         "with the application in production. Declare them in a dev group: Poetry's "
         "`[tool.poetry.group.dev.dependencies]`, Pipenv's `[dev-packages]`, a PEP 621 "
         "`dev` optional-dependency group, or a separate `requirements-dev.txt`."},

        {"continuous-integration.use", "Project uses Continuous Integration",
         Category::continuous_integration,
         "CI runs your checks on every change, catching breakage before it spreads. Add a "
         "pipeline configuration for your platform: a workflow under `.github/workflows/` with "
         "at least one job, a `.gitlab-ci.yml`, an `azure-pipelines.yml`, a `Jenkinsfile`, a "
         "`bitbucket-pipelines.yml` or a `.circleci/config.yml`."},

        {"code-quality.use-linters", "Project uses code quality linters", Category::code_quality,
         "Static analysis catches bugs and inconsistencies before they cost you a training run. "
         "Adopt Pylint (correctness and smells), Mypy (type checking), Black (formatting), "
         "isort (import order) and Bandit (security). Add each tool to your development "
         "dependencies or commit a configuration for it, e.g. a `[tool.black]` section in "
         "`pyproject.toml`."},

        {"code-quality.no-issues", "Linters report no warnings about the project's code",
         Category::code_quality,
         "Once linters are adopted, their findings should trend to zero: a noisy baseline hides "
         "new, real problems. Fix warnings as they appear, run the linters locally and in CI, "
         "and disable individual checks in the linter's configuration when your team decides "
         "they do not apply."},

        {"testing.has-tests", "Project has automated tests", Category::testing,
         "Automated tests document intended behaviour and keep refactoring safe. Create a "
         "`tests/` directory with `test_*.py` files runnable by pytest; aim for roughly one "
         "test file per four source files as a floor, not a ceiling."},

        {"testing.pass", "Project's tests pass", Category::testing,
         "A failing test suite means the project's own contract is broken. Run your tests with "
         "`pytest --junitxml=reports/junit.xml` so the results are recorded, and fix or "
         "explicitly skip failing tests. This check reads the report from a prior test run; it "
         "never executes project code itself."},

        {"testing.coverage", "Project reports test coverage", Category::testing,
         "Coverage shows which code your tests never touch. Produce a Cobertura-style report "
         "with `pytest --cov --cov-report=xml:reports/coverage.xml` and keep line coverage "
         "above your target (80% by default here)."},
    };
    return rules;
}

inline const Rule* find_builtin_rule(std::string_view slug) {
    for (const Rule& rule : builtin_rules())
        if (rule.slug == slug) return &rule;
    return nullptr;
}

} // namespace mllint
