#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "mllint/rules/dependencies.hpp"
#include "mllint/scan.hpp"

using mllint::DependencyDecl;
using mllint::ManagerDetection;
using mllint::RuleResult;
using mllint::RuleStatus;
using mllint::detect_managers;
using mllint::normalize_package_name;
using mllint::parse_requirement_line;
using mllint::parse_requirements;
using mllint::scan;
using testutil::TempDir;
using testutil::write_file;

TEST_CASE("package name normalization follows the packaging rules") {
    CHECK(normalize_package_name("Scikit_Learn") == "scikit-learn");
    CHECK(normalize_package_name("scikit-learn") == "scikit-learn");
    CHECK(normalize_package_name("zope.interface") == "zope-interface");
    CHECK(normalize_package_name("A__b--c..d") == "a-b-c-d");
    CHECK(normalize_package_name("NumPy") == "numpy");
    // Idempotence: normalizing a normalized name changes nothing.
    for (const char* name : {"Scikit_Learn", "zope.interface", "笑"}) {
        std::string once = normalize_package_name(name);
        CHECK(normalize_package_name(once) == once);
    }
}

TEST_CASE("parse_requirement_line handles the documented examples") {
    auto pinned = parse_requirement_line("numpy==1.21.0");
    REQUIRE(pinned.has_value());
    CHECK(pinned->name == "numpy");
    CHECK(pinned->version_spec == "==1.21.0");
    CHECK(pinned->pinned);

    CHECK_FALSE(parse_requirement_line("# comment").has_value());
    CHECK_FALSE(parse_requirement_line("").has_value());
    CHECK_FALSE(parse_requirement_line("   ").has_value());

    auto marker = parse_requirement_line("Scikit_Learn>=1.0 ; python_version>\"3.7\"");
    REQUIRE(marker.has_value());
    CHECK(marker->name == "scikit-learn");
    CHECK(marker->version_spec == ">=1.0");
    CHECK_FALSE(marker->pinned);
}

TEST_CASE("parse_requirement_line skips directives and strips decorations") {
    CHECK_FALSE(parse_requirement_line("-r other.txt").has_value());
    CHECK_FALSE(parse_requirement_line("-e .").has_value());
    CHECK_FALSE(parse_requirement_line("--index-url https://pypi.org/simple").has_value());

    auto commented = parse_requirement_line("requests>=2.0  # http client");
    REQUIRE(commented.has_value());
    CHECK(commented->name == "requests");
    CHECK(commented->version_spec == ">=2.0");

    auto extras = parse_requirement_line("uvicorn[standard]==0.23.1");
    REQUIRE(extras.has_value());
    CHECK(extras->name == "uvicorn");
    CHECK(extras->version_spec == "==0.23.1");
    CHECK(extras->pinned);

    auto bare = parse_requirement_line("flask");
    REQUIRE(bare.has_value());
    CHECK(bare->name == "flask");
    CHECK(bare->version_spec.empty());
    CHECK_FALSE(bare->pinned);
}

TEST_CASE("parse_requirements against a hand-built ten-line table") {
    const std::string text =
        "numpy==1.21.0\n"
        "# a comment line\n"
        "pandas>=1.3,<2.0\n"
        "Scikit_Learn>=1.0 ; python_version>\"3.7\"\n"
        "\n"
        "-r extra.txt\n"
        "uvicorn[standard]==0.23.1\n"
        "torch\n"
        "requests>=2.0  # http client\n"
        "Django~=4.2\n";
    std::vector<DependencyDecl> decls = parse_requirements(text);
    REQUIRE(decls.size() == 7);
    CHECK(decls[0].name == "numpy");
    CHECK(decls[0].pinned);
    CHECK(decls[1].name == "pandas");
    CHECK(decls[1].version_spec == ">=1.3,<2.0");
    CHECK(decls[2].name == "scikit-learn");
    CHECK(decls[2].version_spec == ">=1.0");
    CHECK(decls[3].name == "uvicorn");
    CHECK(decls[3].pinned);
    CHECK(decls[4].name == "torch");
    CHECK(decls[4].version_spec.empty());
    CHECK(decls[5].name == "requests");
    CHECK(decls[5].version_spec == ">=2.0");
    CHECK(decls[6].name == "django");
    CHECK(decls[6].version_spec == "~=4.2");
    CHECK_FALSE(decls[6].pinned);
}

TEST_CASE("parse_requirements is idempotent on its own normal form") {
    const std::string text = "numpy==1.21.0\npandas>=1.3\nflask\n";
    std::vector<DependencyDecl> first = parse_requirements(text);
    std::string reserialized;
    for (const DependencyDecl& decl : first) reserialized += decl.raw + "\n";
    CHECK(parse_requirements(reserialized) == first);
}

TEST_CASE("detect_managers reports one detection per manifest kind in fixed order") {
    TempDir dir;
    write_file(dir.path() / "requirements.txt", "numpy==1.21.0\n");
    write_file(dir.path() / "setup.py", "from setuptools import setup\nsetup()\n");
    write_file(dir.path() / "Pipfile", "[packages]\nflask = \"*\"\n");
    write_file(dir.path() / "pyproject.toml",
               "[tool.poetry]\nname = \"x\"\n[tool.poetry.dependencies]\nnumpy = \"^1.21\"\n");
    std::vector<ManagerDetection> detections = detect_managers(scan(dir.path()));
    REQUIRE(detections.size() == 4);
    CHECK(detections[0].kind == "requirements-txt");
    CHECK(detections[1].kind == "setup-py");
    CHECK(detections[2].kind == "pipenv");
    CHECK(detections[3].kind == "poetry");
}

TEST_CASE("a single requirements.txt yields a single detection") {
    TempDir dir;
    write_file(dir.path() / "requirements.txt", "numpy==1.21.0\n");
    std::vector<ManagerDetection> detections = detect_managers(scan(dir.path()));
    REQUIRE(detections.size() == 1);
    CHECK(detections[0].kind == "requirements-txt");
    CHECK(detections[0].evidence == std::filesystem::path("requirements.txt"));
    REQUIRE(detections[0].runtime_deps.size() == 1);
    CHECK(detections[0].runtime_deps[0].name == "numpy");
}

TEST_CASE("multiple requirements files are one workflow; dev-named ones feed devDeps") {
    TempDir dir;
    write_file(dir.path() / "requirements.txt", "numpy==1.21.0\n");
    write_file(dir.path() / "requirements-gpu.txt", "torch\n");
    write_file(dir.path() / "requirements-dev.txt", "pytest\nblack\n");
    std::vector<ManagerDetection> detections = detect_managers(scan(dir.path()));
    REQUIRE(detections.size() == 1);
    CHECK(detections[0].runtime_deps.size() == 2);
    CHECK(detections[0].dev_deps.size() == 2);
    CHECK(detections[0].has_dev_section);
}

TEST_CASE("dev-requirements.txt is recognized as the dev file") {
    TempDir dir;
    write_file(dir.path() / "requirements.txt", "numpy\n");
    write_file(dir.path() / "dev-requirements.txt", "pytest\n");
    std::vector<ManagerDetection> detections = detect_managers(scan(dir.path()));
    REQUIRE(detections.size() == 1);
    CHECK(detections[0].has_dev_section);
    REQUIRE(detections[0].dev_deps.size() == 1);
    CHECK(detections[0].dev_deps[0].name == "pytest");
}

TEST_CASE("poetry wins over PEP 621 with an explanatory note") {
    TempDir dir;
    write_file(dir.path() / "pyproject.toml",
               "[project]\nname = \"x\"\ndependencies = [\"numpy\"]\n"
               "[tool.poetry]\nname = \"x\"\n"
               "[tool.poetry.dependencies]\npandas = \"^2.0\"\n");
    std::vector<ManagerDetection> detections = detect_managers(scan(dir.path()));
    REQUIRE(detections.size() == 1);
    CHECK(detections[0].kind == "poetry");
    REQUIRE(detections[0].runtime_deps.size() == 1);
    CHECK(detections[0].runtime_deps[0].name == "pandas");
    REQUIRE_FALSE(detections[0].notes.empty());
    CHECK(detections[0].notes[0].find("Poetry") != std::string::npos);
}

TEST_CASE("PEP 621 projects parse dependencies and optional dev groups") {
    TempDir dir;
    write_file(dir.path() / "pyproject.toml",
               "[project]\nname = \"x\"\n"
               "dependencies = [\"numpy>=1.21\", \"pandas\"]\n"
               "[project.optional-dependencies]\n"
               "dev = [\"pytest\", \"black\"]\n"
               "docs = [\"sphinx\"]\n");
    std::vector<ManagerDetection> detections = detect_managers(scan(dir.path()));
    REQUIRE(detections.size() == 1);
    CHECK(detections[0].kind == "pep621");
    CHECK(detections[0].runtime_deps.size() == 2);
    CHECK(detections[0].has_dev_section);
    // Only dev/test/lint groups count as dev separation; docs does not leak in.
    CHECK(detections[0].dev_deps.size() == 2);
}

TEST_CASE("poetry dev groups old and new style populate devDeps") {
    TempDir dir;
    write_file(dir.path() / "pyproject.toml",
               "[tool.poetry]\nname = \"x\"\n"
               "[tool.poetry.dependencies]\npython = \"^3.10\"\nnumpy = \"^1.21\"\n"
               "[tool.poetry.dev-dependencies]\nblack = \"*\"\n"
               "[tool.poetry.group.dev.dependencies]\npytest = \"^7.0\"\n");
    std::vector<ManagerDetection> detections = detect_managers(scan(dir.path()));
    REQUIRE(detections.size() == 1);
    // The python interpreter constraint is not a dependency.
    REQUIRE(detections[0].runtime_deps.size() == 1);
    CHECK(detections[0].runtime_deps[0].name == "numpy");
    CHECK(detections[0].dev_deps.size() == 2);
    CHECK(detections[0].has_dev_section);
}

TEST_CASE("setup.py dependencies are never extracted") {
    TempDir dir;
    write_file(dir.path() / "setup.py",
               "from setuptools import setup\nsetup(install_requires=[\"numpy==1.21.0\"])\n");
    std::vector<ManagerDetection> detections = detect_managers(scan(dir.path()));
    REQUIRE(detections.size() == 1);
    CHECK(detections[0].kind == "setup-py");
    CHECK(detections[0].runtime_deps.empty());
    REQUIRE_FALSE(detections[0].notes.empty());
    CHECK(detections[0].notes[0].find("executing") != std::string::npos);
}

TEST_CASE("a broken Pipfile keeps the detection with a parse note") {
    TempDir dir;
    write_file(dir.path() / "Pipfile", "[packages\nnumpy = \"*\"\n");
    std::vector<ManagerDetection> detections = detect_managers(scan(dir.path()));
    REQUIRE(detections.size() == 1);
    CHECK(detections[0].kind == "pipenv");
    CHECK(detections[0].runtime_deps.empty());
    CHECK_FALSE(detections[0].notes.empty());
}

TEST_CASE("uses-manager tiers: none 0, empty manifest 50, real deps 100") {
    TempDir none;
    write_file(none.path() / "app.py", "x = 1\n");
    RuleResult zero = mllint::rule_uses_manager(scan(none.path()));
    CHECK(zero.score == 0.0);
    CHECK_FALSE(zero.details.empty());

    TempDir empty;
    write_file(empty.path() / "requirements.txt", "# nothing yet\n");
    CHECK(mllint::rule_uses_manager(scan(empty.path())).score == 50.0);

    TempDir full;
    write_file(full.path() / "requirements.txt", "numpy==1.21.0\n");
    CHECK(mllint::rule_uses_manager(scan(full.path())).score == 100.0);
}

TEST_CASE("a lockfile proves dependency management even with empty manifests") {
    TempDir dir;
    write_file(dir.path() / "pyproject.toml", "[tool.poetry]\nname = \"x\"\n");
    write_file(dir.path() / "poetry.lock", "# generated\n");
    CHECK(mllint::rule_uses_manager(scan(dir.path())).score == 100.0);

    TempDir pipenv_dir;
    write_file(pipenv_dir.path() / "Pipfile", "[packages]\n");
    write_file(pipenv_dir.path() / "Pipfile.lock", "{}\n");
    CHECK(mllint::rule_uses_manager(scan(pipenv_dir.path())).score == 100.0);
}

TEST_CASE("single-manager: skipped with none, 100 with one, 0 with several") {
    TempDir none;
    write_file(none.path() / "app.py", "x = 1\n");
    CHECK(mllint::rule_single_manager(scan(none.path())).status == RuleStatus::skipped);

    TempDir one;
    write_file(one.path() / "requirements.txt", "numpy\n");
    CHECK(mllint::rule_single_manager(scan(one.path())).score == 100.0);

    TempDir two;
    write_file(two.path() / "requirements.txt", "numpy\n");
    write_file(two.path() / "Pipfile", "[packages]\n");
    RuleResult result = mllint::rule_single_manager(scan(two.path()));
    CHECK(result.score == 0.0);
    CHECK(result.details.find("requirements-txt") != std::string::npos);
    CHECK(result.details.find("pipenv") != std::string::npos);
}

TEST_CASE("single-manager flags duplicated pins between requirements.txt and setup.py") {
    TempDir dir;
    testutil::make_dualdep(dir.path());
    RuleResult result = mllint::rule_single_manager(scan(dir.path()));
    CHECK(result.status == RuleStatus::evaluated);
    CHECK(result.score == 0.0);
    CHECK(result.details.find("numpy==1.21.0") != std::string::npos);
    CHECK(result.details.find("duplicated") != std::string::npos);
    // The unpinned requirement is not claimed to be duplicated.
    CHECK(result.details.find("requests") == std::string::npos);
}

TEST_CASE("adding a second manager never raises the single-manager score") {
    TempDir one;
    write_file(one.path() / "requirements.txt", "numpy\n");
    double single = mllint::rule_single_manager(scan(one.path())).score;
    write_file(one.path() / "setup.py", "from setuptools import setup\nsetup()\n");
    double dual = mllint::rule_single_manager(scan(one.path())).score;
    CHECK(dual <= single);
}

TEST_CASE("dev-separation covers all four outcomes") {
    // 100: dev tools confined to the dev section.
    TempDir clean;
    write_file(clean.path() / "pyproject.toml",
               "[tool.poetry]\nname = \"x\"\n"
               "[tool.poetry.dependencies]\nnumpy = \"^1.21\"\n"
               "[tool.poetry.group.dev.dependencies]\npytest = \"^7.0\"\n");
    CHECK(mllint::rule_dev_runtime_separation(scan(clean.path())).score == 100.0);

    // 100: nothing to separate.
    TempDir vacuous;
    write_file(vacuous.path() / "requirements.txt", "numpy\npandas\n");
    CHECK(mllint::rule_dev_runtime_separation(scan(vacuous.path())).score == 100.0);

    // 50: dev section exists but a dev tool leaks into runtime.
    TempDir leaky;
    write_file(leaky.path() / "requirements.txt", "numpy\npytest\n");
    write_file(leaky.path() / "requirements-dev.txt", "black\n");
    RuleResult leak = mllint::rule_dev_runtime_separation(scan(leaky.path()));
    CHECK(leak.score == 50.0);
    CHECK(leak.details.find("pytest") != std::string::npos);

    // 0: no dev section and dev tools in runtime deps.
    TempDir flat;
    write_file(flat.path() / "requirements.txt", "numpy\npytest\n");
    RuleResult flat_result = mllint::rule_dev_runtime_separation(scan(flat.path()));
    CHECK(flat_result.score == 0.0);
    CHECK(flat_result.details.find("pytest") != std::string::npos);

    // Skipped: no manager at all.
    TempDir none;
    write_file(none.path() / "app.py", "x = 1\n");
    CHECK(mllint::rule_dev_runtime_separation(scan(none.path())).status ==
          RuleStatus::skipped);
}

TEST_CASE("dev-separation recognizes every listed dev-only tool") {
    for (const std::string& tool : mllint::dev_only_tools()) {
        TempDir dir;
        write_file(dir.path() / "requirements.txt", "numpy\n" + tool + "\n");
        INFO("tool " << tool);
        CHECK(mllint::rule_dev_runtime_separation(scan(dir.path())).score == 0.0);
    }
}
