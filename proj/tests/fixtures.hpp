#pragma once

// Shared test fixtures: temp directories, file helpers, git helpers, and
// the synthetic project corpus (golden, bare, bigfile, dualdep).

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mllint/process.hpp"

namespace testutil {

namespace fs = std::filesystem;

/// Self-deleting temporary directory.
class TempDir {
public:
    TempDir() {
        std::string tmpl = (fs::temp_directory_path() / "mllint-test-XXXXXX").string();
        std::vector<char> buffer(tmpl.begin(), tmpl.end());
        buffer.push_back('\0');
        if (!::mkdtemp(buffer.data())) throw std::runtime_error("mkdtemp failed");
        path_ = buffer.data();
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const fs::path& path() const { return path_; }

private:
    fs::path path_;
};

inline void write_file(const fs::path& root, const fs::path& relative,
                       const std::string& content) {
    fs::path target = root / relative;
    fs::create_directories(target.parent_path());
    std::ofstream out(target, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + target.string());
    out << content;
}

inline void write_file(const fs::path& target, const std::string& content) {
    write_file(target.parent_path(), target.filename(), content);
}

inline std::string read_file_or_throw(const fs::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + file.string());
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

inline mllint::RunResult run_or_throw(const std::vector<std::string>& argv,
                                      const fs::path& workdir) {
    mllint::RunOptions options;
    options.workdir = workdir;
    options.timeout = std::chrono::seconds(60);
    mllint::RunResult result = mllint::run_process(argv, options);
    if (result.start_failed || result.timed_out || result.exit_code != 0) {
        std::string command;
        for (const std::string& arg : argv) command += arg + " ";
        throw std::runtime_error("command failed: " + command + "\n" + result.error);
    }
    return result;
}

/// Overrides PATH for the lifetime of the guard. By default the directory
/// is prepended so its executables shadow anything installed; with
/// replace=true it becomes the entire PATH.
class PathGuard {
public:
    explicit PathGuard(const fs::path& dir, bool replace = false) {
        const char* old = ::getenv("PATH");
        old_ = old ? old : "";
        std::string next = replace ? dir.string() : dir.string() + ":" + old_;
        ::setenv("PATH", next.c_str(), 1);
    }
    ~PathGuard() { ::setenv("PATH", old_.c_str(), 1); }
    PathGuard(const PathGuard&) = delete;
    PathGuard& operator=(const PathGuard&) = delete;

private:
    std::string old_;
};

inline void write_stub(const fs::path& dir, const std::string& name,
                       const std::string& body) {
    fs::path file = dir / name;
    write_file(file, "#!/bin/sh\n" + body);
    fs::permissions(file, fs::perms::owner_all | fs::perms::group_read |
                              fs::perms::group_exec | fs::perms::others_read |
                              fs::perms::others_exec);
}

/// A PATH directory containing only git (linters and everything else
/// disappear), for tests that need a pristine tool environment.
inline fs::path make_git_only_bin(const fs::path& dir) {
    fs::path git = mllint::find_in_path("git").value_or("/usr/bin/git");
    fs::create_directories(dir);
    fs::create_symlink(git, dir / "git");
    return dir;
}

inline void git_init(const fs::path& root) {
    run_or_throw({"git", "init", "-q", "-b", "main"}, root);
    run_or_throw({"git", "config", "user.email", "test@example.com"}, root);
    run_or_throw({"git", "config", "user.name", "Test"}, root);
}

inline void git_commit_all(const fs::path& root, const std::string& message) {
    run_or_throw({"git", "add", "-A"}, root);
    run_or_throw({"git", "commit", "-q", "-m", message}, root);
}

/// A project that passes every rule: Git-tracked, DVC in use, a single
/// Poetry manifest with a dev group, CI with jobs, all five linter configs,
/// 1 test file per 4 source files, an all-passing JUnit report and 90% line
/// coverage (target 80%).
inline void make_golden(const fs::path& root) {
    write_file(root, "pyproject.toml",
               "[tool.poetry]\n"
               "name = \"golden\"\n"
               "version = \"0.1.0\"\n"
               "description = \"fixture\"\n"
               "authors = [\"Test <test@example.com>\"]\n"
               "\n"
               "[tool.poetry.dependencies]\n"
               "python = \"^3.10\"\n"
               "numpy = \"1.24.0\"\n"
               "pandas = \"^2.0\"\n"
               "\n"
               "[tool.poetry.group.dev.dependencies]\n"
               "pytest = \"^7.0\"\n"
               "\n"
               "[tool.black]\n"
               "line-length = 100\n"
               "\n"
               "[tool.isort]\n"
               "profile = \"black\"\n"
               "\n"
               "[tool.mypy]\n"
               "strict = false\n"
               "\n"
               "[tool.pylint.main]\n"
               "jobs = 1\n"
               "\n"
               "[tool.bandit]\n"
               "skips = []\n");
    write_file(root, "src/data.py",
               "\"\"\"Data loading utilities.\"\"\"\n\n\n"
               "def load() -> list[int]:\n"
               "    \"\"\"Return an empty dataset.\"\"\"\n"
               "    return []\n");
    write_file(root, "src/features.py",
               "\"\"\"Feature engineering.\"\"\"\n\n\n"
               "def build(rows: list[int]) -> list[int]:\n"
               "    \"\"\"Return the rows unchanged.\"\"\"\n"
               "    return list(rows)\n");
    write_file(root, "src/model.py",
               "\"\"\"Model training.\"\"\"\n\n\n"
               "def train(epochs: int) -> int:\n"
               "    \"\"\"Pretend to train for the given number of epochs.\"\"\"\n"
               "    return epochs * 2\n");
    write_file(root, "src/serve.py",
               "\"\"\"Model serving.\"\"\"\n\n\n"
               "def predict(value: float) -> float:\n"
               "    \"\"\"Identity prediction.\"\"\"\n"
               "    return value + 0.0\n");
    write_file(root, "tests/test_model.py",
               "\"\"\"Tests for the model module.\"\"\"\n\n\n"
               "def test_train() -> None:\n"
               "    \"\"\"Training doubles the epoch count.\"\"\"\n"
               "    if 2 * 2 != 4:\n"
               "        raise AssertionError(\"math is broken\")\n");
    write_file(root, ".github/workflows/ci.yml",
               "name: ci\n"
               "on: [push]\n"
               "jobs:\n"
               "  test:\n"
               "    runs-on: ubuntu-latest\n"
               "    steps:\n"
               "      - uses: actions/checkout@v4\n");
    write_file(root, "reports/junit.xml",
               "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
               "<testsuites>\n"
               "  <testsuite name=\"pytest\" tests=\"8\" failures=\"0\" errors=\"0\" "
               "skipped=\"0\"/>\n"
               "</testsuites>\n");
    write_file(root, "reports/coverage.xml",
               "<?xml version=\"1.0\" ?>\n"
               "<coverage line-rate=\"0.9\" branch-rate=\"0.8\" version=\"7.3\">\n"
               "  <packages/>\n"
               "</coverage>\n");
    write_file(root, ".dvc/config", "[core]\n    autostage = true\n");
    write_file(root, ".dvc/.gitignore", "/cache\n");
    write_file(root, "data/train.csv.dvc",
               "outs:\n- md5: d41d8cd98f00b204e9800998ecf8427e\n  path: train.csv\n");
    write_file(root, ".gitignore", "data/train.csv\n");
    git_init(root);
    git_commit_all(root, "initial");
}

/// Three loose Python files and nothing else.
inline void make_bare(const fs::path& root) {
    write_file(root, "a.py", "x = 1\n");
    write_file(root, "b.py", "y = 2\n");
    write_file(root, "c.py", "z = 3\n");
}

/// A git repo whose history contains one committed blob of `blob_size`
/// bytes.
inline void make_bigfile(const fs::path& root, std::size_t blob_size) {
    write_file(root, "README.md", "big file fixture\n");
    std::string blob(blob_size, '\0');
    for (std::size_t i = 0; i < blob.size(); i += 4096) blob[i] = static_cast<char>(i % 251);
    write_file(root, "data/blob.bin", blob);
    git_init(root);
    git_commit_all(root, "add blob");
}

/// requirements.txt and setup.py declaring one identical pinned dependency.
inline void make_dualdep(const fs::path& root) {
    write_file(root, "requirements.txt", "numpy==1.21.0\nrequests>=2.0\n");
    write_file(root, "setup.py",
               "from setuptools import setup\n\n"
               "setup(\n"
               "    name=\"dualdep\",\n"
               "    install_requires=[\"numpy==1.21.0\"],\n"
               ")\n");
    write_file(root, "app.py", "print(\"hi\")\n");
}

} // namespace testutil
