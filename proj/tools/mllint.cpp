// mllint CLI: lint a Python ML project and print a scored report.

#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mllint/mllint.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailUnder = 1;
constexpr int kExitUsage = 2;
constexpr int kExitFatal = 3;

bool color_allowed() {
    if (std::getenv("NO_COLOR") != nullptr) return false;
    return ::isatty(STDOUT_FILENO) == 1;
}

struct RunArgs {
    std::string path = ".";
    std::string output;
    std::string format = "markdown";
    std::string profile;
    double fail_under = -1;
    bool fail_under_set = false;
    bool quiet = false;
};

int do_run(const RunArgs& args) {
    mllint::Config config;
    try {
        config = mllint::load_config(args.path);
        if (!args.profile.empty()) config.profile = args.profile;
    } catch (const mllint::ConfigError& e) {
        std::cerr << "mllint: configuration error: " << e.what() << "\n";
        return kExitUsage;
    }

    mllint::Report report;
    try {
        report = mllint::lint_project(args.path, config);
    } catch (const std::exception& e) {
        std::cerr << "mllint: " << e.what() << "\n";
        return kExitFatal;
    }

    std::string rendered = args.format == "json"
                               ? mllint::render_json(report)
                               : mllint::render_markdown(report, !args.quiet);
    if (!args.output.empty() && args.output != "-") {
        std::ofstream out(args.output, std::ios::binary);
        if (!out) {
            std::cerr << "mllint: cannot write " << args.output << "\n";
            return kExitFatal;
        }
        out << rendered;
    } else if (args.output == "-" || args.format == "json") {
        std::cout << rendered;
    } else if (color_allowed()) {
        std::cout << mllint::render_terminal(rendered);
    } else {
        std::cout << rendered;
    }

    if (args.fail_under_set) {
        double overall = report.overall_score.value_or(0.0);
        if (overall < args.fail_under) return kExitFailUnder;
    }
    return kExitOk;
}

int do_list(const std::string& mode) {
    mllint::Config config;
    try {
        config = mllint::load_config(".");
    } catch (const mllint::ConfigError& e) {
        std::cerr << "mllint: configuration error: " << e.what() << "\n";
        return kExitUsage;
    }
    mllint::WeightProfile weights = mllint::resolve_weights(config);

    auto disabled = [&](const std::string& slug) {
        auto it = config.rule_overrides.find(slug);
        return it != config.rule_overrides.end() && it->second.disabled;
    };
    std::cout << "| Rule | Name | Category | Weight |\n";
    std::cout << "| --- | --- | --- | --- |\n";
    auto print_rule = [&](const std::string& slug, const std::string& name,
                          mllint::Category category) {
        double weight = weights.rule_weight(slug);
        if (mode == "enabled" && (weight <= 0 || disabled(slug))) return;
        std::cout << "| " << slug << " | " << name << " | " << mllint::category_name(category)
                  << " | " << mllint::format_score(weight) << " |\n";
    };
    for (const mllint::Rule& rule : mllint::builtin_rules())
        print_rule(rule.slug, rule.name, rule.category);
    for (const mllint::CustomRuleSpec& spec : config.custom_rules)
        print_rule(spec.slug, spec.name, mllint::Category::custom);
    return kExitOk;
}

int do_describe(const std::string& slug) {
    if (const mllint::Rule* rule = mllint::find_builtin_rule(slug)) {
        double poc = 0, production = 0;
        for (const mllint::PresetWeight& preset : mllint::preset_weights()) {
            if (slug == preset.slug) {
                poc = preset.poc;
                production = preset.production;
            }
        }
        std::cout << "# " << rule->name << "\n\n";
        std::cout << "Slug: `" << rule->slug << "`\n";
        std::cout << "Category: " << mllint::category_name(rule->category) << "\n";
        std::cout << "Default weight: " << mllint::format_score(poc) << " (poc), "
                  << mllint::format_score(production) << " (production)\n\n";
        std::cout << rule->summary << "\n";
        return kExitOk;
    }
    mllint::Config config;
    try {
        config = mllint::load_config(".");
    } catch (const mllint::ConfigError&) {
        config = mllint::Config{};
    }
    for (const mllint::CustomRuleSpec& spec : config.custom_rules) {
        if (spec.slug != slug) continue;
        std::cout << "# " << spec.name << "\n\n";
        std::cout << "Slug: `" << spec.slug << "`\n";
        std::cout << "Category: Custom\n";
        std::cout << "Weight: " << mllint::format_score(spec.weight) << "\n";
        std::cout << "Command: `" << spec.run << "`\n";
        return kExitOk;
    }
    std::cerr << "mllint: unknown rule slug '" << slug << "'\n";
    return kExitUsage;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"mllint — static analysis for the software quality of ML projects"};
    app.require_subcommand(0, 1);

    RunArgs run_args;
    CLI::App* run = app.add_subcommand("run", "Lint a project and print its report");
    run->add_option("PATH", run_args.path, "Project root to lint")->capture_default_str();
    run->add_option("--output", run_args.output,
                    "Write the report to a file ('-' for raw Markdown on stdout)");
    run->add_option("--format", run_args.format, "Report format")
        ->check(CLI::IsMember({"markdown", "json"}))
        ->capture_default_str();
    run->add_option("--profile", run_args.profile, "Weight profile (overrides the config file)")
        ->check(CLI::IsMember({"poc", "production"}));
    run->add_option("--fail-under", run_args.fail_under,
                    "Exit with code 1 when the overall score is below this value")
        ->check(CLI::Range(0.0, 100.0));
    run->add_flag("--quiet", run_args.quiet, "Suppress per-rule details in the report");

    std::string list_mode = "all";
    CLI::App* list = app.add_subcommand("list", "List rules");
    list->add_option("MODE", list_mode, "all | enabled")
        ->check(CLI::IsMember({"all", "enabled"}));

    std::string describe_slug;
    CLI::App* describe = app.add_subcommand("describe", "Explain one rule in detail");
    describe->add_option("SLUG", describe_slug, "Rule slug")->required();

    CLI::App* version = app.add_subcommand("version", "Print the tool version");

    // `run` is the default subcommand: any first argument that is not a
    // known subcommand (or a help flag) is treated as `run ...`.
    std::vector<std::string> args(argv + 1, argv + argc);
    static const std::set<std::string> known = {"run",     "list", "describe",
                                                "version", "-h",   "--help"};
    if (args.empty() || !known.count(args.front())) args.insert(args.begin(), "run");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    run_args.fail_under_set = run->count("--fail-under") > 0;
    if (version->parsed()) {
        std::cout << "mllint " << mllint::kToolVersion << "\n";
        return kExitOk;
    }
    if (list->parsed()) return do_list(list_mode);
    if (describe->parsed()) return do_describe(describe_slug);
    return do_run(run_args);
}
