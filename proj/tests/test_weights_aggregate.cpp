#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "mllint/aggregate.hpp"
#include "mllint/config.hpp"
#include "mllint/weights.hpp"

using mllint::Category;
using mllint::Config;
using mllint::WeightedScore;
using mllint::weighted_mean;
using mllint::WeightProfile;
using mllint::resolve_weights;

TEST_CASE("production preset weights match the importance table") {
    Config config;
    WeightProfile weights = resolve_weights(config);
    CHECK(weights.name == "production");
    CHECK(weights.rule_weight("version-control.code.git") == 4);
    CHECK(weights.rule_weight("version-control.code.git-no-big-files") == 4);
    CHECK(weights.rule_weight("version-control.data.dvc") == 3);
    CHECK(weights.rule_weight("version-control.data.dvc-in-use") == 3);
    CHECK(weights.rule_weight("dependency-management.use") == 4);
    CHECK(weights.rule_weight("dependency-management.single") == 3);
    CHECK(weights.rule_weight("dependency-management.dev-separation") == 2);
    CHECK(weights.rule_weight("continuous-integration.use") == 3);
    CHECK(weights.rule_weight("code-quality.use-linters") == 3);
    CHECK(weights.rule_weight("code-quality.no-issues") == 2);
    CHECK(weights.rule_weight("testing.has-tests") == 3);
    CHECK(weights.rule_weight("testing.pass") == 3);
    CHECK(weights.rule_weight("testing.coverage") == 3);
}

TEST_CASE("poc preset weights match the importance table") {
    Config config;
    config.profile = "poc";
    WeightProfile weights = resolve_weights(config);
    CHECK(weights.name == "poc");
    CHECK(weights.rule_weight("version-control.code.git") == 3);
    CHECK(weights.rule_weight("version-control.code.git-no-big-files") == 3);
    CHECK(weights.rule_weight("version-control.data.dvc") == 1);
    CHECK(weights.rule_weight("version-control.data.dvc-in-use") == 1);
    CHECK(weights.rule_weight("dependency-management.use") == 3);
    CHECK(weights.rule_weight("dependency-management.single") == 2);
    CHECK(weights.rule_weight("dependency-management.dev-separation") == 2);
    CHECK(weights.rule_weight("continuous-integration.use") == 2);
    CHECK(weights.rule_weight("code-quality.use-linters") == 2);
    CHECK(weights.rule_weight("code-quality.no-issues") == 1);
    CHECK(weights.rule_weight("testing.has-tests") == 2);
    CHECK(weights.rule_weight("testing.pass") == 2);
    CHECK(weights.rule_weight("testing.coverage") == 2);
}

TEST_CASE("production never weighs a rule below poc") {
    Config poc_config, prod_config;
    poc_config.profile = "poc";
    WeightProfile poc = resolve_weights(poc_config);
    WeightProfile prod = resolve_weights(prod_config);
    for (const auto& [slug, weight] : poc.rule_weights) {
        INFO("rule " << slug);
        CHECK(prod.rule_weight(slug) >= weight);
    }
    // Hygiene rules gain importance as a project matures.
    for (const char* slug : {"code-quality.use-linters", "version-control.data.dvc",
                             "continuous-integration.use", "testing.has-tests"}) {
        INFO("rule " << slug);
        CHECK(prod.rule_weight(slug) > poc.rule_weight(slug));
    }
    // Fixing every warning matters less than running linters at all.
    CHECK(poc.rule_weight("code-quality.no-issues") < poc.rule_weight("code-quality.use-linters"));
    CHECK(prod.rule_weight("code-quality.no-issues") <
          prod.rule_weight("code-quality.use-linters"));
}

TEST_CASE("category weights are the mean of their member rule weights") {
    Config config;
    WeightProfile weights = resolve_weights(config);
    CHECK(weights.category_weight(Category::version_control) == (4 + 4 + 3 + 3) / 4.0);
    CHECK(weights.category_weight(Category::dependency_management) == (4 + 3 + 2) / 3.0);
    CHECK(weights.category_weight(Category::continuous_integration) == 3.0);
    CHECK(weights.category_weight(Category::code_quality) == (3 + 2) / 2.0);
    CHECK(weights.category_weight(Category::testing) == (3 + 3 + 3) / 3.0);
    CHECK(weights.category_weight(Category::custom) == 0.0); // no custom rules configured
}

TEST_CASE("weight overrides apply and rename the profile to custom") {
    Config config;
    config.rule_overrides["version-control.code.git"].weight = 1.5;
    WeightProfile weights = resolve_weights(config);
    CHECK(weights.name == "custom");
    CHECK(weights.rule_weight("version-control.code.git") == 1.5);
    // Other rules keep preset values.
    CHECK(weights.rule_weight("testing.pass") == 3);
    // The category mean is recomputed from effective weights.
    CHECK(weights.category_weight(Category::version_control) == (1.5 + 4 + 3 + 3) / 4.0);
}

TEST_CASE("disabling a rule zeroes its weight") {
    Config config;
    config.rule_overrides["testing.coverage"].disabled = true;
    WeightProfile weights = resolve_weights(config);
    CHECK(weights.name == "custom");
    CHECK(weights.rule_weight("testing.coverage") == 0);
    CHECK(weights.category_weight(Category::testing) == (3 + 3 + 0) / 3.0);
}

TEST_CASE("custom rules enter the weight profile with their configured weight") {
    Config config;
    mllint::CustomRuleSpec spec;
    spec.slug = "org.check";
    spec.name = "Check";
    spec.run = "true";
    spec.weight = 2.5;
    config.custom_rules.push_back(spec);
    WeightProfile weights = resolve_weights(config);
    CHECK(weights.name == "production"); // custom rules alone do not rename the profile
    CHECK(weights.rule_weight("org.check") == 2.5);
    CHECK(weights.category_weight(Category::custom) == 2.5);
}

TEST_CASE("unknown slugs have weight zero") {
    Config config;
    WeightProfile weights = resolve_weights(config);
    CHECK(weights.rule_weight("no.such.rule") == 0.0);
}

TEST_CASE("weighted_mean matches hand-computed examples") {
    CHECK(weighted_mean({{100, 1}, {50, 1}}) == 75.0);
    CHECK(weighted_mean({{100, 3}, {0, 1}}) == 75.0);
    CHECK(weighted_mean({{40, 2}}) == 40.0);
    CHECK(weighted_mean({{80, 1}, {60, 3}}) == 65.0);
}

TEST_CASE("weighted_mean ignores non-positive weights and may be absent") {
    CHECK_FALSE(weighted_mean({}).has_value());
    CHECK_FALSE(weighted_mean({{100, 0}, {50, 0}}).has_value());
    CHECK(weighted_mean({{100, 0}, {50, 2}}) == 50.0);
    CHECK(weighted_mean({{10, -1}, {90, 1}}) == 90.0);
}

TEST_CASE("weighted_mean of equal scores is exactly that score") {
    // 0.1 + 0.2 + 0.3 style float residue must not leak into the result.
    std::vector<WeightedScore> entries;
    for (int i = 0; i < 50; ++i) entries.push_back({100.0, 0.1 * (i + 1)});
    CHECK(weighted_mean(entries) == 100.0);
    for (auto& entry : entries) entry.score = 73.2;
    CHECK(weighted_mean(entries) == 73.2);
}

TEST_CASE("weighted_mean stays within the contributing score range") {
    std::mt19937 rng(20210401);
    std::uniform_real_distribution<double> score_dist(0.0, 100.0);
    std::uniform_real_distribution<double> weight_dist(0.0, 5.0);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<WeightedScore> entries;
        int n = 1 + static_cast<int>(rng() % 8);
        double lo = 100, hi = 0;
        for (int i = 0; i < n; ++i) {
            double score = score_dist(rng);
            double weight = weight_dist(rng);
            entries.push_back({score, weight});
            if (weight > 0) {
                lo = std::min(lo, score);
                hi = std::max(hi, score);
            }
        }
        auto mean = weighted_mean(entries);
        if (!mean) continue;
        CHECK(*mean >= lo);
        CHECK(*mean <= hi);
    }
}

TEST_CASE("weighted_mean is monotone in any single score") {
    std::vector<WeightedScore> entries = {{20, 1}, {50, 2}, {90, 0.5}};
    auto base = weighted_mean(entries);
    REQUIRE(base.has_value());
    entries[1].score = 60; // raise one score, holding weights fixed
    auto raised = weighted_mean(entries);
    REQUIRE(raised.has_value());
    CHECK(*raised > *base);
}

TEST_CASE("weighted_mean agrees with a brute-force oracle") {
    std::mt19937 rng(424242);
    std::uniform_real_distribution<double> score_dist(0.0, 100.0);
    std::uniform_real_distribution<double> weight_dist(0.1, 5.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<WeightedScore> entries;
        int n = 1 + static_cast<int>(rng() % 6);
        long double num = 0, den = 0;
        for (int i = 0; i < n; ++i) {
            double score = score_dist(rng);
            double weight = weight_dist(rng);
            entries.push_back({score, weight});
            num += static_cast<long double>(weight) * score;
            den += weight;
        }
        auto mean = weighted_mean(entries);
        REQUIRE(mean.has_value());
        CHECK(std::abs(*mean - static_cast<double>(num / den)) < 1e-9);
    }
}
