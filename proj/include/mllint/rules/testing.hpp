#pragma once

/// Testing rules: test-file ratio, tests-passed from a JUnit-style XML
/// report, line coverage from a Cobertura-style XML report. Reports come
/// from a prior test run; project code is never executed.

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>

#include "mllint/config.hpp"
#include "mllint/rule.hpp"
#include "mllint/scan.hpp"
#include "mllint/strings.hpp"
#include "mllint/xml.hpp"

namespace mllint {

class ReportParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct TestSummary {
    long total = 0;
    long failures = 0;
    long errors = 0;
    long skipped = 0;

    long passed() const { return total - failures - errors - skipped; }
};

inline bool operator==(const TestSummary& a, const TestSummary& b) {
    return a.total == b.total && a.failures == b.failures && a.errors == b.errors &&
           a.skipped == b.skipped;
}

struct CoverageSummary {
    double line_rate = 0; // in [0,1]
};

namespace detail {

inline long attr_count(const xml::Element& element, const std::string& name) {
    const std::string* value = element.attr(name);
    if (!value) return 0;
    try {
        long parsed = std::stol(*value);
        if (parsed < 0) throw ReportParseError("negative count in attribute " + name);
        return parsed;
    } catch (const std::invalid_argument&) {
        throw ReportParseError("non-numeric attribute " + name + "=\"" + *value + "\"");
    } catch (const std::out_of_range&) {
        throw ReportParseError("out-of-range attribute " + name + "=\"" + *value + "\"");
    }
}

} // namespace detail

/// Sums tests/failures/errors/skipped over every <testsuite> element;
/// accepts a <testsuites> root or a bare <testsuite>.
inline TestSummary parse_junit(std::string_view xml_text) {
    std::vector<xml::Element> elements;
    try {
        elements = xml::scan(xml_text);
    } catch (const xml::XmlError& e) {
        throw ReportParseError(std::string("malformed JUnit XML: ") + e.what());
    }
    TestSummary summary;
    bool found = false;
    for (const xml::Element& element : elements) {
        if (element.name != "testsuite") continue;
        found = true;
        summary.total += detail::attr_count(element, "tests");
        summary.failures += detail::attr_count(element, "failures");
        summary.errors += detail::attr_count(element, "errors");
        summary.skipped += detail::attr_count(element, "skipped");
    }
    if (!found) throw ReportParseError("no <testsuite> element found");
    if (summary.failures + summary.errors + summary.skipped > summary.total)
        throw ReportParseError("inconsistent JUnit counts: failures+errors+skipped > tests");
    return summary;
}

/// Reads the root <coverage> element: its line-rate attribute, or
/// lines-covered / lines-valid when line-rate is absent.
inline CoverageSummary parse_cobertura(std::string_view xml_text) {
    std::vector<xml::Element> elements;
    try {
        elements = xml::scan(xml_text);
    } catch (const xml::XmlError& e) {
        throw ReportParseError(std::string("malformed coverage XML: ") + e.what());
    }
    for (const xml::Element& element : elements) {
        if (element.name != "coverage") continue;
        CoverageSummary summary;
        if (const std::string* rate = element.attr("line-rate")) {
            try {
                summary.line_rate = std::stod(*rate);
            } catch (const std::exception&) {
                throw ReportParseError("non-numeric line-rate \"" + *rate + "\"");
            }
        } else {
            const std::string* covered = element.attr("lines-covered");
            const std::string* valid = element.attr("lines-valid");
            if (!covered || !valid)
                throw ReportParseError(
                    "coverage element has neither line-rate nor lines-covered/lines-valid");
            try {
                double covered_n = std::stod(*covered);
                double valid_n = std::stod(*valid);
                if (valid_n <= 0) throw ReportParseError("lines-valid must be positive");
                summary.line_rate = covered_n / valid_n;
            } catch (const std::invalid_argument&) {
                throw ReportParseError("non-numeric lines-covered/lines-valid");
            }
        }
        if (summary.line_rate < 0 || summary.line_rate > 1)
            throw ReportParseError("line-rate out of range [0,1]: " +
                                   format_str("%g", summary.line_rate));
        return summary;
    }
    throw ReportParseError("no <coverage> element found");
}

inline RuleResult rule_has_tests(const ProjectContext& context, double ratio_target) {
    long t = static_cast<long>(context.test_files.size());
    long s = static_cast<long>(context.python_files.size()) - t;
    if (s == 0) return RuleResult::skip("no non-test Python files found");
    double ratio = static_cast<double>(t) / static_cast<double>(s);
    double score = std::min(100.0, 100.0 * (ratio / ratio_target));
    std::string details;
    if (score < 100.0)
        details = format_str(
            "Found %ld test file(s) for %ld source file(s) — a ratio of %.2f against a target "
            "of %.2f. Add tests (files named `test_*.py` / `*_test.py`, or under `tests/`) to "
            "cover your code.",
            t, s, ratio, ratio_target);
    return RuleResult::pass(score, details);
}

namespace detail {

/// Locate a report file: an explicitly configured path wins (and must
/// exist); otherwise the first existing default candidate is used.
struct ReportLookup {
    enum class Kind { found, none, configured_missing } kind = Kind::none;
    fs::path path; // relative to root when found
};

inline ReportLookup find_report(const ProjectContext& context, const std::string& configured,
                                std::initializer_list<const char*> candidates) {
    ReportLookup lookup;
    std::error_code ec;
    if (!configured.empty()) {
        if (fs::is_regular_file(context.root / configured, ec)) {
            lookup.kind = ReportLookup::Kind::found;
            lookup.path = configured;
        } else {
            lookup.kind = ReportLookup::Kind::configured_missing;
            lookup.path = configured;
        }
        return lookup;
    }
    for (const char* candidate : candidates) {
        if (fs::is_regular_file(context.root / candidate, ec)) {
            lookup.kind = ReportLookup::Kind::found;
            lookup.path = candidate;
            return lookup;
        }
    }
    return lookup;
}

} // namespace detail

inline RuleResult rule_tests_pass(const ProjectContext& context, const Config& config) {
    detail::ReportLookup lookup = detail::find_report(
        context, config.test_report_path, {"junit.xml", "reports/junit.xml", "test-results.xml"});
    if (lookup.kind == detail::ReportLookup::Kind::none)
        return RuleResult::skip("no test report configured/found");
    if (lookup.kind == detail::ReportLookup::Kind::configured_missing)
        return RuleResult::error("test report not found at configured path `" +
                                 lookup.path.generic_string() + "`");
    std::optional<std::string> text = read_file(context.root / lookup.path);
    if (!text)
        return RuleResult::error("test report `" + lookup.path.generic_string() +
                                 "` could not be read");
    TestSummary summary;
    try {
        summary = parse_junit(*text);
    } catch (const ReportParseError& e) {
        return RuleResult::error("test report `" + lookup.path.generic_string() +
                                 "`: " + e.what());
    }
    if (summary.total == 0)
        return RuleResult::pass(0, "The test report contains no tests.");
    double score = (100.0 * static_cast<double>(summary.passed())) /
                   static_cast<double>(summary.total);
    std::string details;
    if (summary.passed() < summary.total)
        details = format_str("%ld of %ld tests passed (%ld failed, %ld errored, %ld skipped).",
                             summary.passed(), summary.total, summary.failures, summary.errors,
                             summary.skipped);
    return RuleResult::pass(score, details);
}

inline RuleResult rule_coverage(const ProjectContext& context, const Config& config,
                                double coverage_target) {
    detail::ReportLookup lookup = detail::find_report(context, config.coverage_report_path,
                                                      {"coverage.xml", "reports/coverage.xml"});
    if (lookup.kind == detail::ReportLookup::Kind::none)
        return RuleResult::skip("no coverage report configured/found");
    if (lookup.kind == detail::ReportLookup::Kind::configured_missing)
        return RuleResult::error("coverage report not found at configured path `" +
                                 lookup.path.generic_string() + "`");
    std::optional<std::string> text = read_file(context.root / lookup.path);
    if (!text)
        return RuleResult::error("coverage report `" + lookup.path.generic_string() +
                                 "` could not be read");
    CoverageSummary summary;
    try {
        summary = parse_cobertura(*text);
    } catch (const ReportParseError& e) {
        return RuleResult::error("coverage report `" + lookup.path.generic_string() +
                                 "`: " + e.what());
    }
    double score = std::min(100.0, (100.0 * summary.line_rate) / coverage_target);
    std::string details;
    if (score < 100.0)
        details = format_str("Line coverage is %.1f%% against a target of %.1f%%.",
                             100.0 * summary.line_rate, 100.0 * coverage_target);
    return RuleResult::pass(score, details);
}

} // namespace mllint
