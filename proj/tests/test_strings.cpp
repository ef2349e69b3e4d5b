#include <catch2/catch_amalgamated.hpp>

#include "mllint/strings.hpp"

using namespace mllint;

TEST_CASE("trim strips surrounding whitespace only") {
    CHECK(trim("  hello \t\n") == "hello");
    CHECK(trim("") == "");
    CHECK(trim(" \t\r\n ") == "");
    CHECK(trim("a b") == "a b");
    CHECK(trim("no-op") == "no-op");
}

TEST_CASE("to_lower handles ASCII") {
    CHECK(to_lower("PyTest-COV") == "pytest-cov");
    CHECK(to_lower("") == "");
    CHECK(to_lower("123-abc") == "123-abc");
}

TEST_CASE("split_lines handles LF, CRLF and trailing newline") {
    CHECK(split_lines("a\nb\nc") == std::vector<std::string>{"a", "b", "c"});
    CHECK(split_lines("a\r\nb\r\n") == std::vector<std::string>{"a", "b"});
    CHECK(split_lines("one\n") == std::vector<std::string>{"one"});
    CHECK(split_lines("") == std::vector<std::string>{});
    CHECK(split_lines("\n\n") == std::vector<std::string>{"", ""});
}

TEST_CASE("split on a separator keeps empty fields") {
    CHECK(split("a:b:c", ':') == std::vector<std::string>{"a", "b", "c"});
    CHECK(split("a::b", ':') == std::vector<std::string>{"a", "", "b"});
    CHECK(split("", ':') == std::vector<std::string>{""});
    CHECK(split("solo", ':') == std::vector<std::string>{"solo"});
}

TEST_CASE("split_command tokenizes on whitespace") {
    CHECK(split_command("python scripts/check.py") ==
          std::vector<std::string>{"python", "scripts/check.py"});
    CHECK(split_command("  a\tb  c ") == std::vector<std::string>{"a", "b", "c"});
    CHECK(split_command("") == std::vector<std::string>{});
    CHECK(split_command("   ") == std::vector<std::string>{});
}

TEST_CASE("split_command groups double-quoted arguments") {
    CHECK(split_command("run \"a b\" c") == std::vector<std::string>{"run", "a b", "c"});
    CHECK(split_command("\"only one\"") == std::vector<std::string>{"only one"});
    // Adjacent quoted/unquoted segments join into one token.
    CHECK(split_command("pre\"mid dle\"post") == std::vector<std::string>{"premid dlepost"});
    // Empty quotes still produce a (possibly empty) token.
    CHECK(split_command("x \"\" y") == std::vector<std::string>{"x", "", "y"});
}

TEST_CASE("replace_all replaces every occurrence") {
    CHECK(replace_all("a|b|c", "|", "\\|") == "a\\|b\\|c");
    CHECK(replace_all("aaa", "aa", "b") == "ba");
    CHECK(replace_all("none here", "|", "x") == "none here");
    CHECK(replace_all("abc", "", "x") == "abc");
}

TEST_CASE("format_str behaves like printf") {
    CHECK(format_str("%d-%s", 42, "x") == "42-x");
    CHECK(format_str("%.3f", 1.0 / 3.0) == "0.333");
    CHECK(format_str("plain") == "plain");
}

TEST_CASE("format_score renders one decimal place") {
    CHECK(format_score(100.0) == "100.0");
    CHECK(format_score(0.0) == "0.0");
    CHECK(format_score(72.5) == "72.5");
    CHECK(format_score(2.0 / 3.0 * 100.0) == "66.7");
    CHECK(format_score(3.0) == "3.0");
}

TEST_CASE("fnv1a64 matches published reference vectors") {
    // Offset basis: hash of the empty string.
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    // Reference vectors from the FNV specification test suite.
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
}

TEST_CASE("to_hex64 is zero-padded 16-char lowercase hex") {
    CHECK(to_hex64(0) == "0000000000000000");
    CHECK(to_hex64(0xcbf29ce484222325ULL) == "cbf29ce484222325");
    CHECK(to_hex64(0xFFULL) == "00000000000000ff");
}
