#pragma once

/// Line-oriented YAML reader that only answers "which top-level keys exist
/// in the first document, and do they have content". Enough to validate CI
/// configuration files without a YAML dependency.

#include <string>
#include <string_view>
#include <vector>

#include "mllint/strings.hpp"

namespace mllint::yaml {

struct TopLevelKey {
    std::string key;
    bool has_content = false; // non-empty inline value or an indented block
};

inline std::vector<TopLevelKey> top_level_keys(std::string_view text) {
    std::vector<TopLevelKey> keys;
    bool seen_document = false;
    for (const std::string& raw : split_lines(text)) {
        std::string_view line = raw;
        std::string_view stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#') continue;
        if (stripped == "---") {
            if (seen_document) break; // only the first document
            seen_document = true;
            continue;
        }
        seen_document = true;
        bool indented = line.front() == ' ' || line.front() == '\t' || line.front() == '-';
        if (indented) {
            if (!keys.empty()) keys.back().has_content = true;
            continue;
        }
        std::size_t colon = std::string_view::npos;
        bool quoted = false;
        char quote_char = 0;
        for (std::size_t i = 0; i < line.size(); ++i) {
            char c = line[i];
            if (quoted) {
                if (c == quote_char) quoted = false;
            } else if (c == '"' || c == '\'') {
                quoted = true;
                quote_char = c;
            } else if (c == ':' && (i + 1 == line.size() || line[i + 1] == ' ')) {
                colon = i;
                break;
            }
        }
        if (colon == std::string_view::npos) continue; // not a mapping line
        std::string key(trim(line.substr(0, colon)));
        if (!key.empty() && key.front() == '"' && key.back() == '"' && key.size() > 1)
            key = key.substr(1, key.size() - 2);
        std::string_view value = trim(line.substr(colon + 1));
        if (!value.empty() && value.front() == '#') value = {};
        if (std::size_t hash = value.find(" #"); hash != std::string_view::npos)
            value = trim(value.substr(0, hash));
        bool inline_content = !value.empty() && value != "{}" && value != "[]" && value != "null" &&
                              value != "~";
        keys.push_back({std::move(key), inline_content});
    }
    return keys;
}

/// True when the mapping has `key:` with at least one nested entry or a
/// non-empty inline value.
inline bool has_nonempty_key(std::string_view text, std::string_view key) {
    for (const auto& entry : top_level_keys(text))
        if (entry.key == key && entry.has_content) return true;
    return false;
}

} // namespace mllint::yaml
