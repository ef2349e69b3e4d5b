#pragma once

/// Terminal pretty-printer for the Markdown report: bold headings, aligned
/// tables, score cells colorized by band. Only SGR codes 1/31/32/33/0 are
/// emitted; stripping them recovers the Markdown's visible content.

#include <cstdlib>
#include <string>
#include <vector>

#include "mllint/strings.hpp"

namespace mllint {

inline constexpr int kTerminalTableWidth = 100;

namespace term {

inline std::string sgr(int code) { return "\x1b[" + std::to_string(code) + "m"; }

inline std::string wrap(const std::string& text, int code) {
    return sgr(code) + text + sgr(0);
}

/// Split a markdown table row into trimmed, unescaped cells.
inline std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    bool escaped = false;
    bool started = false;
    for (char c : line) {
        if (!started) { // skip the leading pipe
            if (c == '|') started = true;
            continue;
        }
        if (escaped) {
            cur += c; // "\|" becomes "|", anything else keeps its backslash
            if (c != '|') cur.insert(cur.size() - 1, 1, '\\');
            escaped = false;
        } else if (c == '\\') {
            escaped = true;
        } else if (c == '|') {
            cells.push_back(std::string(trim(cur)));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!std::string(trim(cur)).empty()) cells.push_back(std::string(trim(cur)));
    return cells;
}

inline bool is_separator_row(const std::vector<std::string>& cells) {
    if (cells.empty()) return false;
    for (const std::string& cell : cells) {
        if (cell.empty()) return false;
        for (size_t i = 0; i < cell.size(); ++i) {
            char c = cell[i];
            bool edge_colon = c == ':' && (i == 0 || i + 1 == cell.size());
            if (c != '-' && !edge_colon) return false;
        }
    }
    return true;
}

inline bool is_score_cell(const std::string& cell, double& value) {
    if (cell.size() < 2 || cell.back() != '%') return false;
    std::string number = cell.substr(0, cell.size() - 1);
    if (number.empty()) return false;
    bool dot = false;
    for (char c : number) {
        if (c == '.') {
            if (dot) return false;
            dot = true;
        } else if (c < '0' || c > '9') {
            return false;
        }
    }
    value = std::atof(number.c_str());
    return true;
}

inline int score_color(double score) {
    if (score >= 80.0) return 32; // green
    if (score >= 40.0) return 33; // yellow
    return 31;                    // red
}

/// Visible width of a cell: bytes, counting the UTF-8 ellipsis as one.
inline size_t visible_width(const std::string& cell) {
    size_t width = 0;
    for (size_t i = 0; i < cell.size();) {
        unsigned char c = static_cast<unsigned char>(cell[i]);
        if (c < 0x80) i += 1;
        else if (c < 0xE0) i += 2;
        else if (c < 0xF0) i += 3;
        else i += 4;
        ++width;
    }
    return width;
}

inline std::string truncate_cell(const std::string& cell, size_t width) {
    if (visible_width(cell) <= width) return cell;
    std::string out;
    size_t taken = 0;
    for (size_t i = 0; i < cell.size() && taken + 1 < width;) {
        unsigned char c = static_cast<unsigned char>(cell[i]);
        size_t len = c < 0x80 ? 1 : c < 0xE0 ? 2 : c < 0xF0 ? 3 : 4;
        out += cell.substr(i, len);
        i += len;
        ++taken;
    }
    return out + "…";
}

inline std::string render_table(const std::vector<std::string>& lines, bool color) {
    std::vector<std::vector<std::string>> rows;
    std::vector<bool> separator;
    size_t columns = 0;
    for (const std::string& line : lines) {
        std::vector<std::string> cells = split_row(line);
        separator.push_back(is_separator_row(cells));
        columns = std::max(columns, cells.size());
        rows.push_back(std::move(cells));
    }

    std::vector<size_t> widths(columns, 3);
    for (size_t r = 0; r < rows.size(); ++r) {
        if (separator[r]) continue;
        for (size_t c = 0; c < rows[r].size(); ++c)
            widths[c] = std::max(widths[c], visible_width(rows[r][c]));
    }
    // Cap the table at the terminal budget by shrinking the widest column.
    auto total = [&] {
        size_t t = 1; // leading pipe
        for (size_t w : widths) t += w + 3;
        return t;
    };
    while (total() > static_cast<size_t>(kTerminalTableWidth)) {
        size_t widest = 0;
        for (size_t c = 1; c < columns; ++c)
            if (widths[c] > widths[widest]) widest = c;
        if (widths[widest] <= 8) break; // nothing sensible left to shrink
        size_t excess = total() - kTerminalTableWidth;
        size_t reducible = widths[widest] - 8;
        widths[widest] -= std::min(excess, reducible);
    }

    std::string out;
    for (size_t r = 0; r < rows.size(); ++r) {
        out += "|";
        for (size_t c = 0; c < columns; ++c) {
            if (separator[r]) {
                out += " " + std::string(widths[c], '-') + " |";
                continue;
            }
            std::string cell = c < rows[r].size() ? rows[r][c] : "";
            cell = truncate_cell(cell, widths[c]);
            size_t pad = widths[c] - visible_width(cell);
            double score = 0;
            if (color && is_score_cell(cell, score)) cell = wrap(cell, score_color(score));
            out += " " + cell + std::string(pad, ' ') + " |";
        }
        out += "\n";
    }
    return out;
}

/// Replace **spans** with bold SGR styling (or just drop the markers).
inline std::string render_inline(const std::string& line, bool color) {
    std::string out;
    size_t pos = 0;
    while (pos < line.size()) {
        size_t open = line.find("**", pos);
        if (open == std::string::npos) {
            out += line.substr(pos);
            break;
        }
        size_t close = line.find("**", open + 2);
        if (close == std::string::npos) {
            out += line.substr(pos);
            break;
        }
        out += line.substr(pos, open - pos);
        std::string span = line.substr(open + 2, close - open - 2);
        out += color ? wrap(span, 1) : span;
        pos = close + 2;
    }
    return out;
}

} // namespace term

/// Pretty-print a Markdown report for the terminal. With color=false the
/// layout work (alignment, truncation) still happens but no escape codes
/// are emitted (the NO_COLOR contract).
inline std::string render_terminal(std::string_view markdown, bool color = true) {
    std::vector<std::string> lines = split_lines(markdown);
    std::string out;
    std::vector<std::string> table_block;
    auto flush_table = [&] {
        if (table_block.empty()) return;
        out += term::render_table(table_block, color);
        table_block.clear();
    };
    for (const std::string& line : lines) {
        std::string_view stripped = trim(line);
        if (!stripped.empty() && stripped.front() == '|') {
            table_block.push_back(line);
            continue;
        }
        flush_table();
        size_t hashes = 0;
        while (hashes < stripped.size() && stripped[hashes] == '#') ++hashes;
        if (hashes > 0 && hashes <= 6 && hashes < stripped.size() && stripped[hashes] == ' ') {
            std::string text{stripped.substr(hashes + 1)};
            out += color ? term::wrap(text, 1) : text;
            out += "\n";
            continue;
        }
        out += term::render_inline(line, color) + "\n";
    }
    flush_table();
    return out;
}

/// Remove all ANSI escape sequences (CSI ... final-byte).
inline std::string ansi_strip(std::string_view text) {
    std::string out;
    for (size_t i = 0; i < text.size();) {
        if (text[i] == '\x1b' && i + 1 < text.size() && text[i + 1] == '[') {
            size_t j = i + 2;
            while (j < text.size() && !(text[j] >= '@' && text[j] <= '~')) ++j;
            i = j < text.size() ? j + 1 : text.size();
            continue;
        }
        out += text[i];
        ++i;
    }
    return out;
}

} // namespace mllint
