#pragma once

/// A TOML-subset parser covering what Python project manifests need:
/// tables, arrays of tables, dotted and quoted keys, strings (basic,
/// literal, multiline), integers, floats, booleans, arrays and inline
/// tables. Date-time values are kept as raw strings. Errors carry the
/// line number they were detected on.

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mllint/strings.hpp"

namespace mllint::toml {

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

    int line() const { return line_; }

private:
    int line_;
};

class Value {
public:
    using Array = std::vector<Value>;
    using Table = std::map<std::string, Value>;

    Value() : data_(Table{}) {}
    explicit Value(bool b) : data_(b) {}
    explicit Value(std::int64_t i) : data_(i) {}
    explicit Value(double d) : data_(d) {}
    explicit Value(std::string s) : data_(std::move(s)) {}
    explicit Value(Array a) : data_(std::move(a)) {}
    explicit Value(Table t) : data_(std::move(t)) {}

    bool is_table() const { return std::holds_alternative<Table>(data_); }
    bool is_array() const { return std::holds_alternative<Array>(data_); }
    bool is_string() const { return std::holds_alternative<std::string>(data_); }
    bool is_bool() const { return std::holds_alternative<bool>(data_); }
    bool is_integer() const { return std::holds_alternative<std::int64_t>(data_); }
    bool is_float() const { return std::holds_alternative<double>(data_); }
    bool is_number() const { return is_integer() || is_float(); }

    Table& table() { return std::get<Table>(data_); }
    const Table& table() const { return std::get<Table>(data_); }
    Array& array() { return std::get<Array>(data_); }
    const Array& array() const { return std::get<Array>(data_); }
    const std::string& string() const { return std::get<std::string>(data_); }
    bool boolean() const { return std::get<bool>(data_); }
    std::int64_t integer() const { return std::get<std::int64_t>(data_); }

    double number() const {
        if (is_integer()) return static_cast<double>(integer());
        return std::get<double>(data_);
    }

    /// Table lookup; nullptr when the key is absent or this is not a table.
    const Value* get(std::string_view key) const {
        if (!is_table()) return nullptr;
        auto it = table().find(std::string(key));
        return it == table().end() ? nullptr : &it->second;
    }

    /// Nested lookup along a path of table keys.
    const Value* get_path(std::initializer_list<std::string_view> path) const {
        const Value* cur = this;
        for (auto key : path) {
            cur = cur->get(key);
            if (!cur) return nullptr;
        }
        return cur;
    }

private:
    std::variant<bool, std::int64_t, double, std::string, Array, Table> data_;
};

namespace detail {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Value parse() {
        Value root;
        Value* current = &root;
        while (skip_to_content()) {
            if (peek() == '[') {
                current = parse_table_header(root);
            } else {
                parse_key_value(*current);
                expect_line_end();
            }
        }
        return root;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    // Tables created by [[x]] headers; a later [x] header may not reopen them
    // as plain tables, and vice versa. Tracked by canonical dotted path.
    std::map<std::string, bool> defined_as_array_;

    [[noreturn]] void fail(const std::string& message) const { throw ParseError(line_, message); }

    bool eof() const { return pos_ >= text_.size(); }
    char peek() const { return eof() ? '\0' : text_[pos_]; }

    char advance() {
        char c = text_[pos_++];
        if (c == '\n') ++line_;
        return c;
    }

    void skip_ws() {
        while (!eof() && (peek() == ' ' || peek() == '\t')) ++pos_;
    }

    void skip_comment() {
        if (peek() == '#') {
            while (!eof() && peek() != '\n') ++pos_;
        }
    }

    /// Advances past blank lines and comments; true when content remains.
    bool skip_to_content() {
        while (!eof()) {
            skip_ws();
            skip_comment();
            if (eof()) return false;
            if (peek() == '\n') {
                advance();
                continue;
            }
            if (peek() == '\r') {
                ++pos_;
                continue;
            }
            return true;
        }
        return false;
    }

    void expect_line_end() {
        skip_ws();
        skip_comment();
        if (eof()) return;
        if (peek() == '\r') ++pos_;
        if (eof()) return;
        if (peek() != '\n') fail("expected end of line");
        advance();
    }

    static bool is_bare_key_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_';
    }

    std::string parse_key_part() {
        skip_ws();
        if (peek() == '"' || peek() == '\'') return parse_string_value();
        std::string key;
        while (!eof() && is_bare_key_char(peek())) key.push_back(advance());
        if (key.empty()) fail("expected a key");
        return key;
    }

    std::vector<std::string> parse_dotted_key() {
        std::vector<std::string> parts{parse_key_part()};
        skip_ws();
        while (peek() == '.') {
            advance();
            parts.push_back(parse_key_part());
            skip_ws();
        }
        return parts;
    }

    Value* descend(Value& root, const std::vector<std::string>& path, bool array_of_tables) {
        Value* cur = &root;
        std::string canonical;
        for (std::size_t i = 0; i < path.size(); ++i) {
            canonical += (i ? "." : "") + path[i];
            bool last = i + 1 == path.size();
            auto& tbl = cur->table();
            auto it = tbl.find(path[i]);
            if (last && array_of_tables) {
                if (it == tbl.end()) it = tbl.emplace(path[i], Value(Value::Array{})).first;
                if (!it->second.is_array()) fail("key '" + canonical + "' is not an array of tables");
                defined_as_array_[canonical] = true;
                it->second.array().emplace_back(Value(Value::Table{}));
                return &it->second.array().back();
            }
            if (it == tbl.end()) it = tbl.emplace(path[i], Value(Value::Table{})).first;
            if (it->second.is_array()) {
                if (last) fail("'" + canonical + "' was defined as an array of tables");
                // Sub-table of the newest [[x]] entry.
                if (it->second.array().empty() || !it->second.array().back().is_table())
                    fail("cannot extend array value '" + canonical + "'");
                cur = &it->second.array().back();
            } else if (it->second.is_table()) {
                if (last && defined_as_array_.count(canonical))
                    fail("'" + canonical + "' was defined as an array of tables");
                cur = &it->second;
            } else {
                fail("key '" + canonical + "' is already a value");
            }
        }
        return cur;
    }

    Value* parse_table_header(Value& root) {
        advance(); // '['
        bool array_of_tables = peek() == '[';
        if (array_of_tables) advance();
        auto path = parse_dotted_key();
        skip_ws();
        if (peek() != ']') fail("expected ']' in table header");
        advance();
        if (array_of_tables) {
            if (peek() != ']') fail("expected ']]' in array-of-tables header");
            advance();
        }
        Value* table = descend(root, path, array_of_tables);
        expect_line_end();
        return table;
    }

    void parse_key_value(Value& table) {
        auto path = parse_dotted_key();
        skip_ws();
        if (peek() != '=') fail("expected '=' after key");
        advance();
        skip_ws();
        Value value = parse_value();

        Value* cur = &table;
        for (std::size_t i = 0; i + 1 < path.size(); ++i) {
            auto& tbl = cur->table();
            auto it = tbl.find(path[i]);
            if (it == tbl.end()) it = tbl.emplace(path[i], Value(Value::Table{})).first;
            if (!it->second.is_table()) fail("key '" + path[i] + "' is already a value");
            cur = &it->second;
        }
        if (!cur->table().emplace(path.back(), std::move(value)).second)
            fail("duplicate key '" + path.back() + "'");
    }

    Value parse_value() {
        if (eof()) fail("expected a value");
        char c = peek();
        if (c == '"' || c == '\'') return Value(parse_string_value());
        if (c == '[') return parse_array();
        if (c == '{') return parse_inline_table();
        return parse_scalar();
    }

    std::string parse_string_value() {
        char quote = advance();
        bool literal = quote == '\'';
        bool multiline = false;
        if (peek() == quote && pos_ + 1 < text_.size() && text_[pos_ + 1] == quote) {
            multiline = true;
            advance();
            advance();
            if (peek() == '\n') advance(); // leading newline is trimmed
        }
        std::string out;
        while (true) {
            if (eof()) fail("unterminated string");
            if (!multiline && peek() == '\n') fail("unterminated string");
            char ch = advance();
            if (ch == quote) {
                if (!multiline) return out;
                if (peek() == quote && pos_ + 1 < text_.size() && text_[pos_ + 1] == quote) {
                    advance();
                    advance();
                    return out;
                }
                out.push_back(ch);
                continue;
            }
            if (!multiline && ch == '\n') fail("unterminated string");
            if (!literal && ch == '\\') {
                if (eof()) fail("unterminated escape sequence");
                char esc = advance();
                switch (esc) {
                    case 'n': out.push_back('\n'); break;
                    case 't': out.push_back('\t'); break;
                    case 'r': out.push_back('\r'); break;
                    case '"': out.push_back('"'); break;
                    case '\\': out.push_back('\\'); break;
                    case 'u':
                    case 'U': {
                        int digits = esc == 'u' ? 4 : 8;
                        std::uint32_t code = 0;
                        for (int i = 0; i < digits; ++i) {
                            if (eof() || !std::isxdigit(static_cast<unsigned char>(peek())))
                                fail("invalid unicode escape");
                            char h = advance();
                            code = code * 16 + static_cast<std::uint32_t>(
                                h <= '9' ? h - '0' : (std::tolower(h) - 'a' + 10));
                        }
                        append_utf8(out, code);
                        break;
                    }
                    case '\n':
                        // line-ending backslash in multiline strings
                        while (!eof() && (peek() == ' ' || peek() == '\t' || peek() == '\n' ||
                                          peek() == '\r'))
                            advance();
                        break;
                    default: fail(std::string("unsupported escape '\\") + esc + "'");
                }
                continue;
            }
            out.push_back(ch);
        }
    }

    static void append_utf8(std::string& out, std::uint32_t code) {
        if (code < 0x80) {
            out.push_back(static_cast<char>(code));
        } else if (code < 0x800) {
            out.push_back(static_cast<char>(0xC0 | (code >> 6)));
            out.push_back(static_cast<char>(0x80 | (code & 0x3F)));
        } else if (code < 0x10000) {
            out.push_back(static_cast<char>(0xE0 | (code >> 12)));
            out.push_back(static_cast<char>(0x80 | ((code >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (code & 0x3F)));
        } else {
            out.push_back(static_cast<char>(0xF0 | (code >> 18)));
            out.push_back(static_cast<char>(0x80 | ((code >> 12) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | ((code >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (code & 0x3F)));
        }
    }

    Value parse_array() {
        advance(); // '['
        Value::Array items;
        while (true) {
            if (!skip_to_content()) fail("unterminated array");
            if (peek() == ']') {
                advance();
                return Value(std::move(items));
            }
            items.push_back(parse_value());
            if (!skip_to_content()) fail("unterminated array");
            if (peek() == ',') {
                advance();
            } else if (peek() != ']') {
                fail("expected ',' or ']' in array");
            }
        }
    }

    Value parse_inline_table() {
        advance(); // '{'
        Value table{Value::Table{}};
        skip_ws();
        if (peek() == '}') {
            advance();
            return table;
        }
        while (true) {
            skip_ws();
            parse_key_value(table);
            skip_ws();
            if (peek() == ',') {
                advance();
                continue;
            }
            if (peek() == '}') {
                advance();
                return table;
            }
            fail("expected ',' or '}' in inline table");
        }
    }

    /// Bare scalar: boolean, integer, float, or (as a lenient fallback for
    /// date-times and similar) the raw token itself.
    Value parse_scalar() {
        std::string token;
        while (!eof()) {
            char c = peek();
            if (c == '\n' || c == '#' || c == ',' || c == ']' || c == '}') break;
            token.push_back(advance());
        }
        std::string t(trim(token));
        if (t.empty()) fail("expected a value");
        if (t == "true") return Value(true);
        if (t == "false") return Value(false);

        std::string plain = replace_all(t, "_", "");
        try {
            std::size_t used = 0;
            if (plain.find_first_of(".eE") == std::string::npos ||
                plain.find_first_of(":TZ ") != std::string::npos) {
                if (plain.find_first_of(":TZ ") == std::string::npos) {
                    std::int64_t i = std::stoll(plain, &used);
                    if (used == plain.size()) return Value(i);
                }
            } else {
                double d = std::stod(plain, &used);
                if (used == plain.size()) return Value(d);
            }
        } catch (const std::exception&) {
            // falls through to the raw-token case
        }
        return Value(t); // date-times et al. surface as strings
    }
};

} // namespace detail

inline Value parse(std::string_view text) { return detail::Parser(text).parse(); }

} // namespace mllint::toml
