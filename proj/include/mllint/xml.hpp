#pragma once

/// Minimal XML reader: yields every element start tag with its attributes,
/// in document order. Sufficient for attribute-oriented report formats
/// (JUnit, Cobertura); not a general-purpose XML parser.

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mllint/strings.hpp"

namespace mllint::xml {

class XmlError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Element {
    std::string name;
    std::map<std::string, std::string> attributes;
    int depth = 0;

    const std::string* attr(std::string_view key) const {
        auto it = attributes.find(std::string(key));
        return it == attributes.end() ? nullptr : &it->second;
    }
};

namespace detail {

inline std::string decode_entities(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size();) {
        if (raw[i] != '&') {
            out.push_back(raw[i++]);
            continue;
        }
        std::size_t end = raw.find(';', i);
        if (end == std::string_view::npos) throw XmlError("unterminated entity reference");
        std::string_view ent = raw.substr(i + 1, end - i - 1);
        if (ent == "amp") out.push_back('&');
        else if (ent == "lt") out.push_back('<');
        else if (ent == "gt") out.push_back('>');
        else if (ent == "quot") out.push_back('"');
        else if (ent == "apos") out.push_back('\'');
        else if (!ent.empty() && ent[0] == '#') {
            long code = std::strtol(std::string(ent.substr(ent[1] == 'x' ? 2 : 1)).c_str(),
                                    nullptr, ent[1] == 'x' ? 16 : 10);
            out.push_back(static_cast<char>(code));
        } else {
            throw XmlError("unknown entity '&" + std::string(ent) + ";'");
        }
        i = end + 1;
    }
    return out;
}

inline bool is_name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.' ||
           c == ':';
}

} // namespace detail

inline std::vector<Element> scan(std::string_view text) {
    std::vector<Element> elements;
    std::vector<std::string> stack;
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    while (i < text.size()) {
        if (text[i] != '<') {
            ++i;
            continue;
        }
        ++i;
        if (i >= text.size()) throw XmlError("unterminated tag at end of input");
        if (text[i] == '?') {
            std::size_t end = text.find("?>", i);
            if (end == std::string_view::npos) throw XmlError("unterminated processing instruction");
            i = end + 2;
            continue;
        }
        if (text.compare(i, 3, "!--") == 0) {
            std::size_t end = text.find("-->", i);
            if (end == std::string_view::npos) throw XmlError("unterminated comment");
            i = end + 3;
            continue;
        }
        if (text.compare(i, 8, "![CDATA[") == 0) {
            std::size_t end = text.find("]]>", i);
            if (end == std::string_view::npos) throw XmlError("unterminated CDATA section");
            i = end + 3;
            continue;
        }
        if (text[i] == '!') { // DOCTYPE and friends
            std::size_t end = text.find('>', i);
            if (end == std::string_view::npos) throw XmlError("unterminated declaration");
            i = end + 1;
            continue;
        }
        if (text[i] == '/') {
            ++i;
            std::string name;
            while (i < text.size() && detail::is_name_char(text[i])) name.push_back(text[i++]);
            skip_ws();
            if (i >= text.size() || text[i] != '>') throw XmlError("malformed end tag");
            ++i;
            if (stack.empty() || stack.back() != name)
                throw XmlError("mismatched end tag </" + name + ">");
            stack.pop_back();
            continue;
        }

        Element elem;
        elem.depth = static_cast<int>(stack.size());
        while (i < text.size() && detail::is_name_char(text[i])) elem.name.push_back(text[i++]);
        if (elem.name.empty()) throw XmlError("malformed tag name");
        bool self_closing = false;
        while (true) {
            skip_ws();
            if (i >= text.size()) throw XmlError("unterminated tag <" + elem.name + ">");
            if (text[i] == '>') {
                ++i;
                break;
            }
            if (text[i] == '/') {
                ++i;
                if (i >= text.size() || text[i] != '>') throw XmlError("malformed self-closing tag");
                ++i;
                self_closing = true;
                break;
            }
            std::string attr_name;
            while (i < text.size() && detail::is_name_char(text[i])) attr_name.push_back(text[i++]);
            if (attr_name.empty()) throw XmlError("malformed attribute in <" + elem.name + ">");
            skip_ws();
            if (i >= text.size() || text[i] != '=')
                throw XmlError("attribute '" + attr_name + "' has no value");
            ++i;
            skip_ws();
            if (i >= text.size() || (text[i] != '"' && text[i] != '\''))
                throw XmlError("attribute '" + attr_name + "' is not quoted");
            char quote = text[i++];
            std::size_t end = text.find(quote, i);
            if (end == std::string_view::npos)
                throw XmlError("unterminated attribute value for '" + attr_name + "'");
            elem.attributes[attr_name] = detail::decode_entities(text.substr(i, end - i));
            i = end + 1;
        }
        elements.push_back(elem);
        if (!self_closing) stack.push_back(elements.back().name);
    }
    if (!stack.empty()) throw XmlError("unclosed element <" + stack.back() + ">");
    return elements;
}

} // namespace mllint::xml
