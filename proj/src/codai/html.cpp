#include "codai/html.hpp"

#include <algorithm>
#include <cctype>

#include "codai/errors.hpp"

namespace codai::html {

namespace {

std::string to_lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

bool starts_with_ci(std::string_view text, std::size_t pos, std::string_view prefix) {
    if (pos + prefix.size() > text.size()) return false;
    for (std::size_t i = 0; i < prefix.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(text[pos + i])) !=
            std::tolower(static_cast<unsigned char>(prefix[i]))) {
            return false;
        }
    }
    return true;
}

bool is_name_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) != 0;
}

bool is_name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == ':';
}

bool is_space(char c) {
    return std::isspace(static_cast<unsigned char>(c)) != 0;
}

// Parses attributes from `pos` up to the closing '>'. Returns the position
// just past '>' (or end of input when the tag never closes).
std::size_t parse_attributes(std::string_view body, std::size_t pos, Tag& tag) {
    const std::size_t n = body.size();
    while (pos < n) {
        while (pos < n && (is_space(body[pos]) || body[pos] == '/')) ++pos;
        if (pos >= n) return n;
        if (body[pos] == '>') return pos + 1;

        std::size_t name_start = pos;
        while (pos < n && !is_space(body[pos]) && body[pos] != '=' && body[pos] != '>' &&
               body[pos] != '/') {
            ++pos;
        }
        std::string attr_name = to_lower(std::string(body.substr(name_start, pos - name_start)));
        while (pos < n && is_space(body[pos])) ++pos;

        std::string value;
        if (pos < n && body[pos] == '=') {
            ++pos;
            while (pos < n && is_space(body[pos])) ++pos;
            if (pos < n && (body[pos] == '"' || body[pos] == '\'')) {
                char quote = body[pos++];
                std::size_t value_start = pos;
                while (pos < n && body[pos] != quote) ++pos;
                value = std::string(body.substr(value_start, pos - value_start));
                if (pos < n) ++pos;  // closing quote
            } else {
                std::size_t value_start = pos;
                while (pos < n && !is_space(body[pos]) && body[pos] != '>') ++pos;
                value = std::string(body.substr(value_start, pos - value_start));
            }
        }
        if (!attr_name.empty()) {
            tag.attributes.emplace_back(std::move(attr_name), std::move(value));
        }
    }
    return n;
}

// Raw-text elements swallow everything until their close tag.
std::size_t skip_raw_text(std::string_view body, std::size_t pos, std::string_view close_tag) {
    const std::size_t n = body.size();
    while (pos < n) {
        if (body[pos] == '<' && starts_with_ci(body, pos, close_tag)) {
            auto gt = body.find('>', pos);
            return gt == std::string_view::npos ? n : gt + 1;
        }
        ++pos;
    }
    return n;
}

}  // namespace

std::optional<std::string> Tag::attribute(std::string_view attr_name) const {
    for (const auto& [name, value] : attributes) {
        if (name == attr_name) return value;
    }
    return std::nullopt;
}

bool Tag::has_attribute(std::string_view attr_name) const {
    for (const auto& [name, value] : attributes) {
        if (name == attr_name) return true;
    }
    return false;
}

std::vector<const Tag*> Document::tags_named(std::string_view name) const {
    std::vector<const Tag*> out;
    for (const auto& tag : tags) {
        if (tag.name == name) out.push_back(&tag);
    }
    return out;
}

std::vector<std::string> Document::anchor_targets() const {
    std::vector<std::string> out;
    for (const auto& tag : tags) {
        if (tag.name != "a") continue;
        if (auto href = tag.attribute("href")) out.push_back(*href);
    }
    return out;
}

Document scan(std::string_view body) {
    if (body.size() >= 2) {
        unsigned char b0 = static_cast<unsigned char>(body[0]);
        unsigned char b1 = static_cast<unsigned char>(body[1]);
        if ((b0 == 0xFF && b1 == 0xFE) || (b0 == 0xFE && b1 == 0xFF)) {
            throw DataError("undecodable body encoding: UTF-16 byte order mark");
        }
    }
    if (body.find('\0') != std::string_view::npos) {
        throw DataError("undecodable body encoding: NUL byte in document");
    }

    Document doc;
    const std::size_t n = body.size();
    std::size_t pos = 0;
    while (pos < n) {
        if (body[pos] != '<') {
            ++pos;
            continue;
        }
        if (starts_with_ci(body, pos, "<!--")) {
            auto end = body.find("-->", pos + 4);
            pos = end == std::string_view::npos ? n : end + 3;
            continue;
        }
        if (starts_with_ci(body, pos, "<!doctype")) {
            doc.has_doctype = true;
            auto gt = body.find('>', pos);
            pos = gt == std::string_view::npos ? n : gt + 1;
            continue;
        }
        if (pos + 1 < n && (body[pos + 1] == '!' || body[pos + 1] == '?' || body[pos + 1] == '/')) {
            auto gt = body.find('>', pos);
            pos = gt == std::string_view::npos ? n : gt + 1;
            continue;
        }
        if (pos + 1 >= n || !is_name_start(body[pos + 1])) {
            ++pos;  // stray '<' in text
            continue;
        }

        std::size_t name_start = pos + 1;
        std::size_t name_end = name_start;
        while (name_end < n && is_name_char(body[name_end])) ++name_end;
        Tag tag;
        tag.name = to_lower(std::string(body.substr(name_start, name_end - name_start)));
        pos = parse_attributes(body, name_end, tag);

        if (tag.name == "script") {
            pos = skip_raw_text(body, pos, "</script");
        } else if (tag.name == "style") {
            pos = skip_raw_text(body, pos, "</style");
        }
        doc.tags.push_back(std::move(tag));
    }
    return doc;
}

}  // namespace codai::html
