#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace codai::html {

// One opening tag as it appeared in the markup. Names and attribute names are
// lowercased; attribute values keep their original bytes.
struct Tag {
    std::string name;
    std::vector<std::pair<std::string, std::string>> attributes;

    std::optional<std::string> attribute(std::string_view attr_name) const;
    bool has_attribute(std::string_view attr_name) const;
};

struct Document {
    bool has_doctype = false;
    std::vector<Tag> tags;

    std::vector<const Tag*> tags_named(std::string_view name) const;
    // href values of all <a> tags, in document order, untrimmed duplicates kept
    std::vector<std::string> anchor_targets() const;
};

// Tolerant single-pass scan. Never throws on malformed markup: stray brackets,
// unclosed tags and bad nesting all degrade to skipped text. Throws DataError
// only for undecodable input (UTF-16 BOM or NUL bytes, i.e. not a byte-wise
// ASCII-compatible encoding).
Document scan(std::string_view body);

}  // namespace codai::html
