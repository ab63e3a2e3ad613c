#pragma once

#include <optional>
#include <string>
#include <vector>

namespace codai::url {

struct Url {
    std::string scheme;     // lowercase
    std::string host;       // lowercase, no brackets handling for v6 (not needed here)
    std::string port;       // empty when default
    std::string path;       // starts with '/' when nonempty authority
    std::string query;      // without '?'
    std::string fragment;   // without '#'

    std::string authority() const;   // host[:port]
    std::string serialize() const;
};

// Parses an absolute http(s)-style URL. Returns nullopt when there is no
// scheme or no host.
std::optional<Url> parse(const std::string& raw);

// Resolves a reference (absolute, scheme-relative, absolute-path, or relative)
// against an absolute base. Returns nullopt for unsupported inputs such as
// "mailto:" targets when asked for an http(s) resolution.
std::optional<Url> resolve(const Url& base, const std::string& reference);

// Scheme of a raw reference, lowercase, or empty when the reference is relative.
std::string scheme_of(const std::string& reference);

// Public-suffix rules. Exact rules, "*." wildcard rules and "!" exception
// rules per the standard matching algorithm; an implicit "*" rule applies when
// nothing matches, so every bare TLD acts as a public suffix.
class SuffixRules {
public:
    SuffixRules();  // built-in default rule set
    static SuffixRules from_file(const std::string& path);

    // "shop.acme.co.uk" -> "acme.co.uk"; returns the host itself when it is a
    // public suffix or has a single label.
    std::string registrable_domain(const std::string& host) const;

private:
    std::vector<std::string> exact_;
    std::vector<std::string> wildcard_;   // stored without the leading "*."
    std::vector<std::string> exception_;  // stored without the leading "!"
    std::size_t suffix_labels(const std::string& host) const;
};

// Character count of a URL after dropping the scheme prefix and any single
// trailing slash; "www." is kept.
std::size_t display_length(const std::string& raw);

// True when `host` equals `domain` or is a subdomain of it (case-insensitive).
bool host_matches_domain(const std::string& host, const std::string& domain);

}  // namespace codai::url
