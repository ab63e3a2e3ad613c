#include "codai/url.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "codai/errors.hpp"

namespace codai::url {

namespace {

std::string to_lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

bool is_scheme_char(char c, bool first) {
    if (std::isalpha(static_cast<unsigned char>(c))) return true;
    if (first) return false;
    return std::isdigit(static_cast<unsigned char>(c)) || c == '+' || c == '-' || c == '.';
}

// Dot-segment removal per the generic-URI merge rules.
std::string remove_dot_segments(const std::string& path) {
    std::string input = path;
    std::string output;
    while (!input.empty()) {
        if (input.rfind("../", 0) == 0) {
            input.erase(0, 3);
        } else if (input.rfind("./", 0) == 0) {
            input.erase(0, 2);
        } else if (input.rfind("/./", 0) == 0) {
            input.erase(0, 2);
        } else if (input == "/.") {
            input = "/";
        } else if (input.rfind("/../", 0) == 0) {
            input.erase(0, 3);
            auto slash = output.find_last_of('/');
            output.erase(slash == std::string::npos ? 0 : slash);
        } else if (input == "/..") {
            input = "/";
            auto slash = output.find_last_of('/');
            output.erase(slash == std::string::npos ? 0 : slash);
        } else if (input == "." || input == "..") {
            input.clear();
        } else {
            std::size_t start = input[0] == '/' ? 1 : 0;
            auto next = input.find('/', start);
            output += input.substr(0, next == std::string::npos ? input.size() : next);
            input.erase(0, next == std::string::npos ? input.size() : next);
        }
    }
    return output;
}

std::vector<std::string> split_labels(const std::string& host) {
    std::vector<std::string> labels;
    std::string label;
    std::istringstream ss(host);
    while (std::getline(ss, label, '.')) labels.push_back(label);
    return labels;
}

// Pruned default rule set: common generic TLD structures plus the multi-label
// suffixes most likely to appear in a European firm registry. The implicit "*"
// rule covers everything else, so unknown TLDs still split as suffix + 1 label.
const char* kDefaultRules[] = {
    "com", "org", "net", "edu", "gov", "int", "mil", "info", "biz", "name", "eu",
    "it", "gov.it", "edu.it",
    "uk", "co.uk", "org.uk", "gov.uk", "ac.uk", "net.uk",
    "de", "fr", "es", "nl", "be", "at", "ch", "pt", "gr", "pl", "cz", "ie", "dk",
    "se", "no", "fi", "us", "ca", "com.au", "net.au", "org.au", "au",
    "co.jp", "ne.jp", "or.jp", "jp", "com.br", "br", "cn", "com.cn", "ru", "com.ru",
    "io", "co", "me", "tv", "app", "dev", "cloud", "online", "shop", "site", "store",
};

}  // namespace

std::string Url::authority() const {
    return port.empty() ? host : host + ":" + port;
}

std::string Url::serialize() const {
    std::string out = scheme + "://" + authority();
    out += path.empty() ? "/" : path;
    if (!query.empty()) out += "?" + query;
    if (!fragment.empty()) out += "#" + fragment;
    return out;
}

std::string scheme_of(const std::string& reference) {
    if (reference.empty() || !is_scheme_char(reference[0], true)) return {};
    for (std::size_t i = 1; i < reference.size(); ++i) {
        if (reference[i] == ':') return to_lower(reference.substr(0, i));
        if (!is_scheme_char(reference[i], false)) return {};
    }
    return {};
}

std::optional<Url> parse(const std::string& raw) {
    std::string scheme = scheme_of(raw);
    if (scheme.empty()) return std::nullopt;
    std::size_t rest = scheme.size() + 1;
    if (raw.compare(rest, 2, "//") != 0) return std::nullopt;
    rest += 2;

    Url u;
    u.scheme = scheme;
    std::size_t authority_end = raw.find_first_of("/?#", rest);
    std::string authority = raw.substr(rest, authority_end == std::string::npos
                                                 ? std::string::npos
                                                 : authority_end - rest);
    // strip userinfo if present
    auto at = authority.find('@');
    if (at != std::string::npos) authority.erase(0, at + 1);
    auto colon = authority.find(':');
    if (colon != std::string::npos) {
        u.port = authority.substr(colon + 1);
        authority.erase(colon);
    }
    u.host = to_lower(authority);
    if (u.host.empty()) return std::nullopt;

    if (authority_end == std::string::npos) {
        u.path = "";
        return u;
    }
    std::string tail = raw.substr(authority_end);
    auto hash = tail.find('#');
    if (hash != std::string::npos) {
        u.fragment = tail.substr(hash + 1);
        tail.erase(hash);
    }
    auto qmark = tail.find('?');
    if (qmark != std::string::npos) {
        u.query = tail.substr(qmark + 1);
        tail.erase(qmark);
    }
    u.path = tail;
    return u;
}

std::optional<Url> resolve(const Url& base, const std::string& reference) {
    if (reference.empty()) return base;
    std::string scheme = scheme_of(reference);
    if (!scheme.empty()) {
        if (scheme != "http" && scheme != "https") return std::nullopt;
        return parse(reference);
    }
    if (reference.rfind("//", 0) == 0) {
        return parse(base.scheme + ":" + reference);
    }
    Url u = base;
    u.fragment.clear();
    u.query.clear();
    std::string ref = reference;
    auto hash = ref.find('#');
    if (hash != std::string::npos) {
        u.fragment = ref.substr(hash + 1);
        ref.erase(hash);
    }
    auto qmark = ref.find('?');
    if (qmark != std::string::npos) {
        u.query = ref.substr(qmark + 1);
        ref.erase(qmark);
    }
    if (ref.empty()) {
        u.path = base.path;
        return u;
    }
    if (ref[0] == '/') {
        u.path = remove_dot_segments(ref);
        return u;
    }
    // merge with base path
    std::string dir = base.path;
    auto slash = dir.find_last_of('/');
    dir = slash == std::string::npos ? "/" : dir.substr(0, slash + 1);
    u.path = remove_dot_segments(dir + ref);
    return u;
}

SuffixRules::SuffixRules() {
    for (const char* rule : kDefaultRules) exact_.emplace_back(rule);
}

SuffixRules SuffixRules::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open public-suffix rules: " + path);
    SuffixRules rules;
    rules.exact_.clear();
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.rfind("//", 0) == 0) continue;
        line = to_lower(line);
        if (line[0] == '!') {
            rules.exception_.push_back(line.substr(1));
        } else if (line.rfind("*.", 0) == 0) {
            rules.wildcard_.push_back(line.substr(2));
        } else {
            rules.exact_.push_back(line);
        }
    }
    return rules;
}

std::size_t SuffixRules::suffix_labels(const std::string& host) const {
    auto labels = split_labels(host);
    std::size_t n = labels.size();
    std::size_t best = 1;  // implicit "*" rule

    auto tail = [&](std::size_t count) {
        std::string joined;
        for (std::size_t i = n - count; i < n; ++i) {
            if (!joined.empty()) joined.push_back('.');
            joined += labels[i];
        }
        return joined;
    };

    for (std::size_t count = 1; count <= n; ++count) {
        std::string candidate = tail(count);
        if (std::find(exception_.begin(), exception_.end(), candidate) != exception_.end()) {
            // exception rule: suffix is one label shorter than the rule
            return count - 1;
        }
        if (std::find(exact_.begin(), exact_.end(), candidate) != exact_.end()) {
            best = std::max(best, count);
        }
        if (count >= 2) {
            // wildcard "*.<rest>" matches <anything>.<rest>
            std::string rest = tail(count - 1);
            if (std::find(wildcard_.begin(), wildcard_.end(), rest) != wildcard_.end()) {
                best = std::max(best, count);
            }
        }
    }
    return best;
}

std::string SuffixRules::registrable_domain(const std::string& host) const {
    std::string h = to_lower(host);
    auto labels = split_labels(h);
    if (labels.size() <= 1) return h;
    std::size_t suffix = suffix_labels(h);
    if (suffix >= labels.size()) return h;
    std::size_t keep = suffix + 1;
    std::string out;
    for (std::size_t i = labels.size() - keep; i < labels.size(); ++i) {
        if (!out.empty()) out.push_back('.');
        out += labels[i];
    }
    return out;
}

std::size_t display_length(const std::string& raw) {
    std::string s = raw;
    std::string lower = to_lower(s);
    if (lower.rfind("https://", 0) == 0) {
        s.erase(0, 8);
    } else if (lower.rfind("http://", 0) == 0) {
        s.erase(0, 7);
    }
    if (!s.empty() && s.back() == '/') s.pop_back();
    return s.size();
}

bool host_matches_domain(const std::string& host, const std::string& domain) {
    std::string h = to_lower(host);
    std::string d = to_lower(domain);
    if (h == d) return true;
    if (h.size() > d.size() && h.compare(h.size() - d.size(), d.size(), d) == 0 &&
        h[h.size() - d.size() - 1] == '.') {
        return true;
    }
    return false;
}

}  // namespace codai::url
