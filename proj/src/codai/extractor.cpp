#include "codai/extractor.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "codai/csv.hpp"
#include "codai/errors.hpp"
#include "codai/html.hpp"

namespace codai::extractor {

namespace {

std::string to_lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::string trim(const std::string& s) {
    auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return {};
    auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

bool value_equals_ci(const std::string& value, const std::string& expected) {
    return to_lower(trim(value)) == expected;
}

// Resolved http(s) anchor targets, deduplicated by exact string.
std::vector<url::Url> resolved_anchor_targets(const html::Document& doc,
                                              const url::Url& base_url) {
    std::set<std::string> seen;
    std::vector<url::Url> targets;
    for (const std::string& raw : doc.anchor_targets()) {
        std::string href = trim(raw);
        if (href.empty()) continue;
        std::string scheme = url::scheme_of(href);
        if (!scheme.empty() && scheme != "http" && scheme != "https") continue;
        auto resolved = url::resolve(base_url, href);
        if (!resolved) continue;
        std::string key = resolved->serialize();
        if (seen.insert(key).second) {
            targets.push_back(*resolved);
        }
    }
    return targets;
}

bool has_charset_declaration(const html::Document& doc) {
    for (const html::Tag* meta : doc.tags_named("meta")) {
        if (meta->has_attribute("charset")) return true;
        auto equiv = meta->attribute("http-equiv");
        if (equiv && value_equals_ci(*equiv, "content-type")) {
            auto content = meta->attribute("content");
            if (content && to_lower(*content).find("charset=") != std::string::npos) return true;
        }
    }
    return false;
}

bool has_viewport(const html::Document& doc) {
    for (const html::Tag* meta : doc.tags_named("meta")) {
        auto name = meta->attribute("name");
        if (name && value_equals_ci(*name, "viewport")) return true;
    }
    return false;
}

bool has_mixed_content(const html::Document& doc) {
    static const std::set<std::string> resource_tags = {"img",  "script", "iframe", "link",
                                                        "source", "audio",  "video",  "embed"};
    for (const html::Tag& tag : doc.tags) {
        if (resource_tags.count(tag.name) == 0) continue;
        for (const char* attr : {"src", "href"}) {
            auto value = tag.attribute(attr);
            if (value && to_lower(trim(*value)).rfind("http://", 0) == 0) return true;
        }
    }
    return false;
}

bool header_present(const crawler::HeaderMap& headers, const std::string& name) {
    return headers.find(name) != headers.end();
}

bool any_insecure_cookie(const crawler::HeaderMap& headers) {
    auto [begin, end] = headers.equal_range("Set-Cookie");
    for (auto it = begin; it != end; ++it) {
        bool secure = false;
        std::istringstream parts(it->second);
        std::string part;
        while (std::getline(parts, part, ';')) {
            if (value_equals_ci(part, "secure")) {
                secure = true;
                break;
            }
        }
        if (!secure) return true;
    }
    return false;
}

}  // namespace

const std::array<std::string, kFeatureCount>& feature_keys() {
    static const std::array<std::string, kFeatureCount> keys = {
        "unique_links_in", "unique_links_out", "best_practices", "length_url",
        "facebook",        "instagram",        "linkedin",       "years_old",
        "request_time",    "security_header_int",
    };
    return keys;
}

const std::array<std::string, kFeatureCount>& display_names() {
    static const std::array<std::string, kFeatureCount> names = {
        "unique_links_in", "unique_links_out", "best-practices", "length_url",
        "Facebook",        "Instagram",        "LinkedIn",       "years_old",
        "request_time",    "security_header_int",
    };
    return names;
}

std::size_t feature_index(const std::string& key) {
    const auto& keys = feature_keys();
    for (std::size_t i = 0; i < keys.size(); ++i) {
        if (keys[i] == key) return i;
    }
    throw ConfigError("unknown feature key: " + key);
}

std::array<double, kFeatureCount> RawFeatures::to_vector() const {
    return {static_cast<double>(unique_links_in),
            static_cast<double>(unique_links_out),
            best_practices,
            static_cast<double>(length_url),
            static_cast<double>(facebook),
            static_cast<double>(instagram),
            static_cast<double>(linkedin),
            static_cast<double>(years_old),
            request_time,
            static_cast<double>(security_header_int)};
}

std::size_t url_length(const std::string& raw_url) {
    return url::display_length(raw_url);
}

LinkCounts extract_links(const std::string& body, const url::Url& base_url,
                         const url::SuffixRules& rules) {
    html::Document doc = html::scan(body);
    std::string base_domain = rules.registrable_domain(base_url.host);

    LinkCounts counts;
    for (const url::Url& target : resolved_anchor_targets(doc, base_url)) {
        if (rules.registrable_domain(target.host) == base_domain) {
            ++counts.unique_links_in;
        } else {
            ++counts.unique_links_out;
        }
    }
    return counts;
}

SocialFlags detect_social(const std::string& body, const url::Url& base_url) {
    html::Document doc = html::scan(body);
    SocialFlags flags;
    for (const url::Url& target : resolved_anchor_targets(doc, base_url)) {
        if (url::host_matches_domain(target.host, "facebook.com")) flags.facebook = 1;
        if (url::host_matches_domain(target.host, "instagram.com")) flags.instagram = 1;
        if (url::host_matches_domain(target.host, "linkedin.com")) flags.linkedin = 1;
    }
    return flags;
}

double score_best_practices(const std::string& body, const crawler::CrawlResult& result) {
    html::Document doc = html::scan(body);
    int passed = 0;

    if (doc.has_doctype) ++passed;                                          // 1
    if (has_charset_declaration(doc)) ++passed;                             // 2
    if (doc.tags_named("font").empty() && doc.tags_named("center").empty() &&
        doc.tags_named("marquee").empty()) {
        ++passed;                                                           // 3
    }
    bool lang_present = false;
    for (const html::Tag* tag : doc.tags_named("html")) {
        auto lang = tag->attribute("lang");
        if (lang && !trim(*lang).empty()) lang_present = true;
    }
    if (lang_present) ++passed;                                             // 4
    if (has_viewport(doc)) ++passed;                                        // 5
    if (result.scheme == "https") ++passed;                                 // 6
    if (result.scheme == "https" && !has_mixed_content(doc)) ++passed;      // 7
    bool all_img_alt = true;
    for (const html::Tag* img : doc.tags_named("img")) {
        if (!img->has_attribute("alt")) all_img_alt = false;
    }
    if (all_img_alt) ++passed;                                              // 8
    if (!doc.tags_named("title").empty()) ++passed;                         // 9
    bool all_iframes_titled = true;
    for (const html::Tag* frame : doc.tags_named("iframe")) {
        if (!frame->has_attribute("title")) all_iframes_titled = false;
    }
    if (all_iframes_titled) ++passed;                                       // 10

    return passed / 10.0;
}

int score_security(const crawler::HeaderMap& headers, const std::string& scheme) {
    int penalty = 0;
    if (!header_present(headers, "Strict-Transport-Security")) penalty += 3;
    if (!header_present(headers, "Content-Security-Policy")) penalty += 3;
    if (!header_present(headers, "X-Frame-Options")) penalty += 2;
    if (!header_present(headers, "X-Content-Type-Options")) penalty += 2;
    if (!header_present(headers, "Referrer-Policy")) penalty += 2;
    if (!header_present(headers, "Permissions-Policy")) penalty += 1;
    if (any_insecure_cookie(headers)) penalty += 1;
    if (scheme != "https") penalty += 1;
    return penalty;
}

double request_time(const crawler::CrawlResult& result, RequestTimeMode mode) {
    return mode == RequestTimeMode::ttfb ? result.ttfb_seconds : result.total_seconds;
}

RawFeatures extract_features(const crawler::CrawlResult& result, int years_old,
                             const ExtractOptions& options) {
    RawFeatures features;
    features.firm_id = result.firm_id;

    auto base = url::parse(result.final_url);
    if (!base) {
        throw DataError("firm " + result.firm_id + ": final url is unparsable: " +
                        result.final_url);
    }

    try {
        LinkCounts links = extract_links(result.body, *base, options.suffix_rules);
        features.unique_links_in = links.unique_links_in;
        features.unique_links_out = links.unique_links_out;

        SocialFlags social = detect_social(result.body, *base);
        features.facebook = social.facebook;
        features.instagram = social.instagram;
        features.linkedin = social.linkedin;

        features.best_practices = score_best_practices(result.body, result);
    } catch (const DataError& err) {
        throw DataError("firm " + result.firm_id + ": " + err.what());
    }

    features.length_url = static_cast<long long>(url_length(result.final_url));
    features.years_old = years_old;
    features.request_time = request_time(result, options.request_time_mode);
    features.security_header_int = score_security(result.response_headers, result.scheme);
    return features;
}

std::vector<std::string> feature_file_header() {
    std::vector<std::string> header = {"firm_id"};
    for (const std::string& name : display_names()) header.push_back(name);
    return header;
}

std::vector<std::string> feature_file_row(const RawFeatures& f) {
    return {
        f.firm_id,
        csv::format_int(f.unique_links_in),
        csv::format_int(f.unique_links_out),
        csv::format_double(f.best_practices, 6),
        csv::format_int(f.length_url),
        csv::format_int(f.facebook),
        csv::format_int(f.instagram),
        csv::format_int(f.linkedin),
        csv::format_int(f.years_old),
        csv::format_double(f.request_time, 6),
        csv::format_int(f.security_header_int),
    };
}

std::vector<RawFeatures> read_feature_file(const std::string& path, char delimiter) {
    csv::Table table = csv::read_file(path, delimiter);
    const auto& names = display_names();
    for (const std::string& name : names) {
        if (!table.has_column(name)) {
            throw ConfigError("feature file is missing column: " + name);
        }
    }
    std::vector<RawFeatures> out;
    for (const csv::Row& row : table.rows()) {
        RawFeatures f;
        f.firm_id = row.at("firm_id");
        f.unique_links_in = std::stoll(row.at(names[kUniqueLinksIn]));
        f.unique_links_out = std::stoll(row.at(names[kUniqueLinksOut]));
        f.best_practices = std::stod(row.at(names[kBestPractices]));
        f.length_url = std::stoll(row.at(names[kLengthUrl]));
        f.facebook = std::stoi(row.at(names[kFacebook]));
        f.instagram = std::stoi(row.at(names[kInstagram]));
        f.linkedin = std::stoi(row.at(names[kLinkedin]));
        f.years_old = std::stoi(row.at(names[kYearsOld]));
        f.request_time = std::stod(row.at(names[kRequestTime]));
        f.security_header_int = std::stoi(row.at(names[kSecurityHeader]));
        out.push_back(std::move(f));
    }
    return out;
}

}  // namespace codai::extractor
