#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "codai/crawler.hpp"
#include "codai/url.hpp"

namespace codai::extractor {

// The ten homepage features, in the canonical column order used by every
// feature file. Internal keys are snake_case; display_names() carries the
// exact output-file spellings.
inline constexpr std::size_t kFeatureCount = 10;

enum FeatureIndex : std::size_t {
    kUniqueLinksIn = 0,
    kUniqueLinksOut = 1,
    kBestPractices = 2,
    kLengthUrl = 3,
    kFacebook = 4,
    kInstagram = 5,
    kLinkedin = 6,
    kYearsOld = 7,
    kRequestTime = 8,
    kSecurityHeader = 9,
};

const std::array<std::string, kFeatureCount>& feature_keys();
const std::array<std::string, kFeatureCount>& display_names();
std::size_t feature_index(const std::string& key);  // ConfigError on unknown key

struct RawFeatures {
    std::string firm_id;
    long long length_url = 0;
    long long unique_links_in = 0;
    long long unique_links_out = 0;
    double best_practices = 0.0;   // fraction of passed checks, in [0,1]
    int facebook = 0;
    int instagram = 0;
    int linkedin = 0;
    int years_old = 0;             // in [0,25]
    double request_time = 0.0;     // seconds
    int security_header_int = 0;   // penalty, 0 best .. 15 worst

    std::array<double, kFeatureCount> to_vector() const;
};

// Character count after stripping the scheme prefix; "www." kept, one trailing
// "/" dropped.
std::size_t url_length(const std::string& raw_url);

struct LinkCounts {
    long long unique_links_in = 0;
    long long unique_links_out = 0;
};

// Collects anchor targets, resolves them against base_url, deduplicates by the
// exact resolved string, and splits internal/external by registrable domain.
// Non-http(s) schemes are excluded from both counts.
LinkCounts extract_links(const std::string& body, const url::Url& base_url,
                         const url::SuffixRules& rules);

struct SocialFlags {
    int facebook = 0;
    int instagram = 0;
    int linkedin = 0;
};

// Flag is 1 iff some anchor target's host is the platform's domain or one of
// its subdomains.
SocialFlags detect_social(const std::string& body, const url::Url& base_url);

// Fixed static checklist, one point each:
//   1 doctype declared            6 final scheme is https
//   2 charset declared            7 https page free of http:// resource refs
//   3 no font/center/marquee      8 every <img> carries alt
//   4 <html lang> present         9 <title> present
//   5 viewport meta present      10 no <iframe> missing title
double score_best_practices(const std::string& body, const crawler::CrawlResult& result);

// Penalty points for absent protections: HSTS +3, CSP +3, X-Frame-Options +2,
// X-Content-Type-Options +2, Referrer-Policy +2, Permissions-Policy +1, any
// Set-Cookie without Secure +1, plain-http final scheme +1. Range 0..15.
int score_security(const crawler::HeaderMap& headers, const std::string& scheme);

enum class RequestTimeMode { total, ttfb };

double request_time(const crawler::CrawlResult& result, RequestTimeMode mode);

struct ExtractOptions {
    RequestTimeMode request_time_mode = RequestTimeMode::total;
    url::SuffixRules suffix_rules{};
};

// Assembles all ten features from a valid crawl. Throws DataError (with the
// firm id) for undecodable bodies; never called on invalid results.
RawFeatures extract_features(const crawler::CrawlResult& result, int years_old,
                             const ExtractOptions& options = {});

// Feature file round trip (delimiter-separated, firm_id + the ten columns).
std::vector<std::string> feature_file_header();
std::vector<std::string> feature_file_row(const RawFeatures& features);
std::vector<RawFeatures> read_feature_file(const std::string& path, char delimiter = ',');

}  // namespace codai::extractor
