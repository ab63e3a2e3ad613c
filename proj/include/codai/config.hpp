#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "codai/crawler.hpp"
#include "codai/extractor.hpp"
#include "codai/index.hpp"
#include "codai/registry.hpp"
#include "codai/stats.hpp"

namespace codai::config {

struct Config {
    // registry input
    registry::ColumnSchema columns;
    char delimiter = ',';

    // crawling
    crawler::CrawlPolicy policy;
    int crawl_workers = 4;

    // extraction
    extractor::RequestTimeMode request_time_mode = extractor::RequestTimeMode::total;
    std::string public_suffix_file;  // empty: built-in rules

    // website age
    std::string wayback_cache_path;
    std::string wayback_api_origin = "http://web.archive.org";
    bool wayback_offline = false;
    int years_old_cap = 25;
    int reference_year = 0;  // 0: current UTC year

    // index
    std::set<std::string> invert_set = index::default_invert_set();
    std::string scheme = "codai";  // built-in name or path to a scheme JSON file
    bool mean_divisors = false;

    // aggregation + clustering
    std::optional<int> min_count_nuts3;         // default 1
    std::optional<int> min_count_municipality;  // default 10
    int cluster_k = 3;
    int elbow_k_min = 1;
    int elbow_k_max = 6;

    // regression
    std::vector<stats::RegressionSpec> regressions;  // empty: one OLS on the index total

    std::uint64_t seed = 42;
    std::string digest = "default";  // content hash of the loaded file
};

Config load_config(const std::string& path);
Config parse_config(const std::string& json_text);

// Resolves the configured scheme (built-in name or file path), applying the
// mean-divisors substitution when requested.
index::DimensionScheme resolve_scheme(const Config& config);
index::DimensionScheme resolve_scheme(const Config& config, const std::string& override_name);

url::SuffixRules resolve_suffix_rules(const Config& config);

std::uint64_t fnv1a(const std::string& bytes);
std::string fnv1a_hex(const std::string& bytes);

}  // namespace codai::config
