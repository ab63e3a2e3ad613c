#include "codai/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "codai/errors.hpp"

namespace codai::config {

namespace {

std::string read_whole_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

stats::RegressionSpec parse_regression(const nlohmann::json& entry) {
    stats::RegressionSpec spec;
    spec.dependent = entry.at("dependent").get<std::string>();
    std::string model = entry.value("model", "ols");
    if (model == "ols") {
        spec.model = stats::ModelKind::ols;
    } else if (model == "logit") {
        spec.model = stats::ModelKind::logit;
    } else {
        throw ConfigError("regression model must be \"ols\" or \"logit\", got: " + model);
    }
    spec.intercept = entry.value("intercept", true);
    spec.size_dummies = entry.value("size_dummies", true);
    spec.firm_age = entry.value("firm_age", true);
    spec.urban_pole = entry.value("urban_pole", true);
    spec.region_dummies = entry.value("region_dummies", true);
    spec.wideband = entry.value("wideband", true);
    if (entry.contains("sectors")) {
        spec.sector_dummies.clear();
        for (const auto& sector : entry["sectors"]) {
            spec.sector_dummies.push_back(sector.get<std::string>());
        }
    }
    return spec;
}

}  // namespace

Config parse_config(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& err) {
        throw ConfigError(std::string("config is not valid JSON: ") + err.what());
    }

    Config cfg;
    cfg.digest = fnv1a_hex(json_text);

    if (doc.contains("columns")) {
        const auto& cols = doc["columns"];
        cfg.columns.firm_id = cols.value("firm_id", cfg.columns.firm_id);
        cfg.columns.url = cols.value("url", cfg.columns.url);
        cfg.columns.nace = cols.value("nace", cfg.columns.nace);
        cfg.columns.employees = cols.value("employees", cfg.columns.employees);
        cfg.columns.founding_year = cols.value("founding_year", cfg.columns.founding_year);
        cfg.columns.nuts3 = cols.value("nuts3", cfg.columns.nuts3);
        cfg.columns.municipality = cols.value("municipality", cfg.columns.municipality);
        cfg.columns.macro_region = cols.value("macro_region", cfg.columns.macro_region);
        cfg.columns.urban_pole = cols.value("urban_pole", cfg.columns.urban_pole);
    }
    if (doc.contains("delimiter")) {
        std::string d = doc["delimiter"].get<std::string>();
        if (d.size() != 1) throw ConfigError("delimiter must be a single character");
        cfg.delimiter = d[0];
    }

    if (doc.contains("crawl")) {
        const auto& crawl = doc["crawl"];
        cfg.policy.timeout_seconds = crawl.value("timeout_seconds", cfg.policy.timeout_seconds);
        cfg.policy.per_host_min_interval_seconds =
            crawl.value("per_host_min_interval_seconds", cfg.policy.per_host_min_interval_seconds);
        cfg.policy.max_redirects = crawl.value("max_redirects", cfg.policy.max_redirects);
        cfg.policy.user_agent = crawl.value("user_agent", cfg.policy.user_agent);
        cfg.policy.respect_robots = crawl.value("respect_robots", cfg.policy.respect_robots);
        cfg.crawl_workers = crawl.value("workers", cfg.crawl_workers);
        if (cfg.policy.timeout_seconds <= 0.0) {
            throw ConfigError("crawl.timeout_seconds must be positive");
        }
    }

    if (doc.contains("request_time_mode")) {
        std::string mode = doc["request_time_mode"].get<std::string>();
        if (mode == "total") {
            cfg.request_time_mode = extractor::RequestTimeMode::total;
        } else if (mode == "ttfb") {
            cfg.request_time_mode = extractor::RequestTimeMode::ttfb;
        } else {
            throw ConfigError("request_time_mode must be \"total\" or \"ttfb\"");
        }
    }
    cfg.public_suffix_file = doc.value("public_suffix_file", cfg.public_suffix_file);

    if (doc.contains("wayback")) {
        const auto& wb = doc["wayback"];
        cfg.wayback_cache_path = wb.value("cache_path", cfg.wayback_cache_path);
        cfg.wayback_api_origin = wb.value("api_origin", cfg.wayback_api_origin);
        cfg.wayback_offline = wb.value("offline", cfg.wayback_offline);
        cfg.years_old_cap = wb.value("years_old_cap", cfg.years_old_cap);
    }
    cfg.reference_year = doc.value("reference_year", cfg.reference_year);

    if (doc.contains("invert_set")) {
        cfg.invert_set.clear();
        for (const auto& key : doc["invert_set"]) {
            std::string k = key.get<std::string>();
            extractor::feature_index(k);  // validates
            cfg.invert_set.insert(k);
        }
    }
    cfg.scheme = doc.value("scheme", cfg.scheme);
    cfg.mean_divisors = doc.value("mean_divisors", cfg.mean_divisors);

    if (doc.contains("aggregate")) {
        const auto& agg = doc["aggregate"];
        if (agg.contains("min_count_nuts3")) cfg.min_count_nuts3 = agg["min_count_nuts3"].get<int>();
        if (agg.contains("min_count_municipality")) {
            cfg.min_count_municipality = agg["min_count_municipality"].get<int>();
        }
    }
    if (doc.contains("cluster")) {
        const auto& cluster = doc["cluster"];
        cfg.cluster_k = cluster.value("k", cfg.cluster_k);
        cfg.elbow_k_min = cluster.value("elbow_k_min", cfg.elbow_k_min);
        cfg.elbow_k_max = cluster.value("elbow_k_max", cfg.elbow_k_max);
    }
    if (doc.contains("regressions")) {
        for (const auto& entry : doc["regressions"]) {
            cfg.regressions.push_back(parse_regression(entry));
        }
    }
    cfg.seed = doc.value("seed", cfg.seed);
    return cfg;
}

Config load_config(const std::string& path) {
    return parse_config(read_whole_file(path));
}

index::DimensionScheme resolve_scheme(const Config& config) {
    return resolve_scheme(config, config.scheme);
}

index::DimensionScheme resolve_scheme(const Config& config, const std::string& override_name) {
    index::DimensionScheme scheme;
    if (override_name == "codai" || override_name == "wai2001" || override_name == "sum10") {
        scheme = index::builtin_scheme(override_name);
    } else {
        // anything else is a path to a scheme JSON file
        scheme = index::scheme_from_json(read_whole_file(override_name));
    }
    if (config.mean_divisors) scheme = index::with_mean_divisors(scheme);
    scheme.validate();
    return scheme;
}

url::SuffixRules resolve_suffix_rules(const Config& config) {
    if (config.public_suffix_file.empty()) return url::SuffixRules();
    return url::SuffixRules::from_file(config.public_suffix_file);
}

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t hash = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 1099511628211ULL;
    }
    return hash;
}

std::string fnv1a_hex(const std::string& bytes) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a(bytes)));
    return buf;
}

}  // namespace codai::config
