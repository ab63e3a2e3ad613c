#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "codai/config.hpp"
#include "codai/crawler.hpp"
#include "codai/spatial.hpp"
#include "codai/stats.hpp"

namespace codai::pipeline {

// Per-run bookkeeping persisted next to each stage's outputs. The crawl counts
// always reconcile: valid + invalid + robots_excluded == attempted.
struct RunManifest {
    std::string run_id;
    std::string created_at;
    std::string config_digest;
    std::uint64_t seed = 0;
    int reference_year = 0;
    crawler::CrawlPolicy policy;
    std::size_t input_firms = 0;
    std::size_t attempted = 0;
    std::size_t valid = 0;
    std::size_t invalid = 0;
    std::size_t robots_excluded = 0;

    double valid_share() const;
    bool counts_reconcile() const;
    std::string to_json() const;
    static RunManifest from_json(const std::string& json_text);
};

struct CrawlOutcome {
    RunManifest manifest;
    std::string corpus_dir;
    std::string log_path;
    std::string manifest_path;
};

// Fetches (or replays) every registry homepage into <out>/corpus, writing
// <out>/crawl_log.jsonl and <out>/crawl_manifest.json. In replay mode a firm
// missing from the source corpus becomes a timeout-marked record.
CrawlOutcome cmd_crawl(const config::Config& config, const std::string& registry_path,
                       const std::string& out_dir,
                       const std::optional<std::string>& replay_corpus = std::nullopt);

struct ExtractOutcome {
    std::string features_path;
    std::size_t extracted = 0;
    std::size_t skipped_invalid = 0;
    std::size_t extraction_errors = 0;
    int reference_year = 0;
};

// Computes the ten features for every firm with a valid crawl, in registry
// order. Website age comes from the snapshot cache/API; the reference year is
// taken from the config, else the crawl manifest, else the current year.
ExtractOutcome cmd_extract(const config::Config& config, const std::string& registry_path,
                           const std::string& corpus_dir, const std::string& out_dir);

struct IndexOutcome {
    std::string index_path;
    std::string scheme_name;
    std::size_t rows = 0;
};

// Normalizes population-wide and writes firm_id, the ten normalized values,
// one column per dimension, and the total.
IndexOutcome cmd_index(const config::Config& config, const std::string& features_path,
                       const std::string& out_dir,
                       const std::optional<std::string>& scheme_override = std::nullopt);

struct AggregateOutcome {
    std::string aggregates_path;
    std::string exclusions_path;
    spatial::AggregateReport report;
};

AggregateOutcome cmd_aggregate(const config::Config& config, const std::string& registry_path,
                               const std::string& features_path, const std::string& index_path,
                               spatial::Level level, const std::string& out_dir);

struct ClusterOutcome {
    std::string assignments_path;
    std::string elbow_path;
    std::string manifest_path;
    stats::ClusterModel model;
    int suggested_k = 0;
};

// MinMax-scales the aggregated features, runs k-means with the configured k,
// and writes region->cluster assignments plus the elbow curve.
ClusterOutcome cmd_cluster(const config::Config& config, const std::string& aggregates_path,
                           const std::string& out_dir, int k_override = 0);

struct RegressionOutput {
    std::string dependent;
    stats::FitResult fit;
    std::string coefficients_path;
    std::string table_path;
    std::string fit_stats_path;
    std::size_t excluded_rows = 0;
};

// The dependent names either a raw feature key, "total", or a dimension column
// of the index file. Binary dependents may use the logit model.
std::vector<RegressionOutput> cmd_regress(const config::Config& config,
                                          const std::string& registry_path,
                                          const std::string& features_path,
                                          const std::string& index_path,
                                          const std::string& out_dir);

struct ReportOutcome {
    std::string summary_path;
    std::string correlation_path;
};

ReportOutcome cmd_report(const config::Config& config, const std::string& features_path,
                         const std::string& out_dir);

}  // namespace codai::pipeline
