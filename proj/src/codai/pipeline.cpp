#include "codai/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "codai/csv.hpp"
#include "codai/errors.hpp"
#include "codai/extractor.hpp"
#include "codai/index.hpp"
#include "codai/report.hpp"
#include "codai/wayback.hpp"

namespace fs = std::filesystem;

namespace codai::pipeline {

namespace {

std::string read_whole_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_whole_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write file: " + path);
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
}

int current_utc_year() {
    std::time_t now = std::time(nullptr);
    std::tm utc{};
    gmtime_r(&now, &utc);
    return utc.tm_year + 1900;
}

std::string new_run_id() {
    std::time_t now = std::time(nullptr);
    std::tm utc{};
    gmtime_r(&now, &utc);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y%m%dT%H%M%S", &utc);
    return buf;
}

std::string headers_digest(const crawler::HeaderMap& headers) {
    std::string flat;
    for (const auto& [name, value] : headers) {
        flat += name;
        flat += ':';
        flat += value;
        flat += '\n';
    }
    return config::fnv1a_hex(flat);
}

nlohmann::json log_record(const crawler::CrawlResult& result) {
    nlohmann::json record;
    record["firm_id"] = result.firm_id;
    switch (result.outcome) {
        case crawler::Outcome::ok:
            record["outcome"] = "ok";
            record["http_status"] = result.http_status;
            break;
        case crawler::Outcome::timeout:
            record["outcome"] = "timeout";
            break;
        case crawler::Outcome::robots_excluded:
            record["outcome"] = "robots-excluded";
            break;
    }
    record["ttfb_seconds"] = result.ttfb_seconds;
    record["total_seconds"] = result.total_seconds;
    record["final_url"] = result.final_url;
    record["redirect_count"] = result.redirect_count;
    record["header_digest"] = headers_digest(result.response_headers);
    record["body_file"] = "corpus/" + result.firm_id + "/body.bin";
    if (!result.error.empty()) record["error"] = result.error;
    return record;
}

int year_of_timestamp(const std::string& iso) {
    if (iso.size() >= 4) {
        try {
            return std::stoi(iso.substr(0, 4));
        } catch (...) {
        }
    }
    return 0;
}

struct IndexFile {
    std::vector<std::string> dimension_names;
    std::vector<std::string> firm_ids;
    std::vector<index::FeatureVector> normalized;
    std::vector<std::vector<double>> dimensions;  // per firm, per group
    std::vector<double> totals;
    std::map<std::string, std::size_t> by_firm;
};

IndexFile read_index_file(const std::string& path, char delimiter) {
    csv::Table table = csv::read_file(path, delimiter);
    IndexFile file;

    const auto& keys = extractor::feature_keys();
    std::vector<std::string> expected = {"firm_id"};
    for (const auto& key : keys) expected.push_back("norm_" + key);
    for (const std::string& name : expected) {
        if (!table.has_column(name)) throw ConfigError("index file is missing column: " + name);
    }
    if (!table.has_column("total")) throw ConfigError("index file is missing column: total");

    // dimension columns sit between the normalized block and "total"
    const auto& header = table.header();
    std::size_t norm_end = 1 + keys.size();
    for (std::size_t i = norm_end; i + 1 < header.size(); ++i) {
        file.dimension_names.push_back(header[i]);
    }

    for (const csv::Row& row : table.rows()) {
        index::FeatureVector norm{};
        for (std::size_t i = 0; i < keys.size(); ++i) {
            norm[i] = std::stod(row.at("norm_" + keys[i]));
        }
        std::vector<double> dims;
        for (const std::string& dim : file.dimension_names) {
            dims.push_back(std::stod(row.at(dim)));
        }
        file.by_firm[row.at("firm_id")] = file.firm_ids.size();
        file.firm_ids.push_back(row.at("firm_id"));
        file.normalized.push_back(norm);
        file.dimensions.push_back(std::move(dims));
        file.totals.push_back(std::stod(row.at("total")));
    }
    return file;
}

}  // namespace

double RunManifest::valid_share() const {
    return attempted == 0 ? 0.0 : static_cast<double>(valid) / static_cast<double>(attempted);
}

bool RunManifest::counts_reconcile() const {
    return valid + invalid + robots_excluded == attempted;
}

std::string RunManifest::to_json() const {
    nlohmann::json doc;
    doc["run_id"] = run_id;
    doc["created_at"] = created_at;
    doc["config_digest"] = config_digest;
    doc["seed"] = seed;
    doc["reference_year"] = reference_year;
    doc["policy"] = {
        {"timeout_seconds", policy.timeout_seconds},
        {"per_host_min_interval_seconds", policy.per_host_min_interval_seconds},
        {"max_redirects", policy.max_redirects},
        {"user_agent", policy.user_agent},
        {"respect_robots", policy.respect_robots},
    };
    doc["counts"] = {
        {"input_firms", input_firms}, {"attempted", attempted},
        {"valid", valid},             {"invalid", invalid},
        {"robots_excluded", robots_excluded},
    };
    doc["valid_share"] = valid_share();
    return doc.dump(2) + "\n";
}

RunManifest RunManifest::from_json(const std::string& json_text) {
    nlohmann::json doc = nlohmann::json::parse(json_text);
    RunManifest m;
    m.run_id = doc.value("run_id", "");
    m.created_at = doc.value("created_at", "");
    m.config_digest = doc.value("config_digest", "");
    m.seed = doc.value("seed", 0ULL);
    m.reference_year = doc.value("reference_year", 0);
    if (doc.contains("policy")) {
        const auto& p = doc["policy"];
        m.policy.timeout_seconds = p.value("timeout_seconds", m.policy.timeout_seconds);
        m.policy.per_host_min_interval_seconds =
            p.value("per_host_min_interval_seconds", m.policy.per_host_min_interval_seconds);
        m.policy.max_redirects = p.value("max_redirects", m.policy.max_redirects);
        m.policy.user_agent = p.value("user_agent", m.policy.user_agent);
        m.policy.respect_robots = p.value("respect_robots", m.policy.respect_robots);
    }
    if (doc.contains("counts")) {
        const auto& c = doc["counts"];
        m.input_firms = c.value("input_firms", 0U);
        m.attempted = c.value("attempted", 0U);
        m.valid = c.value("valid", 0U);
        m.invalid = c.value("invalid", 0U);
        m.robots_excluded = c.value("robots_excluded", 0U);
    }
    return m;
}

CrawlOutcome cmd_crawl(const config::Config& config, const std::string& registry_path,
                       const std::string& out_dir,
                       const std::optional<std::string>& replay_corpus) {
    fs::create_directories(out_dir);
    if (!fs::is_directory(out_dir)) throw IoError("output directory not writable: " + out_dir);

    registry::LoadResult loaded = registry::load_firms(registry_path, config.columns,
                                                       config.delimiter);

    CrawlOutcome outcome;
    outcome.corpus_dir = (fs::path(out_dir) / "corpus").string();
    outcome.log_path = (fs::path(out_dir) / "crawl_log.jsonl").string();
    outcome.manifest_path = (fs::path(out_dir) / "crawl_manifest.json").string();

    std::vector<crawler::CrawlResult> results(loaded.firms.size());

    if (replay_corpus) {
        crawler::Corpus source(*replay_corpus);
        for (std::size_t i = 0; i < loaded.firms.size(); ++i) {
            const auto& firm = loaded.firms[i];
            if (source.contains(firm.firm_id)) {
                results[i] = crawler::replay_fetch(source, firm.firm_id);
            } else {
                crawler::CrawlResult missing;
                missing.firm_id = firm.firm_id;
                missing.requested_url = firm.homepage_url;
                missing.final_url = firm.homepage_url;
                missing.outcome = crawler::Outcome::timeout;
                missing.error = "replay: no corpus entry";
                results[i] = std::move(missing);
            }
        }
    } else {
        crawler::PolitenessGate gate;
        crawler::RobotsCache robots;
        std::atomic<std::size_t> next{0};
        int workers = std::max(1, config.crawl_workers);
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                while (true) {
                    std::size_t i = next.fetch_add(1);
                    if (i >= loaded.firms.size()) break;
                    const auto& firm = loaded.firms[i];
                    results[i] = crawler::fetch_homepage(firm.firm_id, firm.homepage_url,
                                                         config.policy, gate,
                                                         config.policy.respect_robots ? &robots
                                                                                      : nullptr);
                }
            });
        }
        for (auto& t : pool) t.join();
    }

    crawler::Corpus corpus(outcome.corpus_dir);
    std::string log;
    RunManifest manifest;
    manifest.run_id = new_run_id();
    manifest.created_at = crawler::current_utc_timestamp();
    manifest.config_digest = config.digest;
    manifest.seed = config.seed;
    manifest.policy = config.policy;
    manifest.input_firms = loaded.firms.size();

    int crawl_year = 0;
    for (const auto& result : results) {
        corpus.write_entry(result);
        log += log_record(result).dump() + "\n";
        ++manifest.attempted;
        if (crawler::is_valid(result)) {
            ++manifest.valid;
        } else if (result.outcome == crawler::Outcome::robots_excluded) {
            ++manifest.robots_excluded;
        } else {
            ++manifest.invalid;
        }
        crawl_year = std::max(crawl_year, year_of_timestamp(result.fetched_at));
    }
    manifest.reference_year = config.reference_year != 0 ? config.reference_year
                              : crawl_year != 0          ? crawl_year
                                                         : current_utc_year();

    write_whole_file(outcome.log_path, log);
    write_whole_file(outcome.manifest_path, manifest.to_json());
    outcome.manifest = manifest;
    return outcome;
}

ExtractOutcome cmd_extract(const config::Config& config, const std::string& registry_path,
                           const std::string& corpus_dir, const std::string& out_dir) {
    fs::create_directories(out_dir);
    registry::LoadResult loaded = registry::load_firms(registry_path, config.columns,
                                                       config.delimiter);
    crawler::Corpus corpus(corpus_dir);

    ExtractOutcome outcome;
    outcome.reference_year = config.reference_year;
    if (outcome.reference_year == 0) {
        fs::path manifest_path = fs::path(corpus_dir).parent_path() / "crawl_manifest.json";
        if (fs::exists(manifest_path)) {
            outcome.reference_year =
                RunManifest::from_json(read_whole_file(manifest_path.string())).reference_year;
        }
    }
    if (outcome.reference_year == 0) outcome.reference_year = current_utc_year();

    wayback::SnapshotClient::Options snapshot_options;
    snapshot_options.cache_path = config.wayback_cache_path;
    snapshot_options.api_origin = config.wayback_api_origin;
    snapshot_options.offline = config.wayback_offline;
    wayback::SnapshotClient snapshots(snapshot_options);

    extractor::ExtractOptions extract_options;
    extract_options.request_time_mode = config.request_time_mode;
    extract_options.suffix_rules = config::resolve_suffix_rules(config);

    outcome.features_path = (fs::path(out_dir) / "features.csv").string();
    csv::Writer writer(outcome.features_path, extractor::feature_file_header(), config.delimiter);
    std::string error_log;

    for (const auto& firm : loaded.firms) {
        if (!corpus.contains(firm.firm_id)) {
            ++outcome.skipped_invalid;
            continue;
        }
        crawler::CrawlResult result = corpus.read_entry(firm.firm_id);
        if (!crawler::is_valid(result)) {
            ++outcome.skipped_invalid;
            continue;
        }
        wayback::SnapshotLookup lookup = snapshots.first_snapshot_year(result.final_url);
        int age = wayback::years_old(lookup.first_year, outcome.reference_year,
                                     config.years_old_cap);
        try {
            extractor::RawFeatures features = extractor::extract_features(result, age,
                                                                          extract_options);
            writer.write_row(extractor::feature_file_row(features));
            ++outcome.extracted;
        } catch (const DataError& err) {
            ++outcome.extraction_errors;
            error_log += std::string(err.what()) + "\n";
        }
    }
    writer.close();
    snapshots.flush_cache();
    if (!error_log.empty()) {
        write_whole_file((fs::path(out_dir) / "extract_errors.txt").string(), error_log);
    }
    return outcome;
}

IndexOutcome cmd_index(const config::Config& config, const std::string& features_path,
                       const std::string& out_dir,
                       const std::optional<std::string>& scheme_override) {
    fs::create_directories(out_dir);
    std::vector<extractor::RawFeatures> rows =
        extractor::read_feature_file(features_path, config.delimiter);
    if (rows.empty()) throw DataError("feature file has no rows: " + features_path);

    index::DimensionScheme scheme = scheme_override
                                        ? config::resolve_scheme(config, *scheme_override)
                                        : config::resolve_scheme(config);

    index::NormalizationBounds bounds = index::fit_bounds(rows, config.invert_set);
    std::vector<index::FeatureVector> normalized = index::normalize_all(rows, bounds);

    IndexOutcome outcome;
    outcome.scheme_name = scheme.name;
    outcome.index_path = (fs::path(out_dir) / "index.csv").string();

    std::vector<std::string> header = {"firm_id"};
    for (const auto& key : extractor::feature_keys()) header.push_back("norm_" + key);
    for (const auto& group : scheme.groups) header.push_back(group.name);
    header.push_back("total");

    csv::Writer writer(outcome.index_path, header, config.delimiter);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        index::IndexScores scores = index::dimension_scores(rows[i].firm_id, normalized[i],
                                                            scheme);
        std::vector<std::string> cells = {scores.firm_id};
        for (double v : scores.normalized) cells.push_back(csv::format_double(v, 10));
        for (double v : scores.dimension_scored) cells.push_back(csv::format_double(v, 10));
        cells.push_back(csv::format_double(scores.total, 10));
        writer.write_row(cells);
        ++outcome.rows;
    }
    writer.close();
    return outcome;
}

AggregateOutcome cmd_aggregate(const config::Config& config, const std::string& registry_path,
                               const std::string& features_path, const std::string& index_path,
                               spatial::Level level, const std::string& out_dir) {
    fs::create_directories(out_dir);
    registry::LoadResult loaded = registry::load_firms(registry_path, config.columns,
                                                       config.delimiter);
    std::vector<extractor::RawFeatures> features =
        extractor::read_feature_file(features_path, config.delimiter);
    IndexFile index_file = read_index_file(index_path, config.delimiter);

    std::map<std::string, const registry::FirmRecord*> firms_by_id;
    for (const auto& firm : loaded.firms) firms_by_id[firm.firm_id] = &firm;

    std::vector<spatial::FirmRow> rows;
    for (const auto& f : features) {
        auto firm_it = firms_by_id.find(f.firm_id);
        auto index_it = index_file.by_firm.find(f.firm_id);
        if (firm_it == firms_by_id.end() || index_it == index_file.by_firm.end()) continue;
        spatial::FirmRow row;
        row.firm_id = f.firm_id;
        row.nuts3_code = firm_it->second->nuts3_code;
        row.municipality_code = firm_it->second->municipality_code;
        row.features = index_file.normalized[index_it->second];
        row.index_total = index_file.totals[index_it->second];
        rows.push_back(std::move(row));
    }

    int min_count = level == spatial::Level::nuts3
                        ? config.min_count_nuts3.value_or(spatial::default_min_count(level))
                        : config.min_count_municipality.value_or(
                              spatial::default_min_count(level));

    AggregateOutcome outcome;
    outcome.report = spatial::aggregate(rows, level, min_count);

    std::string suffix = spatial::level_name(level);
    outcome.aggregates_path = (fs::path(out_dir) / ("aggregates_" + suffix + ".csv")).string();
    std::vector<std::string> header = {"region", "level", "n_firms"};
    for (const auto& key : extractor::feature_keys()) header.push_back(key);
    header.push_back("mean_index");
    csv::Writer writer(outcome.aggregates_path, header, config.delimiter);
    for (const auto& region : outcome.report.regions) {
        std::vector<std::string> cells = {region.region_code, spatial::level_name(region.level),
                                          csv::format_int(static_cast<long long>(region.n_firms))};
        for (double v : region.values) cells.push_back(csv::format_double(v, 10));
        cells.push_back(csv::format_double(region.mean_index, 10));
        writer.write_row(cells);
    }
    writer.close();

    outcome.exclusions_path =
        (fs::path(out_dir) / ("aggregate_exclusions_" + suffix + ".csv")).string();
    csv::Writer exclusion_writer(outcome.exclusions_path, {"region", "n_firms", "reason"},
                                 config.delimiter);
    for (const auto& [code, count] : outcome.report.excluded_regions) {
        exclusion_writer.write_row({code, csv::format_int(static_cast<long long>(count)),
                                    "below min_count " + std::to_string(min_count)});
    }
    if (outcome.report.excluded_missing_code > 0) {
        exclusion_writer.write_row(
            {"", csv::format_int(static_cast<long long>(outcome.report.excluded_missing_code)),
             "missing region code"});
    }
    exclusion_writer.close();
    return outcome;
}

ClusterOutcome cmd_cluster(const config::Config& config, const std::string& aggregates_path,
                           const std::string& out_dir, int k_override) {
    fs::create_directories(out_dir);
    csv::Table table = csv::read_file(aggregates_path, config.delimiter);
    const auto& keys = extractor::feature_keys();
    for (const auto& key : keys) {
        if (!table.has_column(key)) {
            throw ConfigError("aggregates file is missing feature column: " + key);
        }
    }

    std::vector<std::string> regions;
    stats::Matrix points(table.size(), keys.size());
    for (std::size_t r = 0; r < table.rows().size(); ++r) {
        const csv::Row& row = table.rows()[r];
        regions.push_back(row.at("region"));
        for (std::size_t c = 0; c < keys.size(); ++c) {
            points.at(r, c) = std::stod(row.at(keys[c]));
        }
    }
    if (points.rows == 0) throw DataError("aggregates file has no rows: " + aggregates_path);

    stats::Matrix scaled = stats::minmax_scale(points);
    int k = k_override > 0 ? k_override : config.cluster_k;

    ClusterOutcome outcome;
    outcome.model = stats::kmeans_fit(scaled, k, config.seed);

    int k_max = std::min<int>(config.elbow_k_max, static_cast<int>(scaled.rows));
    int k_min = std::min(config.elbow_k_min, k_max);
    stats::ElbowResult elbow = stats::elbow(scaled, k_min, k_max, config.seed);
    outcome.suggested_k = elbow.suggested_k;

    outcome.assignments_path = (fs::path(out_dir) / "clusters.csv").string();
    csv::Writer writer(outcome.assignments_path, {"region", "cluster"}, config.delimiter);
    for (std::size_t i = 0; i < regions.size(); ++i) {
        writer.write_row({regions[i], csv::format_int(outcome.model.assignments[i])});
    }
    writer.close();

    outcome.elbow_path = (fs::path(out_dir) / "elbow.csv").string();
    csv::Writer elbow_writer(outcome.elbow_path, {"k", "inertia"}, config.delimiter);
    for (const auto& point : elbow.curve) {
        elbow_writer.write_row({csv::format_int(point.k), csv::format_double(point.inertia, 10)});
    }
    elbow_writer.close();

    nlohmann::json manifest;
    manifest["k"] = k;
    manifest["seed"] = config.seed;
    manifest["inertia"] = outcome.model.inertia;
    manifest["iterations_run"] = outcome.model.iterations_run;
    manifest["suggested_k"] = outcome.suggested_k;
    outcome.manifest_path = (fs::path(out_dir) / "cluster_manifest.json").string();
    write_whole_file(outcome.manifest_path, manifest.dump(2) + "\n");
    return outcome;
}

std::vector<RegressionOutput> cmd_regress(const config::Config& config,
                                          const std::string& registry_path,
                                          const std::string& features_path,
                                          const std::string& index_path,
                                          const std::string& out_dir) {
    fs::create_directories(out_dir);
    registry::LoadResult loaded = registry::load_firms(registry_path, config.columns,
                                                       config.delimiter);
    std::vector<extractor::RawFeatures> features =
        extractor::read_feature_file(features_path, config.delimiter);
    IndexFile index_file = read_index_file(index_path, config.delimiter);

    std::map<std::string, const extractor::RawFeatures*> features_by_id;
    for (const auto& f : features) features_by_id[f.firm_id] = &f;

    int reference_year = config.reference_year != 0 ? config.reference_year : current_utc_year();

    std::vector<stats::RegressionSpec> specs = config.regressions;
    if (specs.empty()) {
        stats::RegressionSpec spec;
        spec.dependent = "total";
        spec.model = stats::ModelKind::ols;
        specs.push_back(spec);
    }

    std::vector<RegressionOutput> outputs;
    for (const auto& spec : specs) {
        // resolve the dependent: feature key, "total", or a dimension column
        auto dependent_of = [&](const std::string& firm_id) -> std::optional<double> {
            auto feature_it = features_by_id.find(firm_id);
            if (feature_it == features_by_id.end()) return std::nullopt;
            bool is_feature = std::find(extractor::feature_keys().begin(),
                                        extractor::feature_keys().end(),
                                        spec.dependent) != extractor::feature_keys().end();
            if (is_feature) {
                auto v = feature_it->second->to_vector();
                return v[extractor::feature_index(spec.dependent)];
            }
            auto index_it = index_file.by_firm.find(firm_id);
            if (index_it == index_file.by_firm.end()) return std::nullopt;
            if (spec.dependent == "total") return index_file.totals[index_it->second];
            for (std::size_t d = 0; d < index_file.dimension_names.size(); ++d) {
                if (index_file.dimension_names[d] == spec.dependent) {
                    return index_file.dimensions[index_it->second][d];
                }
            }
            throw ConfigError("dependent \"" + spec.dependent +
                              "\" is neither a feature key, \"total\", nor a dimension column");
        };

        std::vector<stats::DesignInput> inputs;
        for (const auto& firm : loaded.firms) {
            auto y = dependent_of(firm.firm_id);
            if (!y) continue;
            inputs.push_back({firm, *y});
        }

        stats::Design design = stats::build_design(inputs, spec, reference_year);
        stats::FitResult fit = spec.model == stats::ModelKind::ols
                                   ? stats::ols_fit(design.x, design.y, design.column_names,
                                                    spec.intercept)
                                   : stats::logit_fit(design.x, design.y, design.column_names,
                                                      spec.intercept);

        RegressionOutput output;
        output.dependent = spec.dependent;
        output.fit = fit;
        output.excluded_rows = design.excluded_rows;

        std::string base = "regression_" + spec.dependent;
        output.coefficients_path = (fs::path(out_dir) / (base + "_coefficients.csv")).string();
        csv::Writer writer(output.coefficients_path, {"term", "coef", "se", "stat", "p"},
                           config.delimiter);
        for (const auto& row : report::fit_rows(fit)) writer.write_row(row);
        writer.close();

        output.table_path = (fs::path(out_dir) / (base + "_table.txt")).string();
        write_whole_file(output.table_path, report::render_fit_table(fit, spec.dependent));

        nlohmann::json fit_stats;
        fit_stats["dependent"] = spec.dependent;
        fit_stats["model"] = spec.model == stats::ModelKind::ols ? "ols" : "logit";
        fit_stats["n_observations"] = fit.n_observations;
        fit_stats["excluded_rows"] = design.excluded_rows;
        if (spec.model == stats::ModelKind::ols) {
            fit_stats["r_squared"] = fit.r_squared;
            fit_stats["adj_r_squared"] = fit.adj_r_squared;
        } else {
            fit_stats["mcfadden_pseudo_r2"] = fit.mcfadden_pseudo_r2;
            fit_stats["log_likelihood"] = fit.log_likelihood;
        }
        fit_stats["aic"] = fit.aic;
        fit_stats["bic"] = fit.bic;
        output.fit_stats_path = (fs::path(out_dir) / (base + "_fit.json")).string();
        write_whole_file(output.fit_stats_path, fit_stats.dump(2) + "\n");

        outputs.push_back(std::move(output));
    }
    return outputs;
}

ReportOutcome cmd_report(const config::Config& config, const std::string& features_path,
                         const std::string& out_dir) {
    fs::create_directories(out_dir);
    std::vector<extractor::RawFeatures> rows =
        extractor::read_feature_file(features_path, config.delimiter);

    ReportOutcome outcome;
    auto summaries = report::describe_features(rows);
    outcome.summary_path = (fs::path(out_dir) / "feature_summary.txt").string();
    write_whole_file(outcome.summary_path, report::render_feature_summary(summaries));

    csv::Writer summary_csv((fs::path(out_dir) / "feature_summary.csv").string(),
                            {"feature", "min", "max", "mean", "std"}, config.delimiter);
    for (const auto& s : summaries) {
        summary_csv.write_row({s.name, csv::format_double(s.min, 6), csv::format_double(s.max, 6),
                               csv::format_double(s.mean, 6), csv::format_double(s.std_dev, 6)});
    }
    summary_csv.close();

    stats::Matrix corr = report::correlation_matrix(rows);
    outcome.correlation_path = (fs::path(out_dir) / "correlation_matrix.txt").string();
    write_whole_file(outcome.correlation_path, report::render_correlation_matrix(corr));

    std::vector<std::string> header = {"feature"};
    for (const auto& name : extractor::display_names()) header.push_back(name);
    csv::Writer corr_csv((fs::path(out_dir) / "correlation_matrix.csv").string(), header,
                         config.delimiter);
    for (std::size_t a = 0; a < corr.rows; ++a) {
        std::vector<std::string> cells = {extractor::display_names()[a]};
        for (std::size_t b = 0; b < corr.cols; ++b) {
            cells.push_back(csv::format_double(corr.at(a, b), 6));
        }
        corr_csv.write_row(cells);
    }
    corr_csv.close();
    return outcome;
}

}  // namespace codai::pipeline
