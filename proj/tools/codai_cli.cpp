#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "codai/config.hpp"
#include "codai/errors.hpp"
#include "codai/kernels/kernels.hpp"
#include "codai/pipeline.hpp"

namespace {

using codai::config::Config;

struct GlobalArgs {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_dir = "out";
    std::optional<std::string> scheme;
    std::string level = "nuts3";
    std::optional<std::string> replay;
};

Config make_config(const GlobalArgs& args) {
    Config config = args.config_path.empty() ? Config{} : codai::config::load_config(
                                                              args.config_path);
    if (args.seed) config.seed = *args.seed;
    return config;
}

codai::spatial::Level parse_level(const std::string& level) {
    if (level == "nuts3") return codai::spatial::Level::nuts3;
    if (level == "municipality") return codai::spatial::Level::municipality;
    throw codai::ConfigError("--level must be nuts3 or municipality, got: " + level);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"corporate website digital-divide toolkit"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    GlobalArgs args;
    app.add_option("--config", args.config_path, "configuration file (JSON)");
    auto* seed_opt = app.add_option("--seed", "seed recorded in the run manifest");
    app.add_option("--out", args.out_dir, "output directory")->capture_default_str();
    auto* scheme_opt = app.add_option("--scheme", "index scheme: codai, wai2001, sum10, or a file");
    app.add_option("--level", args.level, "territorial level: nuts3 or municipality")
        ->capture_default_str();
    auto* replay_opt = app.add_option("--replay", "replay corpus directory instead of fetching");

    std::string registry_path, corpus_dir, features_path, index_path, aggregates_path;
    std::string dependent, model = "ols";
    int cluster_k = 0;

    auto* crawl = app.add_subcommand("crawl", "fetch or replay every homepage");
    crawl->add_option("--registry", registry_path, "firm registry file")->required();

    auto* extract = app.add_subcommand("extract", "compute the ten features from a crawl");
    extract->add_option("--registry", registry_path, "firm registry file")->required();
    extract->add_option("--corpus", corpus_dir, "crawl corpus directory")->required();

    auto* index_cmd = app.add_subcommand("index", "normalize and score a feature file");
    index_cmd->add_option("--features", features_path, "feature file")->required();

    auto* aggregate = app.add_subcommand("aggregate", "aggregate firms to territories");
    aggregate->add_option("--registry", registry_path, "firm registry file")->required();
    aggregate->add_option("--features", features_path, "feature file")->required();
    aggregate->add_option("--index", index_path, "index file")->required();

    auto* cluster = app.add_subcommand("cluster", "k-means over territory aggregates");
    cluster->add_option("--aggregates", aggregates_path, "aggregates file")->required();
    cluster->add_option("--k", cluster_k, "number of clusters (default from config)");

    auto* regress = app.add_subcommand("regress", "fit the configured regressions");
    regress->add_option("--registry", registry_path, "firm registry file")->required();
    regress->add_option("--features", features_path, "feature file")->required();
    regress->add_option("--index", index_path, "index file")->required();
    regress->add_option("--dependent", dependent, "override: single dependent variable");
    regress->add_option("--model", model, "override model: ols or logit")->capture_default_str();

    auto* report = app.add_subcommand("report", "descriptive statistics and correlations");
    report->add_option("--features", features_path, "feature file")->required();

    CLI11_PARSE(app, argc, argv);

    if (!seed_opt->empty()) args.seed = seed_opt->as<std::uint64_t>();
    if (!scheme_opt->empty()) args.scheme = scheme_opt->as<std::string>();
    if (!replay_opt->empty()) args.replay = replay_opt->as<std::string>();

    try {
        Config config = make_config(args);

        if (crawl->parsed()) {
            auto outcome = codai::pipeline::cmd_crawl(config, registry_path, args.out_dir,
                                                      args.replay);
            std::cout << "crawl: " << outcome.manifest.attempted << " attempted, "
                      << outcome.manifest.valid << " valid, " << outcome.manifest.invalid
                      << " invalid, " << outcome.manifest.robots_excluded
                      << " robots-excluded (valid share "
                      << outcome.manifest.valid_share() << ")\n"
                      << "  corpus:   " << outcome.corpus_dir << "\n"
                      << "  log:      " << outcome.log_path << "\n"
                      << "  manifest: " << outcome.manifest_path << "\n";
        } else if (extract->parsed()) {
            auto outcome = codai::pipeline::cmd_extract(config, registry_path, corpus_dir,
                                                        args.out_dir);
            std::cout << "extract: " << outcome.extracted << " firms, "
                      << outcome.skipped_invalid << " skipped (invalid crawl), "
                      << outcome.extraction_errors << " errors; reference year "
                      << outcome.reference_year << "\n"
                      << "  features: " << outcome.features_path << "\n";
        } else if (index_cmd->parsed()) {
            auto outcome = codai::pipeline::cmd_index(config, features_path, args.out_dir,
                                                      args.scheme);
            std::cout << "index: " << outcome.rows << " firms scored under scheme "
                      << outcome.scheme_name << "\n"
                      << "  index: " << outcome.index_path << "\n";
        } else if (aggregate->parsed()) {
            auto level = parse_level(args.level);
            auto outcome = codai::pipeline::cmd_aggregate(config, registry_path, features_path,
                                                          index_path, level, args.out_dir);
            std::cout << "aggregate: " << outcome.report.regions.size() << " regions kept, "
                      << outcome.report.excluded_regions.size() << " below threshold, "
                      << outcome.report.excluded_missing_code << " rows without a code\n"
                      << "  aggregates: " << outcome.aggregates_path << "\n"
                      << "  exclusions: " << outcome.exclusions_path << "\n";
        } else if (cluster->parsed()) {
            auto outcome = codai::pipeline::cmd_cluster(config, aggregates_path, args.out_dir,
                                                        cluster_k);
            std::cout << "cluster: k=" << outcome.model.k << ", inertia "
                      << outcome.model.inertia << ", suggested k " << outcome.suggested_k
                      << " (kernel backend "
                      << codai::kernels::backend_name(codai::kernels::active_backend()) << ")\n"
                      << "  assignments: " << outcome.assignments_path << "\n"
                      << "  elbow:       " << outcome.elbow_path << "\n";
        } else if (regress->parsed()) {
            if (!dependent.empty()) {
                codai::stats::RegressionSpec spec;
                spec.dependent = dependent;
                spec.model = model == "logit" ? codai::stats::ModelKind::logit
                                              : codai::stats::ModelKind::ols;
                config.regressions = {spec};
            }
            auto outputs = codai::pipeline::cmd_regress(config, registry_path, features_path,
                                                        index_path, args.out_dir);
            for (const auto& output : outputs) {
                std::cout << "regress " << output.dependent << ": n="
                          << output.fit.n_observations << ", excluded "
                          << output.excluded_rows << "\n"
                          << "  table: " << output.table_path << "\n";
            }
        } else if (report->parsed()) {
            auto outcome = codai::pipeline::cmd_report(config, features_path, args.out_dir);
            std::cout << "report:\n  summary:     " << outcome.summary_path << "\n"
                      << "  correlation: " << outcome.correlation_path << "\n";
        }
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
    return 0;
}
