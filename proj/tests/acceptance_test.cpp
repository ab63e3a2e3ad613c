// Acceptance suite. Each criterion prints one PASS/FAIL line; the process
// exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "codai/config.hpp"
#include "codai/csv.hpp"
#include "codai/errors.hpp"
#include "codai/extractor.hpp"
#include "codai/index.hpp"
#include "codai/kernels/kernels.hpp"
#include "codai/pipeline.hpp"
#include "codai/report.hpp"
#include "codai/spatial.hpp"
#include "codai/stats.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using codai::extractor::RawFeatures;
using codai::extractor::kFeatureCount;

namespace {

const std::string kFixtures = TEST_FIXTURES_DIR;

int g_failures = 0;

struct Criterion {
    const char* id;
    const char* name;
    std::chrono::steady_clock::time_point start;
    std::vector<std::string> problems;

    Criterion(const char* id_, const char* name_)
        : id(id_), name(name_), start(std::chrono::steady_clock::now()) {}

    void require(bool ok, const std::string& what) {
        if (!ok && problems.size() < 5) problems.push_back(what);
        if (!ok && problems.size() >= 5) problems.back() = "... more failures suppressed";
    }

    double elapsed() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }

    void finish(double budget_seconds = 0.0) {
        double seconds = elapsed();
        if (budget_seconds > 0.0 && seconds > budget_seconds) {
            problems.push_back("runtime " + std::to_string(seconds) + "s exceeds budget " +
                               std::to_string(budget_seconds) + "s");
        }
        if (problems.empty()) {
            std::printf("[PASS] %s %s (%.2fs)\n", id, name, seconds);
        } else {
            ++g_failures;
            std::printf("[FAIL] %s %s (%.2fs)\n", id, name, seconds);
            for (const auto& problem : problems) std::printf("       - %s\n", problem.c_str());
        }
        std::fflush(stdout);
    }
};

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

RawFeatures random_raw(std::mt19937_64& rng) {
    RawFeatures raw;
    raw.unique_links_in = static_cast<long long>(rng() % 5000);
    raw.unique_links_out = static_cast<long long>(rng() % 2000);
    raw.best_practices = uniform(rng, 0.0, 1.0);
    raw.length_url = 4 + static_cast<long long>(rng() % 101);
    raw.facebook = static_cast<int>(rng() % 2);
    raw.instagram = static_cast<int>(rng() % 2);
    raw.linkedin = static_cast<int>(rng() % 2);
    raw.years_old = static_cast<int>(rng() % 26);
    raw.request_time = uniform(rng, 0.127, 502.0);
    raw.security_header_int = static_cast<int>(rng() % 16);
    return raw;
}

double bump_feature(RawFeatures& raw, std::size_t feature, std::mt19937_64& rng) {
    double amount = uniform(rng, 0.05, 1.0);
    switch (feature) {
        case codai::extractor::kUniqueLinksIn: raw.unique_links_in += 1 + rng() % 50; break;
        case codai::extractor::kUniqueLinksOut: raw.unique_links_out += 1 + rng() % 50; break;
        case codai::extractor::kBestPractices: raw.best_practices += amount; break;
        case codai::extractor::kLengthUrl: raw.length_url += 1 + rng() % 20; break;
        case codai::extractor::kFacebook: raw.facebook = 1; break;
        case codai::extractor::kInstagram: raw.instagram = 1; break;
        case codai::extractor::kLinkedin: raw.linkedin = 1; break;
        case codai::extractor::kYearsOld: raw.years_old += 1 + rng() % 5; break;
        case codai::extractor::kRequestTime: raw.request_time += amount * 100.0; break;
        case codai::extractor::kSecurityHeader: raw.security_header_int += 1 + rng() % 3; break;
    }
    return amount;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return "<unreadable:" + path + ">";
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// ---------------------------------------------------------------------------

void criterion_1_index_bounds() {
    Criterion c("C1", "index bounds and monotonicity");
    std::mt19937_64 rng(1001);

    std::vector<RawFeatures> population;
    for (int i = 0; i < 1000; ++i) population.push_back(random_raw(rng));
    auto bounds = codai::index::fit_bounds(population);
    auto normalized = codai::index::normalize_all(population, bounds);

    auto codai_scheme = codai::index::codai_scheme();
    auto wai_scheme = codai::index::wai2001_scheme();
    for (std::size_t i = 0; i < population.size(); ++i) {
        double codai_total = codai::index::dimension_scores("f", normalized[i],
                                                            codai_scheme).total;
        double wai_total = codai::index::dimension_scores("f", normalized[i], wai_scheme).total;
        c.require(codai_total >= 0.0 && codai_total <= 5.0,
                  "codai total out of [0,5]: " + std::to_string(codai_total));
        c.require(wai_total >= 0.0 && wai_total <= 4.0,
                  "wai2001 total out of [0,4]: " + std::to_string(wai_total));
    }

    std::vector<std::size_t> non_inverted;
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
        if (!bounds.invert[f]) non_inverted.push_back(f);
    }
    int violations = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        const RawFeatures& base = population[rng() % population.size()];
        double before = codai::index::dimension_scores(
                            "f", codai::index::normalize(base, bounds), codai_scheme).total;
        RawFeatures bumped = base;
        bump_feature(bumped, non_inverted[rng() % non_inverted.size()], rng);
        double after = codai::index::dimension_scores(
                           "f", codai::index::normalize(bumped, bounds), codai_scheme).total;
        if (after < before - 1e-12) ++violations;
    }
    c.require(violations == 0,
              std::to_string(violations) + " monotonicity violations in 10000 trials");
    c.finish(5.0);
}

void criterion_2_equation_parity() {
    Criterion c("C2", "index equation parity");
    std::mt19937_64 rng(1002);
    auto scheme = codai::index::codai_scheme();

    for (int trial = 0; trial < 100; ++trial) {
        codai::index::FeatureVector v{};
        for (double& x : v) x = uniform(rng, 0.0, 1.0);

        using codai::extractor::FeatureIndex;
        double stakeholder = v[codai::extractor::kUniqueLinksOut] +
                             v[codai::extractor::kFacebook] +
                             v[codai::extractor::kInstagram] + v[codai::extractor::kLinkedin];
        double technical = v[codai::extractor::kBestPractices] +
                           v[codai::extractor::kSecurityHeader] +
                           v[codai::extractor::kRequestTime];
        double internal = v[codai::extractor::kLengthUrl] +
                          v[codai::extractor::kUniqueLinksIn];
        double culture = v[codai::extractor::kYearsOld];
        double expected = stakeholder / 2.0 + technical / 3.0 + internal / 2.0 + culture;

        auto scores = codai::index::dimension_scores("f", v, scheme);
        c.require(std::fabs(scores.total - expected) <= 1e-12,
                  "total differs from direct substitution by " +
                      std::to_string(std::fabs(scores.total - expected)));
        c.require(std::fabs(scores.dimension_raw[0] - stakeholder) <= 1e-12,
                  "stakeholder sum mismatch");
        c.require(std::fabs(scores.dimension_scored[1] - technical / 3.0) <= 1e-12,
                  "technical score mismatch");
    }
    c.finish();
}

void criterion_3_ols_oracle() {
    Criterion c("C3", "OLS oracle equivalence");
    std::mt19937_64 rng(1003);

    auto close_rel = [](double a, double b, double tol) {
        return std::fabs(a - b) <= tol * std::max({1.0, std::fabs(a), std::fabs(b)});
    };

    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 20 + rng() % 181;
        std::size_t p = 2 + rng() % 7;
        codai::stats::Matrix x(n, p);
        std::vector<double> y(n);
        std::vector<std::string> names;
        for (std::size_t j = 0; j < p; ++j) names.push_back("c" + std::to_string(j));
        for (std::size_t i = 0; i < n; ++i) {
            x.at(i, 0) = 1.0;
            for (std::size_t j = 1; j < p; ++j) x.at(i, j) = uniform(rng, -4.0, 4.0);
            y[i] = uniform(rng, -1.0, 1.0);
            for (std::size_t j = 1; j < p; ++j) y[i] += 0.3 * j * x.at(i, j);
        }

        auto fit = codai::stats::ols_fit(x, y, names);
        auto oracle = oracles::ols_normal_equations(x.data, n, p, y, true);

        for (std::size_t j = 0; j < p; ++j) {
            c.require(close_rel(fit.coefficients[j], oracle.coefficients[j], 1e-8),
                      "coefficient mismatch at trial " + std::to_string(trial));
            c.require(close_rel(fit.standard_errors[j], oracle.standard_errors[j], 1e-8),
                      "standard error mismatch at trial " + std::to_string(trial));
        }
        c.require(close_rel(fit.r_squared, oracle.r_squared, 1e-8), "R^2 mismatch");
        c.require(close_rel(fit.adj_r_squared, oracle.adj_r_squared, 1e-8), "adj R^2 mismatch");
        c.require(close_rel(fit.aic, oracle.aic, 1e-8), "AIC mismatch");
        c.require(close_rel(fit.bic, oracle.bic, 1e-8), "BIC mismatch");

        double max_dot = 0.0;
        for (std::size_t j = 0; j < p; ++j) {
            long double dot = 0.0L;
            for (std::size_t i = 0; i < n; ++i) dot += x.at(i, j) * fit.residuals[i];
            max_dot = std::max(max_dot, std::fabs(static_cast<double>(dot)));
        }
        c.require(max_dot < 1e-8, "residual orthogonality: max |X'e| = " +
                                      std::to_string(max_dot));
    }
    c.finish(10.0);
}

void criterion_4_logit_oracle() {
    Criterion c("C4", "logit oracle equivalence");
    std::mt19937_64 rng(1004);

    auto close_tol = [](double a, double b, double tol) {
        return std::fabs(a - b) <= tol * std::max({1.0, std::fabs(a), std::fabs(b)});
    };

    int done = 0;
    while (done < 100) {
        std::size_t n = 150 + rng() % 151;
        std::size_t p = 2 + rng() % 3;
        codai::stats::Matrix x(n, p);
        std::vector<double> y(n);
        for (std::size_t i = 0; i < n; ++i) {
            x.at(i, 0) = 1.0;
            for (std::size_t j = 1; j < p; ++j) x.at(i, j) = uniform(rng, -2.0, 2.0);
            double eta = 0.2;
            for (std::size_t j = 1; j < p; ++j) eta += (j % 2 ? 0.7 : -0.6) * x.at(i, j);
            y[i] = uniform(rng, 0.0, 1.0) < 1.0 / (1.0 + std::exp(-eta)) ? 1.0 : 0.0;
        }
        std::vector<std::string> names;
        for (std::size_t j = 0; j < p; ++j) names.push_back("c" + std::to_string(j));

        codai::stats::FitResult fit;
        try {
            fit = codai::stats::logit_fit(x, y, names);
        } catch (const codai::FitError&) {
            continue;  // separable draw: resample
        }
        ++done;

        auto oracle_beta = oracles::logit_damped_newton(x.data, n, p, y);
        for (std::size_t j = 0; j < p; ++j) {
            c.require(close_tol(fit.coefficients[j], oracle_beta[j], 1e-6),
                      "coefficient differs from oracle by " +
                          std::to_string(std::fabs(fit.coefficients[j] - oracle_beta[j])));
        }

        auto grad = codai::stats::logit_gradient(x, y, fit.coefficients);
        const double h = 1e-5;
        for (std::size_t j = 0; j < p; ++j) {
            auto plus = fit.coefficients;
            auto minus = fit.coefficients;
            plus[j] += h;
            minus[j] -= h;
            double fd = (codai::stats::logit_log_likelihood(x, y, plus) -
                         codai::stats::logit_log_likelihood(x, y, minus)) /
                        (2.0 * h);
            // gradient is ~0 at the optimum; compare on a unit scale
            c.require(std::fabs(grad[j] - fd) <= 1e-5 * std::max(1.0, std::fabs(fd)),
                      "analytic vs finite-difference gradient gap " +
                          std::to_string(std::fabs(grad[j] - fd)));
        }

        c.require(fit.mcfadden_pseudo_r2 >= 0.0 && fit.mcfadden_pseudo_r2 <= 1.0,
                  "pseudo R^2 out of [0,1]: " + std::to_string(fit.mcfadden_pseudo_r2));
    }
    c.finish();
}

void criterion_5_kmeans() {
    Criterion c("C5", "k-means correctness");
    std::mt19937_64 rng(1005);

    // uniform spread 1.0 has sigma ~0.577; centers 100 apart >> 10 sigma
    const double centers[3][2] = {{0.0, 0.0}, {100.0, 0.0}, {0.0, 100.0}};
    const int per_blob = 40;
    codai::stats::Matrix points(3 * per_blob, 2);
    std::vector<int> labels;
    for (int blob = 0; blob < 3; ++blob) {
        for (int i = 0; i < per_blob; ++i) {
            int r = blob * per_blob + i;
            points.at(r, 0) = centers[blob][0] + uniform(rng, -1.0, 1.0);
            points.at(r, 1) = centers[blob][1] + uniform(rng, -1.0, 1.0);
            labels.push_back(blob);
        }
    }

    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        auto model = codai::stats::kmeans_fit(points, 3, seed, 200, 1e-14);
        bool exact = true;
        for (std::size_t a = 0; a < labels.size() && exact; ++a) {
            for (std::size_t b = a + 1; b < labels.size(); ++b) {
                bool same_blob = labels[a] == labels[b];
                bool same_cluster = model.assignments[a] == model.assignments[b];
                if (same_blob != same_cluster) {
                    exact = false;
                    break;
                }
            }
        }
        c.require(exact, "seed " + std::to_string(seed) + " failed exact blob recovery");

        // centroids equal their cluster means
        std::vector<std::vector<long double>> sums(3, std::vector<long double>(2, 0.0L));
        std::vector<int> counts(3, 0);
        for (std::size_t r = 0; r < points.rows; ++r) {
            sums[model.assignments[r]][0] += points.at(r, 0);
            sums[model.assignments[r]][1] += points.at(r, 1);
            ++counts[model.assignments[r]];
        }
        for (int k = 0; k < 3; ++k) {
            for (int d = 0; d < 2; ++d) {
                double mean = static_cast<double>(sums[k][d] / counts[k]);
                c.require(std::fabs(model.centroids[k][d] - mean) < 1e-10,
                          "centroid differs from cluster mean by " +
                              std::to_string(std::fabs(model.centroids[k][d] - mean)));
            }
        }
    }

    auto elbow = codai::stats::elbow(points, 1, 6, 7);
    for (std::size_t i = 1; i < elbow.curve.size(); ++i) {
        c.require(elbow.curve[i].inertia <= elbow.curve[i - 1].inertia + 1e-9,
                  "inertia increased from k=" + std::to_string(elbow.curve[i - 1].k));
    }
    c.require(elbow.suggested_k == 3,
              "elbow suggested k=" + std::to_string(elbow.suggested_k) + ", expected 3");
    c.finish();
}

void criterion_6_golden_corpus() {
    Criterion c("C6", "feature-extraction golden corpus");
    codai::config::Config config;
    config.reference_year = 2021;
    config.wayback_cache_path = kFixtures + "/wayback_cache.tsv";
    config.wayback_offline = true;

    auto out1 = fs::temp_directory_path() / "codai_acc_c6_run1";
    auto out2 = fs::temp_directory_path() / "codai_acc_c6_run2";
    fs::remove_all(out1);
    fs::remove_all(out2);

    auto first = codai::pipeline::cmd_extract(config, kFixtures + "/registry.csv",
                                              kFixtures + "/corpus", out1.string());
    auto second = codai::pipeline::cmd_extract(config, kFixtures + "/registry.csv",
                                               kFixtures + "/corpus", out2.string());

    std::string golden = slurp(kFixtures + "/golden_features.csv");
    std::string produced = slurp(first.features_path);
    c.require(first.extracted == 20, "expected 20 extracted firms");
    c.require(produced == golden, "features differ from the frozen golden file");
    c.require(slurp(second.features_path) == produced, "repeated runs are not byte-identical");

    // the corpus must cover the scale endpoints
    auto rows = codai::extractor::read_feature_file(first.features_path);
    bool sec0 = false, sec15 = false, bp1 = false;
    for (const auto& row : rows) {
        if (row.security_header_int == 0) sec0 = true;
        if (row.security_header_int == 15) sec15 = true;
        if (row.best_practices == 1.0) bp1 = true;
    }
    c.require(sec0, "no fixture with security penalty 0");
    c.require(sec15, "no fixture with security penalty 15");
    c.require(bp1, "no fixture with best-practices 1.0");

    fs::remove_all(out1);
    fs::remove_all(out2);
    c.finish();
}

void criterion_7_aggregation() {
    Criterion c("C7", "aggregation rules");

    std::vector<codai::spatial::FirmRow> rows;
    auto add_firm = [&](const std::string& id, const std::string& municipality, int facebook,
                        int instagram) {
        codai::spatial::FirmRow row;
        row.firm_id = id;
        row.nuts3_code = "R1";
        row.municipality_code = municipality;
        row.features.fill(0.25);
        row.features[codai::extractor::kFacebook] = facebook;
        row.features[codai::extractor::kInstagram] = instagram;
        row.index_total = 1.0;
        rows.push_back(row);
    };
    for (int i = 0; i < 9; ++i) add_firm("small" + std::to_string(i), "M_SMALL", i % 2, 0);
    for (int i = 0; i < 10; ++i) add_firm("big" + std::to_string(i), "M_BIG", i < 7 ? 1 : 0,
                                          i < 4 ? 1 : 0);

    auto report = codai::spatial::aggregate(rows, codai::spatial::Level::municipality, 10);
    c.require(report.regions.size() == 1, "expected exactly one kept municipality");
    if (report.regions.size() == 1) {
        const auto& region = report.regions[0];
        c.require(region.region_code == "M_BIG", "kept the wrong municipality");
        c.require(region.n_firms == 10, "kept municipality should count 10 firms");
        double fb_share = region.values[codai::extractor::kFacebook];
        double ig_share = region.values[codai::extractor::kInstagram];
        c.require(fb_share == 7.0 / 10.0, "facebook share differs from hand-computed 7/10");
        c.require(ig_share == 4.0 / 10.0, "instagram share differs from hand-computed 4/10");
    }
    bool excluded_small = false;
    for (const auto& [code, count] : report.excluded_regions) {
        if (code == "M_SMALL" && count == 9) excluded_small = true;
    }
    c.require(excluded_small, "9-firm municipality was not excluded");
    c.require(report.included_firms() + report.excluded_firms() == rows.size(),
              "counts do not reconcile");
    c.finish();
}

// Synthetic 600-firm registry with planted North/South gaps, run fully offline
// through the file pipeline.
void criterion_8_end_to_end() {
    Criterion c("C8", "end-to-end divide recovery");
    std::mt19937_64 rng(1008);

    auto root = fs::temp_directory_path() / "codai_acc_c8";
    fs::remove_all(root);
    fs::create_directories(root);
    auto corpus_dir = root / "source_corpus";
    codai::crawler::Corpus corpus(corpus_dir.string());

    std::ostringstream registry;
    registry << "firm_id,url,nace,employees,founding_year,nuts3,municipality,macro_region,"
                "urban_pole\n";
    std::ostringstream cache;

    const int municipalities_per_region = 20;
    const int firms_per_municipality = 15;
    int serial = 0;
    for (int side = 0; side < 2; ++side) {
        bool north = side == 0;
        for (int m = 0; m < municipalities_per_region; ++m) {
            std::string municipality = (north ? "N" : "S") + std::to_string(m);
            std::string nuts3 = (north ? "ITN" : "ITS") + std::to_string(m / 4);
            for (int f = 0; f < firms_per_municipality; ++f) {
                ++serial;
                std::string id = "firm" + std::to_string(serial);
                std::string host = id + (north ? ".nord.it" : ".sud.it");
                std::string url = (north ? "https://" : "http://") + host + "/";

                registry << id << "," << url << "," << (serial % 2 ? "C" : "G") << ","
                         << (3 + serial % 120) << "," << (1985 + serial % 30) << "," << nuts3
                         << "," << municipality << "," << (north ? "North" : "South") << ","
                         << (m % 3 == 0 ? 1 : 0) << "\n";
                cache << host << '\t' << (north ? 1998 + serial % 6 : 2014 + serial % 6) << '\n';

                codai::crawler::CrawlResult result;
                result.firm_id = id;
                result.requested_url = url;
                result.final_url = url;
                result.outcome = codai::crawler::Outcome::ok;
                result.http_status = 200;
                result.scheme = north ? "https" : "http";
                result.fetched_at = "2021-02-01T09:00:00Z";
                result.redirect_count = 0;
                result.ttfb_seconds = north ? uniform(rng, 0.02, 0.05) : uniform(rng, 0.4, 0.9);
                result.total_seconds = result.ttfb_seconds +
                                       (north ? uniform(rng, 0.05, 0.2) : uniform(rng, 1.5, 4.0));
                result.response_headers.emplace("Content-Type", "text/html");
                if (north) {
                    result.response_headers.emplace("Strict-Transport-Security", "max-age=1");
                    result.response_headers.emplace("Content-Security-Policy", "default-src");
                    result.response_headers.emplace("X-Frame-Options", "DENY");
                    result.response_headers.emplace("X-Content-Type-Options", "nosniff");
                    if (serial % 3 == 0) {
                        result.response_headers.emplace("Referrer-Policy", "no-referrer");
                    }
                }

                std::ostringstream body;
                if (north) {
                    body << "<!DOCTYPE html><html lang=\"it\"><head><meta charset=\"utf-8\">"
                         << "<meta name=\"viewport\" content=\"width=device-width\">"
                         << "<title>" << id << "</title></head><body>";
                    int internal = 8 + static_cast<int>(rng() % 8);
                    for (int l = 0; l < internal; ++l) {
                        body << "<a href=\"/p" << l << "\">p</a>";
                    }
                    int external = 3 + static_cast<int>(rng() % 4);
                    for (int l = 0; l < external; ++l) {
                        body << "<a href=\"https://partner" << l << ".com/x\">e</a>";
                    }
                    body << "<a href=\"https://www.facebook.com/" << id << "\">f</a>";
                    if (serial % 2 == 0) {
                        body << "<a href=\"https://www.instagram.com/" << id << "\">i</a>";
                    }
                    if (serial % 3 != 1) {
                        body << "<a href=\"https://www.linkedin.com/company/" << id
                             << "\">l</a>";
                    }
                    body << "</body></html>";
                } else {
                    body << "<html><head><title>" << id << "</title></head><body><center>"
                         << id << "</center>";
                    int internal = static_cast<int>(rng() % 3);
                    for (int l = 0; l < internal; ++l) {
                        body << "<a href=\"/p" << l << "\">p</a>";
                    }
                    if (serial % 7 == 0) {
                        body << "<a href=\"https://www.facebook.com/" << id << "\">f</a>";
                    }
                    body << "<img src=\"/vetrina.jpg\"></body></html>";
                }
                result.body = body.str();
                corpus.write_entry(result);
            }
        }
    }

    auto registry_path = root / "registry.csv";
    {
        std::ofstream out(registry_path);
        out << registry.str();
    }
    auto cache_path = root / "wayback_cache.tsv";
    {
        std::ofstream out(cache_path);
        out << cache.str();
    }

    codai::config::Config config;
    config.reference_year = 2021;
    config.wayback_cache_path = cache_path.string();
    config.wayback_offline = true;
    config.seed = 42;

    auto crawl = codai::pipeline::cmd_crawl(config, registry_path.string(),
                                            (root / "run").string(), corpus_dir.string());
    c.require(crawl.manifest.valid == 600, "expected 600 valid replayed crawls");
    c.require(crawl.manifest.counts_reconcile(), "crawl counts do not reconcile");

    auto extract = codai::pipeline::cmd_extract(config, registry_path.string(),
                                                crawl.corpus_dir, (root / "run").string());
    c.require(extract.extracted == 600, "expected 600 extracted feature rows");

    auto index = codai::pipeline::cmd_index(config, extract.features_path,
                                            (root / "run").string(), "codai");

    auto aggregate = codai::pipeline::cmd_aggregate(
        config, registry_path.string(), extract.features_path, index.index_path,
        codai::spatial::Level::municipality, (root / "run").string());
    c.require(aggregate.report.regions.size() == 40, "expected all 40 municipalities kept");

    auto cluster = codai::pipeline::cmd_cluster(config, aggregate.aggregates_path,
                                                (root / "run").string(), 3);

    // (a) cluster purity against the planted region groups
    auto assignments = codai::csv::read_file(cluster.assignments_path);
    std::map<int, std::map<char, int>> by_cluster;
    for (const auto& row : assignments.rows()) {
        by_cluster[std::stoi(row.at("cluster"))][row.at("region")[0]]++;
    }
    int majority_total = 0;
    int total = 0;
    for (const auto& [label, counts] : by_cluster) {
        int best = 0;
        for (const auto& [region, count] : counts) {
            best = std::max(best, count);
            total += count;
        }
        majority_total += best;
    }
    double purity = total > 0 ? static_cast<double>(majority_total) / total : 0.0;
    c.require(purity >= 0.95, "cluster purity " + std::to_string(purity) + " below 0.95");

    // (b) OLS of the index total on the North dummy
    auto registry_loaded = codai::registry::load_firms(registry_path.string());
    std::map<std::string, bool> is_north;
    for (const auto& firm : registry_loaded.firms) {
        is_north[firm.firm_id] = firm.macro_region == codai::registry::MacroRegion::North;
    }
    auto index_table = codai::csv::read_file(index.index_path);
    codai::stats::Matrix x(index_table.size(), 2);
    std::vector<double> y;
    std::size_t r = 0;
    for (const auto& row : index_table.rows()) {
        x.at(r, 0) = 1.0;
        x.at(r, 1) = is_north[row.at("firm_id")] ? 1.0 : 0.0;
        y.push_back(std::stod(row.at("total")));
        ++r;
    }
    auto fit = codai::stats::ols_fit(x, y, {"const", "North"});
    c.require(fit.coefficients[1] > 0.0, "planted North coefficient sign not recovered");
    c.require(fit.p_values[1] < 0.001,
              "North coefficient p-value " + std::to_string(fit.p_values[1]) + " >= 0.001");

    fs::remove_all(root);
    c.finish(30.0);
}

void criterion_9_rendering() {
    Criterion c("C9", "table rendering parity");
    std::string micro = codai::report::render_coefficient(-0.075, 0.002, 0.0001);
    c.require(micro == "-0.075*** (0.002)",
              "micro cell rendered as \"" + micro + "\"");
    std::string north = codai::report::render_coefficient(0.033, 0.002, 0.0005);
    c.require(north == "0.033*** (0.002)", "North cell rendered as \"" + north + "\"");
    c.finish();
}

}  // namespace

int main() {
    std::printf("acceptance suite (kernel backend: %s)\n",
                codai::kernels::backend_name(codai::kernels::active_backend()));
    criterion_1_index_bounds();
    criterion_2_equation_parity();
    criterion_3_ols_oracle();
    criterion_4_logit_oracle();
    criterion_5_kmeans();
    criterion_6_golden_corpus();
    criterion_7_aggregation();
    criterion_8_end_to_end();
    criterion_9_rendering();

    if (g_failures == 0) {
        std::printf("all acceptance criteria passed\n");
        return 0;
    }
    std::printf("%d acceptance criteria FAILED\n", g_failures);
    return 1;
}
