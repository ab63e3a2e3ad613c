#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "codai/spatial.hpp"

namespace spatial = codai::spatial;
namespace extractor = codai::extractor;

namespace {

spatial::FirmRow row(const std::string& id, const std::string& nuts3,
                     const std::string& municipality, double value, double flag) {
    spatial::FirmRow r;
    r.firm_id = id;
    r.nuts3_code = nuts3;
    r.municipality_code = municipality;
    r.features.fill(value);
    r.features[extractor::kFacebook] = flag;
    r.index_total = value;
    return r;
}

}  // namespace

TEST_CASE("means and social shares are exact") {
    std::vector<spatial::FirmRow> rows = {
        row("a", "R1", "M1", 0.2, 1),
        row("b", "R1", "M1", 0.4, 0),
        row("c", "R1", "M1", 0.3, 1),
        row("d", "R1", "M1", 0.3, 1),
    };
    auto report = spatial::aggregate(rows, spatial::Level::nuts3, 1);
    REQUIRE(report.regions.size() == 1);
    const auto& region = report.regions[0];
    CHECK(region.n_firms == 4);
    CHECK(region.values[extractor::kUniqueLinksIn] == doctest::Approx(0.3));
    CHECK(region.values[extractor::kFacebook] == doctest::Approx(0.75));
    CHECK(region.mean_index == doctest::Approx(0.3));
}

TEST_CASE("two-firm mean example") {
    std::vector<spatial::FirmRow> rows = {row("a", "R1", "M1", 0.2, 0),
                                          row("b", "R1", "M1", 0.4, 0)};
    auto report = spatial::aggregate(rows, spatial::Level::nuts3, 1);
    CHECK(report.regions[0].values[extractor::kYearsOld] == doctest::Approx(0.3));
}

TEST_CASE("municipality threshold: 9 firms out, 10 firms in") {
    std::vector<spatial::FirmRow> rows;
    for (int i = 0; i < 9; ++i) {
        rows.push_back(row("s" + std::to_string(i), "R1", "SMALL", 0.5, 0));
    }
    for (int i = 0; i < 10; ++i) {
        rows.push_back(row("b" + std::to_string(i), "R1", "BIG", 0.5, 1));
    }
    auto report = spatial::aggregate(rows, spatial::Level::municipality,
                                     spatial::default_min_count(spatial::Level::municipality));
    REQUIRE(report.regions.size() == 1);
    CHECK(report.regions[0].region_code == "BIG");
    CHECK(report.regions[0].n_firms == 10);
    REQUIRE(report.excluded_regions.size() == 1);
    CHECK(report.excluded_regions[0].first == "SMALL");
    CHECK(report.excluded_regions[0].second == 9);
}

TEST_CASE("missing region codes are counted, not fatal") {
    std::vector<spatial::FirmRow> rows = {row("a", "", "M1", 0.5, 0), row("b", "R1", "M1", 0.5, 0)};
    auto report = spatial::aggregate(rows, spatial::Level::nuts3, 1);
    CHECK(report.excluded_missing_code == 1);
    CHECK(report.regions.size() == 1);
}

TEST_CASE("kept + excluded counts always reconcile with the input") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<spatial::FirmRow> rows;
        std::size_t n = rng() % 200;
        for (std::size_t i = 0; i < n; ++i) {
            std::string municipality =
                (rng() % 8 == 0) ? "" : "M" + std::to_string(rng() % 12);
            rows.push_back(row("f" + std::to_string(i), "R1", municipality,
                               0.1 * static_cast<double>(rng() % 10), rng() % 2));
        }
        auto report = spatial::aggregate(rows, spatial::Level::municipality, 10);
        CHECK(report.included_firms() + report.excluded_firms() == rows.size());
        CHECK(report.input_rows == rows.size());
    }
}

TEST_CASE("aggregation is permutation-invariant and scale-equivariant") {
    std::mt19937_64 rng(19);
    std::vector<spatial::FirmRow> rows;
    for (int i = 0; i < 60; ++i) {
        rows.push_back(row("f" + std::to_string(i), "R" + std::to_string(i % 3), "M1",
                           0.01 * static_cast<double>(rng() % 100), rng() % 2));
    }
    auto report = spatial::aggregate(rows, spatial::Level::nuts3, 1);

    auto shuffled = rows;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    auto report2 = spatial::aggregate(shuffled, spatial::Level::nuts3, 1);
    REQUIRE(report.regions.size() == report2.regions.size());
    for (std::size_t i = 0; i < report.regions.size(); ++i) {
        CHECK(report.regions[i].region_code == report2.regions[i].region_code);
        for (std::size_t c = 0; c < extractor::kFeatureCount; ++c) {
            CHECK(report.regions[i].values[c] ==
                  doctest::Approx(report2.regions[i].values[c]).epsilon(1e-12));
        }
    }

    const double scale = 2.5;
    auto scaled_rows = rows;
    for (auto& r : scaled_rows) r.features[extractor::kYearsOld] *= scale;
    auto report3 = spatial::aggregate(scaled_rows, spatial::Level::nuts3, 1);
    for (std::size_t i = 0; i < report.regions.size(); ++i) {
        CHECK(report3.regions[i].values[extractor::kYearsOld] ==
              doctest::Approx(scale * report.regions[i].values[extractor::kYearsOld]));
    }

    // means stay within the member range
    for (const auto& region : report.regions) {
        CHECK(region.values[extractor::kFacebook] >= 0.0);
        CHECK(region.values[extractor::kFacebook] <= 1.0);
    }
}
