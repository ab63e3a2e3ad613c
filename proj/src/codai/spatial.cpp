#include "codai/spatial.hpp"

#include <algorithm>
#include <map>

#include "codai/kernels/kernels.hpp"

namespace codai::spatial {

const char* level_name(Level level) {
    return level == Level::nuts3 ? "nuts3" : "municipality";
}

int default_min_count(Level level) {
    return level == Level::nuts3 ? 1 : 10;
}

std::size_t AggregateReport::included_firms() const {
    std::size_t n = 0;
    for (const RegionAggregate& region : regions) n += region.n_firms;
    return n;
}

std::size_t AggregateReport::excluded_firms() const {
    std::size_t n = excluded_missing_code;
    for (const auto& [code, count] : excluded_regions) n += count;
    return n;
}

AggregateReport aggregate(const std::vector<FirmRow>& rows, Level level, int min_count) {
    struct Accumulator {
        std::size_t n = 0;
        index::FeatureVector sums{};
        double index_sum = 0.0;
    };
    std::map<std::string, Accumulator> by_region;

    AggregateReport report;
    report.input_rows = rows.size();

    for (const FirmRow& row : rows) {
        const std::string& code =
            level == Level::nuts3 ? row.nuts3_code : row.municipality_code;
        if (code.empty()) {
            ++report.excluded_missing_code;
            continue;
        }
        Accumulator& acc = by_region[code];
        ++acc.n;
        kernels::add_row(acc.sums.data(), row.features.data(), row.features.size());
        acc.index_sum += row.index_total;
    }

    for (auto& [code, acc] : by_region) {
        if (acc.n < static_cast<std::size_t>(min_count)) {
            report.excluded_regions.emplace_back(code, acc.n);
            continue;
        }
        RegionAggregate region;
        region.region_code = code;
        region.level = level;
        region.n_firms = acc.n;
        region.values = acc.sums;
        kernels::divide(region.values.data(), region.values.size(),
                        static_cast<double>(acc.n));
        region.mean_index = acc.index_sum / static_cast<double>(acc.n);
        report.regions.push_back(std::move(region));
    }
    std::sort(report.regions.begin(), report.regions.end(),
              [](const RegionAggregate& a, const RegionAggregate& b) {
                  return a.region_code < b.region_code;
              });
    return report;
}

}  // namespace codai::spatial
