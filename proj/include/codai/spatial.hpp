#pragma once

#include <string>
#include <vector>

#include "codai/index.hpp"

namespace codai::spatial {

enum class Level { nuts3, municipality };

const char* level_name(Level level);
int default_min_count(Level level);  // 1 for nuts3, 10 for municipality

struct FirmRow {
    std::string firm_id;
    std::string nuts3_code;
    std::string municipality_code;
    index::FeatureVector features{};  // raw or normalized, caller's choice
    double index_total = 0.0;
};

struct RegionAggregate {
    std::string region_code;
    Level level = Level::nuts3;
    std::size_t n_firms = 0;
    // Arithmetic mean per feature. For the three social flags the mean of the
    // 0/1 values is exactly the share of adopting firms.
    index::FeatureVector values{};
    double mean_index = 0.0;
};

struct AggregateReport {
    std::vector<RegionAggregate> regions;  // sorted by region_code
    std::size_t input_rows = 0;
    std::size_t excluded_missing_code = 0;
    // regions dropped for having fewer than min_count firms, with their counts
    std::vector<std::pair<std::string, std::size_t>> excluded_regions;

    std::size_t included_firms() const;
    std::size_t excluded_firms() const;
};

// Groups rows by the requested level's region code. Rows with an empty code
// are counted, never fatal. Regions under min_count land in the exclusion
// report; silent drops are not possible.
AggregateReport aggregate(const std::vector<FirmRow>& rows, Level level, int min_count);

}  // namespace codai::spatial
