#pragma once

#include <array>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "codai/extractor.hpp"

namespace codai::index {

using FeatureVector = std::array<double, extractor::kFeatureCount>;

struct NormalizationBounds {
    FeatureVector mins{};
    FeatureVector maxs{};
    std::array<std::uint8_t, extractor::kFeatureCount> invert{};
};

// The four features whose scale is flipped at normalization: length_url,
// facebook, request_time, security_header_int.
const std::set<std::string>& default_invert_set();

// Population min/max per feature. Empty population raises ConfigError.
NormalizationBounds fit_bounds(const std::vector<extractor::RawFeatures>& population,
                               const std::set<std::string>& invert_set = default_invert_set());

// v' = (v - min) / (max - min), clamped to [0,1] before inversion; a feature
// with min == max maps to 0. Inverted features return 1 - v'.
FeatureVector normalize(const extractor::RawFeatures& raw, const NormalizationBounds& bounds);
std::vector<FeatureVector> normalize_all(const std::vector<extractor::RawFeatures>& population,
                                         const NormalizationBounds& bounds);

struct DimensionGroup {
    std::string name;
    std::vector<std::string> members;  // feature keys
    double divisor = 1.0;
};

struct DimensionScheme {
    std::string name;
    std::vector<DimensionGroup> groups;

    // Every one of the ten features in exactly one group, all divisors > 0.
    void validate() const;
    double max_total() const;  // total when every normalized value is 1
};

// Built-in weightings. "codai" and "wai2001" keep the published divisors even
// where they differ from the group sizes; "sum10" is one group with divisor 1.
DimensionScheme codai_scheme();
DimensionScheme wai2001_scheme();
DimensionScheme sum10_scheme();
DimensionScheme builtin_scheme(const std::string& name);  // ConfigError on unknown name

// Substitutes each group's size for its divisor (per-dimension means).
DimensionScheme with_mean_divisors(DimensionScheme scheme);

// Parses {"name": ..., "groups": [{"dimension":..., "members":[...], "divisor":...}]}.
DimensionScheme scheme_from_json(const std::string& json_text);

struct IndexScores {
    std::string firm_id;
    FeatureVector normalized{};
    std::vector<double> dimension_raw;     // per-group sums
    std::vector<double> dimension_scored;  // per-group sums / divisor
    double total = 0.0;
};

IndexScores dimension_scores(const std::string& firm_id, const FeatureVector& normalized,
                             const DimensionScheme& scheme);

}  // namespace codai::index
