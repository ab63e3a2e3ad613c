#include "codai/index.hpp"

#include <nlohmann/json.hpp>

#include "codai/errors.hpp"
#include "codai/kernels/kernels.hpp"

namespace codai::index {

namespace {

using extractor::kFeatureCount;

FeatureVector inverse_ranges(const NormalizationBounds& bounds) {
    FeatureVector inv{};
    for (std::size_t i = 0; i < kFeatureCount; ++i) {
        double range = bounds.maxs[i] - bounds.mins[i];
        inv[i] = range > 0.0 ? 1.0 / range : 0.0;  // degenerate feature maps to 0
    }
    return inv;
}

}  // namespace

const std::set<std::string>& default_invert_set() {
    static const std::set<std::string> set = {"length_url", "facebook", "request_time",
                                              "security_header_int"};
    return set;
}

NormalizationBounds fit_bounds(const std::vector<extractor::RawFeatures>& population,
                               const std::set<std::string>& invert_set) {
    if (population.empty()) {
        throw ConfigError("fit_bounds: population is empty");
    }
    std::vector<double> matrix;
    matrix.reserve(population.size() * kFeatureCount);
    for (const auto& raw : population) {
        auto row = raw.to_vector();
        matrix.insert(matrix.end(), row.begin(), row.end());
    }

    NormalizationBounds bounds;
    kernels::column_min_max(matrix.data(), population.size(), kFeatureCount, bounds.mins.data(),
                            bounds.maxs.data());
    for (const std::string& key : invert_set) {
        bounds.invert[extractor::feature_index(key)] = 1;
    }
    return bounds;
}

FeatureVector normalize(const extractor::RawFeatures& raw, const NormalizationBounds& bounds) {
    FeatureVector row = raw.to_vector();
    FeatureVector out{};
    FeatureVector inv = inverse_ranges(bounds);
    kernels::minmax_apply(row.data(), 1, kFeatureCount, bounds.mins.data(), inv.data(),
                          bounds.invert.data(), out.data());
    return out;
}

std::vector<FeatureVector> normalize_all(const std::vector<extractor::RawFeatures>& population,
                                         const NormalizationBounds& bounds) {
    std::vector<double> matrix;
    matrix.reserve(population.size() * kFeatureCount);
    for (const auto& raw : population) {
        auto row = raw.to_vector();
        matrix.insert(matrix.end(), row.begin(), row.end());
    }
    std::vector<double> scaled(matrix.size());
    FeatureVector inv = inverse_ranges(bounds);
    kernels::minmax_apply(matrix.data(), population.size(), kFeatureCount, bounds.mins.data(),
                          inv.data(), bounds.invert.data(), scaled.data());

    std::vector<FeatureVector> out(population.size());
    for (std::size_t r = 0; r < population.size(); ++r) {
        std::copy_n(scaled.data() + r * kFeatureCount, kFeatureCount, out[r].begin());
    }
    return out;
}

void DimensionScheme::validate() const {
    std::array<int, kFeatureCount> seen{};
    for (const DimensionGroup& group : groups) {
        if (group.divisor <= 0.0) {
            throw ConfigError("scheme " + name + ": divisor must be positive in dimension " +
                              group.name);
        }
        for (const std::string& member : group.members) {
            ++seen[extractor::feature_index(member)];
        }
    }
    for (std::size_t i = 0; i < kFeatureCount; ++i) {
        if (seen[i] != 1) {
            throw ConfigError("scheme " + name + ": feature " + extractor::feature_keys()[i] +
                              (seen[i] == 0 ? " is missing" : " appears in more than one group"));
        }
    }
}

double DimensionScheme::max_total() const {
    double total = 0.0;
    for (const DimensionGroup& group : groups) {
        total += static_cast<double>(group.members.size()) / group.divisor;
    }
    return total;
}

DimensionScheme codai_scheme() {
    return DimensionScheme{
        "codai",
        {
            {"stakeholder_engagement", {"unique_links_out", "facebook", "instagram", "linkedin"}, 2.0},
            {"technical_capabilities", {"best_practices", "security_header_int", "request_time"}, 3.0},
            {"internal_organization", {"length_url", "unique_links_in"}, 2.0},
            {"digital_culture", {"years_old"}, 1.0},
        },
    };
}

DimensionScheme wai2001_scheme() {
    // best_practices stands in for the published "SEO performance" indicator,
    // which leaves navigability with the two link counts.
    return DimensionScheme{
        "wai2001",
        {
            {"accessibility",
             {"length_url", "best_practices", "facebook", "instagram", "linkedin"},
             5.0},
            {"navigability", {"unique_links_in", "unique_links_out"}, 3.0},
            {"speed", {"request_time"}, 1.0},
            {"digital_culture", {"years_old", "security_header_int"}, 2.0},
        },
    };
}

DimensionScheme sum10_scheme() {
    std::vector<std::string> all(extractor::feature_keys().begin(),
                                 extractor::feature_keys().end());
    return DimensionScheme{"sum10", {{"sum", std::move(all), 1.0}}};
}

DimensionScheme builtin_scheme(const std::string& name) {
    if (name == "codai") return codai_scheme();
    if (name == "wai2001") return wai2001_scheme();
    if (name == "sum10") return sum10_scheme();
    throw ConfigError("unknown scheme name: " + name + " (built-ins: codai, wai2001, sum10)");
}

DimensionScheme with_mean_divisors(DimensionScheme scheme) {
    for (DimensionGroup& group : scheme.groups) {
        group.divisor = static_cast<double>(group.members.size());
    }
    scheme.name += "-mean";
    return scheme;
}

DimensionScheme scheme_from_json(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& err) {
        throw ConfigError(std::string("scheme file is not valid JSON: ") + err.what());
    }
    DimensionScheme scheme;
    scheme.name = doc.value("name", "custom");
    if (!doc.contains("groups") || !doc["groups"].is_array()) {
        throw ConfigError("scheme file needs a \"groups\" array");
    }
    for (const auto& entry : doc["groups"]) {
        DimensionGroup group;
        group.name = entry.value("dimension", "");
        group.divisor = entry.value("divisor", 1.0);
        for (const auto& member : entry.at("members")) {
            group.members.push_back(member.get<std::string>());
        }
        scheme.groups.push_back(std::move(group));
    }
    scheme.validate();
    return scheme;
}

IndexScores dimension_scores(const std::string& firm_id, const FeatureVector& normalized,
                             const DimensionScheme& scheme) {
    scheme.validate();
    IndexScores scores;
    scores.firm_id = firm_id;
    scores.normalized = normalized;
    for (const DimensionGroup& group : scheme.groups) {
        double raw = 0.0;
        for (const std::string& member : group.members) {
            raw += normalized[extractor::feature_index(member)];
        }
        scores.dimension_raw.push_back(raw);
        scores.dimension_scored.push_back(raw / group.divisor);
        scores.total += raw / group.divisor;
    }
    return scores;
}

}  // namespace codai::index
