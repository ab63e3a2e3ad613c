#pragma once

#include <string>
#include <vector>

#include "codai/extractor.hpp"
#include "codai/stats.hpp"

namespace codai::report {

// "* p<0.05, ** p<0.01, *** p<0.001"
std::string significance_stars(double p_value);

// One table cell: coefficient to 3 decimals with stars, then the standard
// error in parentheses to 3 decimals, e.g. "-0.075*** (0.002)".
std::string render_coefficient(double coefficient, double standard_error, double p_value);

// Human-readable coefficient table with one row per term and a fit-statistics
// footer (R-squared or pseudo R-squared, AIC, BIC, observations).
std::string render_fit_table(const stats::FitResult& fit, const std::string& dependent);

// Machine-readable rows: term, coef, se, stat, p.
std::vector<std::vector<std::string>> fit_rows(const stats::FitResult& fit);

struct FeatureSummary {
    std::string name;
    double min = 0.0;
    double max = 0.0;
    double mean = 0.0;
    double std_dev = 0.0;  // population denominator n
};

// Descriptive statistics per feature, in the canonical feature order.
std::vector<FeatureSummary> describe_features(const std::vector<extractor::RawFeatures>& rows);
std::string render_feature_summary(const std::vector<FeatureSummary>& summaries);

// Pearson correlations between the ten features; constant features correlate 0.
stats::Matrix correlation_matrix(const std::vector<extractor::RawFeatures>& rows);
std::string render_correlation_matrix(const stats::Matrix& matrix);

}  // namespace codai::report
