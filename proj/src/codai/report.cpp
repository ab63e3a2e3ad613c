#include "codai/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "codai/csv.hpp"

namespace codai::report {

namespace {

std::string fixed3(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    std::string s(buf);
    if (s == "-0.000") s = "0.000";
    return s;
}

}  // namespace

std::string significance_stars(double p_value) {
    if (p_value < 0.001) return "***";
    if (p_value < 0.01) return "**";
    if (p_value < 0.05) return "*";
    return "";
}

std::string render_coefficient(double coefficient, double standard_error, double p_value) {
    return fixed3(coefficient) + significance_stars(p_value) + " (" + fixed3(standard_error) +
           ")";
}

std::string render_fit_table(const stats::FitResult& fit, const std::string& dependent) {
    std::ostringstream out;
    out << "dependent: " << dependent << " ("
        << (fit.model == stats::ModelKind::ols ? "OLS" : "Logit") << ")\n";

    std::size_t width = 4;
    for (const std::string& term : fit.terms) width = std::max(width, term.size());

    for (std::size_t i = 0; i < fit.terms.size(); ++i) {
        std::string cell =
            render_coefficient(fit.coefficients[i], fit.standard_errors[i], fit.p_values[i]);
        out << fit.terms[i];
        out << std::string(width - fit.terms[i].size() + 2, ' ');
        out << cell << "\n";
    }
    out << std::string(width + 2, '-') << "\n";
    if (fit.model == stats::ModelKind::ols) {
        out << "R-squared: " << fixed3(fit.r_squared) << "\n";
        out << "Adj. R-squared: " << fixed3(fit.adj_r_squared) << "\n";
    } else {
        out << "Pseudo R-squared: " << fixed3(fit.mcfadden_pseudo_r2) << "\n";
    }
    out << "AIC: " << fixed3(fit.aic) << "\n";
    out << "BIC: " << fixed3(fit.bic) << "\n";
    out << "N. of observations: " << fit.n_observations << "\n";
    return out.str();
}

std::vector<std::vector<std::string>> fit_rows(const stats::FitResult& fit) {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < fit.terms.size(); ++i) {
        rows.push_back({fit.terms[i], csv::format_double(fit.coefficients[i], 6),
                        csv::format_double(fit.standard_errors[i], 6),
                        csv::format_double(fit.statistics[i], 6),
                        csv::format_double(fit.p_values[i], 6)});
    }
    return rows;
}

std::vector<FeatureSummary> describe_features(const std::vector<extractor::RawFeatures>& rows) {
    const std::size_t count = extractor::kFeatureCount;
    std::vector<FeatureSummary> summaries(count);
    for (std::size_t c = 0; c < count; ++c) {
        summaries[c].name = extractor::display_names()[c];
    }
    if (rows.empty()) return summaries;

    const double n = static_cast<double>(rows.size());
    std::vector<double> sums(count, 0.0);
    for (std::size_t c = 0; c < count; ++c) {
        summaries[c].min = rows[0].to_vector()[c];
        summaries[c].max = summaries[c].min;
    }
    for (const auto& row : rows) {
        auto v = row.to_vector();
        for (std::size_t c = 0; c < count; ++c) {
            sums[c] += v[c];
            summaries[c].min = std::min(summaries[c].min, v[c]);
            summaries[c].max = std::max(summaries[c].max, v[c]);
        }
    }
    std::vector<double> sq(count, 0.0);
    for (const auto& row : rows) {
        auto v = row.to_vector();
        for (std::size_t c = 0; c < count; ++c) {
            double d = v[c] - sums[c] / n;
            sq[c] += d * d;
        }
    }
    for (std::size_t c = 0; c < count; ++c) {
        summaries[c].mean = sums[c] / n;
        summaries[c].std_dev = std::sqrt(sq[c] / n);
    }
    return summaries;
}

std::string render_feature_summary(const std::vector<FeatureSummary>& summaries) {
    std::ostringstream out;
    std::size_t width = 4;
    for (const auto& s : summaries) width = std::max(width, s.name.size());
    out << std::string(width, ' ') << "  " << "min      max      mean     std\n";
    for (const auto& s : summaries) {
        out << s.name << std::string(width - s.name.size() + 2, ' ');
        out << fixed3(s.min) << "  " << fixed3(s.max) << "  " << fixed3(s.mean) << "  "
            << fixed3(s.std_dev) << "\n";
    }
    return out.str();
}

stats::Matrix correlation_matrix(const std::vector<extractor::RawFeatures>& rows) {
    const std::size_t count = extractor::kFeatureCount;
    stats::Matrix corr(count, count);
    if (rows.empty()) return corr;
    const double n = static_cast<double>(rows.size());

    std::vector<double> means(count, 0.0);
    for (const auto& row : rows) {
        auto v = row.to_vector();
        for (std::size_t c = 0; c < count; ++c) means[c] += v[c];
    }
    for (double& m : means) m /= n;

    stats::Matrix cov(count, count);
    for (const auto& row : rows) {
        auto v = row.to_vector();
        for (std::size_t a = 0; a < count; ++a) {
            for (std::size_t b = 0; b < count; ++b) {
                cov.at(a, b) += (v[a] - means[a]) * (v[b] - means[b]);
            }
        }
    }
    for (std::size_t a = 0; a < count; ++a) {
        for (std::size_t b = 0; b < count; ++b) {
            double denom = std::sqrt(cov.at(a, a) * cov.at(b, b));
            corr.at(a, b) = denom > 0.0 ? cov.at(a, b) / denom : (a == b ? 1.0 : 0.0);
        }
    }
    return corr;
}

std::string render_correlation_matrix(const stats::Matrix& matrix) {
    const auto& names = extractor::display_names();
    std::size_t width = 0;
    for (const auto& name : names) width = std::max(width, name.size());

    std::ostringstream out;
    out << std::string(width, ' ');
    for (const auto& name : names) out << "  " << name;
    out << "\n";
    for (std::size_t a = 0; a < matrix.rows; ++a) {
        out << names[a] << std::string(width - names[a].size(), ' ');
        for (std::size_t b = 0; b < matrix.cols; ++b) {
            out << "  " << std::string(names[b].size() > 6 ? names[b].size() - 6 : 0, ' ')
                << fixed3(matrix.at(a, b));
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace codai::report
