#include <algorithm>
#include <cmath>
#include <set>

#include <Eigen/Dense>
#include <boost/math/distributions/students_t.hpp>

#include "codai/errors.hpp"
#include "codai/stats.hpp"

namespace codai::stats {

namespace {

Eigen::MatrixXd to_eigen(const Matrix& m) {
    Eigen::MatrixXd out(m.rows, m.cols);
    for (std::size_t r = 0; r < m.rows; ++r) {
        for (std::size_t c = 0; c < m.cols; ++c) {
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m.at(r, c);
        }
    }
    return out;
}

Eigen::VectorXd to_eigen(const std::vector<double>& v) {
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

double students_t_two_sided_p(double t, double df) {
    boost::math::students_t dist(df);
    return 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
}

double normal_two_sided_p(double z) {
    return std::erfc(std::abs(z) / std::sqrt(2.0));
}

std::vector<std::string> collinear_column_names(
    const Eigen::ColPivHouseholderQR<Eigen::MatrixXd>& qr,
    const std::vector<std::string>& column_names) {
    std::vector<std::string> names;
    const auto& perm = qr.colsPermutation().indices();
    for (Eigen::Index i = qr.rank(); i < perm.size(); ++i) {
        names.push_back(column_names[static_cast<std::size_t>(perm(i))]);
    }
    return names;
}

}  // namespace

Design build_design(const std::vector<DesignInput>& inputs, const RegressionSpec& spec,
                    int reference_year) {
    Design design;

    if (spec.intercept) design.column_names.push_back("const");
    if (spec.size_dummies) {
        design.column_names.push_back("micro");
        design.column_names.push_back("medium");
        design.column_names.push_back("large");
    }
    std::vector<std::string> sectors = spec.sector_dummies;
    std::sort(sectors.begin(), sectors.end());
    for (const std::string& sector : sectors) design.column_names.push_back(sector);
    if (spec.firm_age) design.column_names.push_back("firm_age");
    if (spec.urban_pole) design.column_names.push_back("urban_pole");
    if (spec.region_dummies) {
        design.column_names.push_back("North");
        design.column_names.push_back("South");
    }
    if (spec.wideband) design.column_names.push_back("wideband");

    for (const std::string& name : design.column_names) {
        if (name == spec.dependent) {
            throw ConfigError("dependent variable \"" + spec.dependent +
                              "\" is also a regressor");
        }
    }

    std::vector<std::vector<double>> rows;
    for (const DesignInput& input : inputs) {
        const registry::FirmRecord& firm = input.firm;
        if (spec.size_dummies && !firm.employees) {
            ++design.excluded_rows;
            continue;
        }
        if (spec.firm_age && !firm.founding_year) {
            ++design.excluded_rows;
            continue;
        }
        if (spec.wideband && !firm.wideband_share) {
            ++design.excluded_rows;
            continue;
        }

        std::vector<double> row;
        row.reserve(design.column_names.size());
        if (spec.intercept) row.push_back(1.0);
        if (spec.size_dummies) {
            registry::SizeClass size = registry::classify_size(*firm.employees);
            row.push_back(size == registry::SizeClass::Micro ? 1.0 : 0.0);
            row.push_back(size == registry::SizeClass::Medium ? 1.0 : 0.0);
            row.push_back(size == registry::SizeClass::Large ? 1.0 : 0.0);
        }
        for (const std::string& sector : sectors) {
            row.push_back(firm.nace_section == sector ? 1.0 : 0.0);
        }
        if (spec.firm_age) {
            row.push_back(static_cast<double>(reference_year - *firm.founding_year));
        }
        if (spec.urban_pole) row.push_back(firm.urban_pole ? 1.0 : 0.0);
        if (spec.region_dummies) {
            row.push_back(firm.macro_region == registry::MacroRegion::North ? 1.0 : 0.0);
            row.push_back(firm.macro_region == registry::MacroRegion::South ? 1.0 : 0.0);
        }
        if (spec.wideband) row.push_back(*firm.wideband_share);

        rows.push_back(std::move(row));
        design.y.push_back(input.dependent);
        design.row_keys.push_back(firm.firm_id);
    }

    design.x = Matrix(rows.size(), design.column_names.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        std::copy(rows[r].begin(), rows[r].end(), design.x.data.begin() + r * design.x.cols);
    }
    return design;
}

FitResult ols_fit(const Matrix& x, const std::vector<double>& y,
                  const std::vector<std::string>& column_names, bool intercept) {
    const std::size_t n = x.rows;
    const std::size_t p = x.cols;
    if (y.size() != n) throw ConfigError("ols_fit: y length does not match X rows");
    if (n <= p) {
        throw FitError("ols_fit: need more observations (" + std::to_string(n) +
                       ") than parameters (" + std::to_string(p) + ")");
    }

    Eigen::MatrixXd X = to_eigen(x);
    Eigen::VectorXd Y = to_eigen(y);

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> pivoted(X);
    if (pivoted.rank() < static_cast<Eigen::Index>(p)) {
        std::string names;
        for (const std::string& name : collinear_column_names(pivoted, column_names)) {
            if (!names.empty()) names += ", ";
            names += name;
        }
        throw FitError("ols_fit: design matrix is rank deficient; collinear columns: " + names);
    }

    Eigen::HouseholderQR<Eigen::MatrixXd> qr(X);
    Eigen::VectorXd beta = qr.solve(Y);
    Eigen::VectorXd fitted = X * beta;
    Eigen::VectorXd residuals = Y - fitted;

    double ssr = residuals.squaredNorm();
    double sst;
    if (intercept) {
        double mean = Y.mean();
        sst = (Y.array() - mean).square().sum();
    } else {
        sst = Y.squaredNorm();
    }

    double df = static_cast<double>(n - p);
    double sigma2 = ssr / df;

    // (X'X)^-1 from the R factor: X = QR implies X'X = R'R
    Eigen::MatrixXd R = qr.matrixQR().topRows(static_cast<Eigen::Index>(p))
                            .triangularView<Eigen::Upper>();
    Eigen::MatrixXd Rinv = R.inverse();
    Eigen::MatrixXd xtx_inv = Rinv * Rinv.transpose();

    FitResult fit;
    fit.model = ModelKind::ols;
    fit.terms = column_names;
    fit.n_observations = n;
    fit.n_parameters = p;
    for (std::size_t j = 0; j < p; ++j) {
        double b = beta(static_cast<Eigen::Index>(j));
        double se = std::sqrt(sigma2 * xtx_inv(static_cast<Eigen::Index>(j),
                                               static_cast<Eigen::Index>(j)));
        double t = se > 0.0 ? b / se : 0.0;
        fit.coefficients.push_back(b);
        fit.standard_errors.push_back(se);
        fit.statistics.push_back(t);
        fit.p_values.push_back(students_t_two_sided_p(t, df));
    }
    fit.r_squared = sst > 0.0 ? 1.0 - ssr / sst : 0.0;
    double centered_n = intercept ? static_cast<double>(n - 1) : static_cast<double>(n);
    fit.adj_r_squared = 1.0 - (1.0 - fit.r_squared) * centered_n / df;
    double np = static_cast<double>(n);
    fit.aic = np * std::log(ssr / np) + 2.0 * static_cast<double>(p);
    fit.bic = np * std::log(ssr / np) + static_cast<double>(p) * std::log(np);
    fit.residuals.assign(residuals.data(), residuals.data() + residuals.size());
    return fit;
}

double logit_log_likelihood(const Matrix& x, const std::vector<double>& y,
                            const std::vector<double>& beta) {
    double ll = 0.0;
    for (std::size_t i = 0; i < x.rows; ++i) {
        double eta = 0.0;
        for (std::size_t j = 0; j < x.cols; ++j) eta += x.at(i, j) * beta[j];
        // log(1 + e^eta) computed stably on both tails
        double log1pexp = eta > 0.0 ? eta + std::log1p(std::exp(-eta)) : std::log1p(std::exp(eta));
        ll += y[i] * eta - log1pexp;
    }
    return ll;
}

std::vector<double> logit_gradient(const Matrix& x, const std::vector<double>& y,
                                   const std::vector<double>& beta) {
    std::vector<double> grad(x.cols, 0.0);
    for (std::size_t i = 0; i < x.rows; ++i) {
        double eta = 0.0;
        for (std::size_t j = 0; j < x.cols; ++j) eta += x.at(i, j) * beta[j];
        double mu = 1.0 / (1.0 + std::exp(-eta));
        double diff = y[i] - mu;
        for (std::size_t j = 0; j < x.cols; ++j) grad[j] += x.at(i, j) * diff;
    }
    return grad;
}

FitResult logit_fit(const Matrix& x, const std::vector<double>& y,
                    const std::vector<std::string>& column_names, bool intercept) {
    const std::size_t n = x.rows;
    const std::size_t p = x.cols;
    if (y.size() != n) throw ConfigError("logit_fit: y length does not match X rows");

    double positives = 0.0;
    for (double v : y) {
        if (v != 0.0 && v != 1.0) throw ConfigError("logit_fit: response must be 0/1");
        positives += v;
    }
    if (positives == 0.0 || positives == static_cast<double>(n)) {
        throw FitError("logit_fit: degenerate response, all outcomes are the same");
    }

    Eigen::MatrixXd X = to_eigen(x);
    Eigen::VectorXd Y = to_eigen(y);
    Eigen::VectorXd beta = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(p));

    std::vector<double> beta_std(p, 0.0);
    double ll = logit_log_likelihood(x, y, beta_std);
    int iter = 0;
    Eigen::MatrixXd information(p, p);

    for (; iter < 100; ++iter) {
        Eigen::VectorXd eta = X * beta;
        Eigen::VectorXd mu(n);
        Eigen::VectorXd w(n);
        for (Eigen::Index i = 0; i < eta.size(); ++i) {
            double m = 1.0 / (1.0 + std::exp(-eta(i)));
            mu(i) = m;
            w(i) = m * (1.0 - m);
        }
        information = X.transpose() * w.asDiagonal() * X;
        Eigen::VectorXd score = X.transpose() * (Y - mu);
        Eigen::LDLT<Eigen::MatrixXd> solver(information);
        if (solver.info() != Eigen::Success) {
            throw FitError("logit_fit: information matrix is singular");
        }
        Eigen::VectorXd delta = solver.solve(score);
        beta += delta;

        for (std::size_t j = 0; j < p; ++j) beta_std[j] = beta(static_cast<Eigen::Index>(j));
        double new_ll = logit_log_likelihood(x, y, beta_std);
        if (!std::isfinite(new_ll)) {
            throw FitError("logit_fit: log-likelihood diverged");
        }
        double change = std::abs(new_ll - ll);
        ll = new_ll;
        if (change < 1e-10) {
            ++iter;
            break;
        }
    }

    // perfect separation: every observation classified arbitrarily well, which
    // sends the offending coefficient toward infinity
    double max_abs_beta = 0.0;
    std::size_t worst_col = 0;
    for (std::size_t j = 0; j < p; ++j) {
        if (std::abs(beta_std[j]) > max_abs_beta) {
            max_abs_beta = std::abs(beta_std[j]);
            worst_col = j;
        }
    }
    bool perfectly_classified = true;
    {
        Eigen::VectorXd eta = X * beta;
        for (Eigen::Index i = 0; i < eta.size(); ++i) {
            double mu = 1.0 / (1.0 + std::exp(-eta(i)));
            if (std::abs(Y(i) - mu) >= 1e-6) {
                perfectly_classified = false;
                break;
            }
        }
    }
    if (max_abs_beta > 1e3 || perfectly_classified) {
        throw FitError("logit_fit: diverging coefficient suggests perfect separation in column " +
                       column_names[worst_col]);
    }

    // refresh the information at the final coefficients
    {
        Eigen::VectorXd eta = X * beta;
        Eigen::VectorXd w(n);
        for (Eigen::Index i = 0; i < eta.size(); ++i) {
            double m = 1.0 / (1.0 + std::exp(-eta(i)));
            w(i) = m * (1.0 - m);
        }
        information = X.transpose() * w.asDiagonal() * X;
    }
    Eigen::MatrixXd covariance = information.inverse();

    FitResult fit;
    fit.model = ModelKind::logit;
    fit.terms = column_names;
    fit.n_observations = n;
    fit.n_parameters = p;
    fit.iterations = iter;
    fit.log_likelihood = ll;
    for (std::size_t j = 0; j < p; ++j) {
        double b = beta_std[j];
        double se = std::sqrt(covariance(static_cast<Eigen::Index>(j),
                                         static_cast<Eigen::Index>(j)));
        double z = se > 0.0 ? b / se : 0.0;
        fit.coefficients.push_back(b);
        fit.standard_errors.push_back(se);
        fit.statistics.push_back(z);
        fit.p_values.push_back(normal_two_sided_p(z));
    }

    // intercept-only likelihood in closed form
    (void)intercept;
    double pbar = positives / static_cast<double>(n);
    double ll0 = static_cast<double>(n) *
                 (pbar * std::log(pbar) + (1.0 - pbar) * std::log(1.0 - pbar));
    fit.mcfadden_pseudo_r2 = 1.0 - ll / ll0;
    fit.aic = -2.0 * ll + 2.0 * static_cast<double>(p);
    fit.bic = -2.0 * ll + static_cast<double>(p) * std::log(static_cast<double>(n));
    return fit;
}

}  // namespace codai::stats
