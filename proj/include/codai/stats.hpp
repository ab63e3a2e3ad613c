#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "codai/registry.hpp"

namespace codai::stats {

// Row-major matrix of doubles; the only numeric container crossing this API.
struct Matrix {
    std::vector<double> data;
    std::size_t rows = 0;
    std::size_t cols = 0;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : data(r * c, 0.0), rows(r), cols(c) {}

    double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
    const double* row(std::size_t r) const { return data.data() + r * cols; }
};

// ---------------------------------------------------------------------------
// Clustering

struct ClusterModel {
    int k = 0;
    std::vector<std::vector<double>> centroids;  // k x dims
    std::vector<int> assignments;                // one per input row
    double inertia = 0.0;                        // sum of squared distances
    std::uint64_t seed = 0;
    int iterations_run = 0;
};

// Lloyd iterations from k-means++ seeding. Deterministic for a fixed
// (row order, k, seed). An empty cluster re-seeds at the point farthest from
// its assigned centroid. k > rows raises ConfigError.
ClusterModel kmeans_fit(const Matrix& points, int k, std::uint64_t seed, int max_iter = 100,
                        double tol = 1e-12);

double compute_inertia(const Matrix& points, const ClusterModel& model);

struct ElbowPoint {
    int k = 0;
    double inertia = 0.0;
};

struct ElbowResult {
    std::vector<ElbowPoint> curve;  // weakly decreasing inertia
    int suggested_k = 1;            // argmax of the discrete second difference
};

// Fits every k in [k_min, k_max]. When a fresh k-means++ fit lands above the
// previous k's inertia, a warm start from that fit plus its farthest point is
// taken instead, which forces the curve weakly decreasing.
ElbowResult elbow(const Matrix& points, int k_min, int k_max, std::uint64_t seed,
                  int max_iter = 100, double tol = 1e-12);

// Column-wise min-max rescale onto [0,1]; degenerate columns map to 0.
Matrix minmax_scale(const Matrix& points);

// ---------------------------------------------------------------------------
// Regression

enum class ModelKind { ols, logit };

// Terms follow the published specification: size-class dummies with Small as
// baseline, sector dummies over ten NACE sections with every other section as
// baseline, firm age, urban-pole and North/South dummies (Centre baseline),
// and the wide-band share control.
struct RegressionSpec {
    std::string dependent;
    ModelKind model = ModelKind::ols;
    bool intercept = true;
    bool size_dummies = true;
    std::vector<std::string> sector_dummies = {"A", "C", "F", "G", "H", "I", "J", "K", "L", "M"};
    bool firm_age = true;
    bool urban_pole = true;
    bool region_dummies = true;
    bool wideband = true;
};

struct DesignInput {
    registry::FirmRecord firm;
    double dependent = 0.0;
};

struct Design {
    std::vector<std::string> column_names;  // deterministic order
    Matrix x;
    std::vector<double> y;
    std::vector<std::string> row_keys;      // firm ids, aligned with x rows
    std::size_t excluded_rows = 0;          // rows dropped for missing term values
};

// Column order: intercept, size dummies, sector dummies (alphabetical), age,
// urban_pole, North, South, wideband. Rows missing any required term value are
// excluded and counted. A dependent that names a regressor raises ConfigError.
Design build_design(const std::vector<DesignInput>& inputs, const RegressionSpec& spec,
                    int reference_year);

struct FitResult {
    ModelKind model = ModelKind::ols;
    std::vector<std::string> terms;
    std::vector<double> coefficients;
    std::vector<double> standard_errors;
    std::vector<double> statistics;   // t (OLS) or z (logit)
    std::vector<double> p_values;     // two-sided
    std::size_t n_observations = 0;
    std::size_t n_parameters = 0;
    double r_squared = 0.0;           // OLS
    double adj_r_squared = 0.0;       // OLS
    double mcfadden_pseudo_r2 = 0.0;  // logit
    double log_likelihood = 0.0;      // logit
    double aic = 0.0;
    double bic = 0.0;
    std::vector<double> residuals;    // OLS
    int iterations = 0;               // logit IRLS rounds
};

// Least squares via Householder QR (never the normal equations). Standard
// errors from sigma^2 (X'X)^-1, p-values from the t distribution with n-p df,
// AIC = n ln(SSR/n) + 2p, BIC = n ln(SSR/n) + p ln(n). Rank deficiency raises
// FitError naming the collinear columns.
FitResult ols_fit(const Matrix& x, const std::vector<double>& y,
                  const std::vector<std::string>& column_names, bool intercept = true);

// Maximum likelihood by IRLS; converges when the log-likelihood moves by less
// than 1e-10 (at most 100 rounds). Standard errors from the inverse observed
// information. Degenerate responses and perfect separation raise FitError.
FitResult logit_fit(const Matrix& x, const std::vector<double>& y,
                    const std::vector<std::string>& column_names, bool intercept = true);

// Log-likelihood of a coefficient vector, exposed for gradient checks.
double logit_log_likelihood(const Matrix& x, const std::vector<double>& y,
                            const std::vector<double>& beta);
std::vector<double> logit_gradient(const Matrix& x, const std::vector<double>& y,
                                   const std::vector<double>& beta);

}  // namespace codai::stats
