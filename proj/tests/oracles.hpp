#pragma once

// Test-only reference implementations, deliberately independent of the library
// code paths they check: hand-rolled Gaussian elimination over long doubles
// instead of QR/Eigen, a damped Newton climber instead of IRLS.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace oracles {

using LongMatrix = std::vector<std::vector<long double>>;

// Solves A x = b in place by Gauss-Jordan with partial pivoting.
inline std::vector<long double> gauss_solve(LongMatrix a, std::vector<long double> b) {
    const std::size_t n = a.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::fabs(static_cast<double>(a[r][col])) >
                std::fabs(static_cast<double>(a[pivot][col]))) {
                pivot = r;
            }
        }
        if (a[pivot][col] == 0.0L) throw std::runtime_error("oracle: singular system");
        std::swap(a[pivot], a[col]);
        std::swap(b[pivot], b[col]);
        long double diag = a[col][col];
        for (std::size_t c = col; c < n; ++c) a[col][c] /= diag;
        b[col] /= diag;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0.0L) continue;
            long double factor = a[r][col];
            for (std::size_t c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
            b[r] -= factor * b[col];
        }
    }
    return b;
}

inline LongMatrix invert(LongMatrix a) {
    const std::size_t n = a.size();
    LongMatrix inv(n, std::vector<long double>(n, 0.0L));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1.0L;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::fabs(static_cast<double>(a[r][col])) >
                std::fabs(static_cast<double>(a[pivot][col]))) {
                pivot = r;
            }
        }
        if (a[pivot][col] == 0.0L) throw std::runtime_error("oracle: singular matrix");
        std::swap(a[pivot], a[col]);
        std::swap(inv[pivot], inv[col]);
        long double diag = a[col][col];
        for (std::size_t c = 0; c < n; ++c) {
            a[col][c] /= diag;
            inv[col][c] /= diag;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            long double factor = a[r][col];
            if (factor == 0.0L) continue;
            for (std::size_t c = 0; c < n; ++c) {
                a[r][c] -= factor * a[col][c];
                inv[r][c] -= factor * inv[col][c];
            }
        }
    }
    return inv;
}

struct OlsOracleFit {
    std::vector<double> coefficients;
    std::vector<double> standard_errors;
    std::vector<double> residuals;
    double r_squared = 0.0;
    double adj_r_squared = 0.0;
    double aic = 0.0;
    double bic = 0.0;
};

// Normal equations: beta = (X'X)^-1 X'y, classical standard errors.
inline OlsOracleFit ols_normal_equations(const std::vector<double>& x_data, std::size_t rows,
                                         std::size_t cols, const std::vector<double>& y,
                                         bool intercept_included) {
    LongMatrix xtx(cols, std::vector<long double>(cols, 0.0L));
    std::vector<long double> xty(cols, 0.0L);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t a = 0; a < cols; ++a) {
            long double xa = x_data[i * cols + a];
            xty[a] += xa * y[i];
            for (std::size_t b = 0; b < cols; ++b) {
                xtx[a][b] += xa * static_cast<long double>(x_data[i * cols + b]);
            }
        }
    }
    auto beta = gauss_solve(xtx, xty);

    OlsOracleFit fit;
    long double ssr = 0.0L;
    long double mean_y = 0.0L;
    for (std::size_t i = 0; i < rows; ++i) mean_y += y[i];
    mean_y /= static_cast<long double>(rows);
    long double sst = 0.0L;
    for (std::size_t i = 0; i < rows; ++i) {
        long double fitted = 0.0L;
        for (std::size_t a = 0; a < cols; ++a) {
            fitted += beta[a] * static_cast<long double>(x_data[i * cols + a]);
        }
        long double residual = y[i] - fitted;
        fit.residuals.push_back(static_cast<double>(residual));
        ssr += residual * residual;
        long double centered = intercept_included ? (y[i] - mean_y) : y[i];
        sst += centered * centered;
    }

    long double df = static_cast<long double>(rows - cols);
    long double sigma2 = ssr / df;
    auto xtx_inv = invert([&] {
        LongMatrix m(cols, std::vector<long double>(cols, 0.0L));
        for (std::size_t i = 0; i < rows; ++i) {
            for (std::size_t a = 0; a < cols; ++a) {
                for (std::size_t b = 0; b < cols; ++b) {
                    m[a][b] += static_cast<long double>(x_data[i * cols + a]) *
                               static_cast<long double>(x_data[i * cols + b]);
                }
            }
        }
        return m;
    }());

    for (std::size_t a = 0; a < cols; ++a) {
        fit.coefficients.push_back(static_cast<double>(beta[a]));
        fit.standard_errors.push_back(
            static_cast<double>(std::sqrt(static_cast<double>(sigma2 * xtx_inv[a][a]))));
    }
    fit.r_squared = static_cast<double>(1.0L - ssr / sst);
    long double centered_n =
        intercept_included ? static_cast<long double>(rows - 1) : static_cast<long double>(rows);
    fit.adj_r_squared = static_cast<double>(1.0L - (1.0L - (1.0L - ssr / sst)) * centered_n / df);
    long double n = static_cast<long double>(rows);
    fit.aic = static_cast<double>(n * std::log(static_cast<double>(ssr / n)) + 2.0L * cols);
    fit.bic = static_cast<double>(n * std::log(static_cast<double>(ssr / n)) +
                                  static_cast<long double>(cols) *
                                      std::log(static_cast<double>(n)));
    return fit;
}

inline double logit_ll(const std::vector<double>& x_data, std::size_t rows, std::size_t cols,
                       const std::vector<double>& y, const std::vector<double>& beta) {
    long double ll = 0.0L;
    for (std::size_t i = 0; i < rows; ++i) {
        long double eta = 0.0L;
        for (std::size_t a = 0; a < cols; ++a) eta += beta[a] * x_data[i * cols + a];
        long double log1pexp = eta > 0.0L
                                   ? eta + std::log1p(std::exp(static_cast<double>(-eta)))
                                   : std::log1p(std::exp(static_cast<double>(eta)));
        ll += static_cast<long double>(y[i]) * eta - log1pexp;
    }
    return static_cast<double>(ll);
}

inline std::vector<double> logit_grad(const std::vector<double>& x_data, std::size_t rows,
                                      std::size_t cols, const std::vector<double>& y,
                                      const std::vector<double>& beta) {
    std::vector<long double> grad(cols, 0.0L);
    for (std::size_t i = 0; i < rows; ++i) {
        long double eta = 0.0L;
        for (std::size_t a = 0; a < cols; ++a) eta += beta[a] * x_data[i * cols + a];
        long double mu = 1.0L / (1.0L + std::exp(static_cast<double>(-eta)));
        long double diff = y[i] - mu;
        for (std::size_t a = 0; a < cols; ++a) grad[a] += x_data[i * cols + a] * diff;
    }
    return std::vector<double>(grad.begin(), grad.end());
}

// Damped Newton: full Newton step, halved until the log-likelihood improves.
inline std::vector<double> logit_damped_newton(const std::vector<double>& x_data,
                                               std::size_t rows, std::size_t cols,
                                               const std::vector<double>& y,
                                               int max_iter = 200, double tol = 1e-12) {
    std::vector<double> beta(cols, 0.0);
    double ll = logit_ll(x_data, rows, cols, y, beta);
    for (int iter = 0; iter < max_iter; ++iter) {
        LongMatrix hessian(cols, std::vector<long double>(cols, 0.0L));
        for (std::size_t i = 0; i < rows; ++i) {
            long double eta = 0.0L;
            for (std::size_t a = 0; a < cols; ++a) eta += beta[a] * x_data[i * cols + a];
            long double mu = 1.0L / (1.0L + std::exp(static_cast<double>(-eta)));
            long double w = mu * (1.0L - mu);
            for (std::size_t a = 0; a < cols; ++a) {
                for (std::size_t b = 0; b < cols; ++b) {
                    hessian[a][b] += w * x_data[i * cols + a] * x_data[i * cols + b];
                }
            }
        }
        auto grad = logit_grad(x_data, rows, cols, y, beta);
        auto step = gauss_solve(hessian,
                                std::vector<long double>(grad.begin(), grad.end()));

        double damping = 1.0;
        std::vector<double> candidate(cols);
        double new_ll = -1e300;
        for (int halvings = 0; halvings < 60; ++halvings) {
            for (std::size_t a = 0; a < cols; ++a) {
                candidate[a] = beta[a] + damping * static_cast<double>(step[a]);
            }
            new_ll = logit_ll(x_data, rows, cols, y, candidate);
            if (new_ll >= ll - 1e-15) break;
            damping *= 0.5;
        }
        beta = candidate;
        if (std::fabs(new_ll - ll) < tol) break;
        ll = new_ll;
    }
    return beta;
}

}  // namespace oracles
