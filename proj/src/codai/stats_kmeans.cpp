#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "codai/errors.hpp"
#include "codai/kernels/kernels.hpp"
#include "codai/stats.hpp"

namespace codai::stats {

namespace {

// mt19937_64 with a fixed bit-to-double mapping, so draws are identical on
// every platform and standard library.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    std::size_t uniform_index(std::size_t n) {
        return static_cast<std::size_t>(
            (static_cast<unsigned __int128>(engine_()) * n) >> 64);
    }

private:
    std::mt19937_64 engine_;
};

std::vector<std::vector<double>> kmeanspp_seed(const Matrix& points, int k, SeededRng& rng) {
    const std::size_t n = points.rows;
    const std::size_t dims = points.cols;
    std::vector<std::vector<double>> centroids;
    centroids.reserve(k);

    std::size_t first = rng.uniform_index(n);
    centroids.emplace_back(points.row(first), points.row(first) + dims);

    std::vector<double> nearest(n);
    for (int c = 1; c < k; ++c) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& centroid : centroids) {
                best = std::min(best,
                                kernels::squared_distance(points.row(i), centroid.data(), dims));
            }
            nearest[i] = best;
            total += best;
        }
        std::size_t chosen;
        if (total <= 0.0) {
            chosen = rng.uniform_index(n);  // all points coincide with a centroid
        } else {
            double r = rng.uniform01() * total;
            double running = 0.0;
            chosen = n - 1;
            for (std::size_t i = 0; i < n; ++i) {
                running += nearest[i];
                if (running >= r) {
                    chosen = i;
                    break;
                }
            }
        }
        centroids.emplace_back(points.row(chosen), points.row(chosen) + dims);
    }
    return centroids;
}

void assign_points(const Matrix& points, const std::vector<std::vector<double>>& centroids,
                   std::vector<int>& assignments) {
    const std::size_t dims = points.cols;
    for (std::size_t i = 0; i < points.rows; ++i) {
        double best = std::numeric_limits<double>::infinity();
        int best_c = 0;
        for (std::size_t c = 0; c < centroids.size(); ++c) {
            double d = kernels::squared_distance(points.row(i), centroids[c].data(), dims);
            if (d < best) {
                best = d;
                best_c = static_cast<int>(c);
            }
        }
        assignments[i] = best_c;
    }
}

// Lloyd iterations on a given seeding; shared by the cold and warm starts.
ClusterModel run_lloyd(const Matrix& points, std::vector<std::vector<double>> centroids,
                       std::uint64_t seed, int max_iter, double tol) {
    const std::size_t n = points.rows;
    const std::size_t dims = points.cols;
    const int k = static_cast<int>(centroids.size());

    ClusterModel model;
    model.k = k;
    model.seed = seed;
    model.assignments.assign(n, 0);

    std::vector<std::vector<double>> sums(k, std::vector<double>(dims, 0.0));
    std::vector<std::size_t> counts(k, 0);

    int iter = 0;
    for (; iter < max_iter; ++iter) {
        assign_points(points, centroids, model.assignments);

        for (auto& s : sums) std::fill(s.begin(), s.end(), 0.0);
        std::fill(counts.begin(), counts.end(), 0);
        for (std::size_t i = 0; i < n; ++i) {
            int c = model.assignments[i];
            kernels::add_row(sums[c].data(), points.row(i), dims);
            ++counts[c];
        }

        // empty cluster: re-seed at the point farthest from its centroid
        for (int c = 0; c < k; ++c) {
            if (counts[c] != 0) continue;
            double worst = -1.0;
            std::size_t farthest = 0;
            for (std::size_t i = 0; i < n; ++i) {
                double d = kernels::squared_distance(
                    points.row(i), centroids[model.assignments[i]].data(), dims);
                if (d > worst) {
                    worst = d;
                    farthest = i;
                }
            }
            int old = model.assignments[farthest];
            model.assignments[farthest] = c;
            counts[c] = 1;
            std::copy_n(points.row(farthest), dims, sums[c].begin());
            --counts[old];
            for (std::size_t d = 0; d < dims; ++d) sums[old][d] -= points.at(farthest, d);
        }

        double shift = 0.0;
        for (int c = 0; c < k; ++c) {
            std::vector<double> updated = sums[c];
            kernels::divide(updated.data(), dims, static_cast<double>(counts[c]));
            shift = std::max(shift,
                             kernels::squared_distance(updated.data(), centroids[c].data(), dims));
            centroids[c] = std::move(updated);
        }
        if (shift < tol * tol) {
            ++iter;
            break;
        }
    }

    // final assignment against the converged centroids
    assign_points(points, centroids, model.assignments);
    model.centroids = std::move(centroids);
    model.iterations_run = iter;
    model.inertia = compute_inertia(points, model);
    return model;
}

}  // namespace

double compute_inertia(const Matrix& points, const ClusterModel& model) {
    double inertia = 0.0;
    for (std::size_t i = 0; i < points.rows; ++i) {
        inertia += kernels::squared_distance(
            points.row(i), model.centroids[model.assignments[i]].data(), points.cols);
    }
    return inertia;
}

ClusterModel kmeans_fit(const Matrix& points, int k, std::uint64_t seed, int max_iter,
                        double tol) {
    if (k <= 0) throw ConfigError("kmeans: k must be positive");
    if (static_cast<std::size_t>(k) > points.rows) {
        throw ConfigError("kmeans: k (" + std::to_string(k) + ") exceeds number of points (" +
                          std::to_string(points.rows) + ")");
    }
    SeededRng rng(seed);
    return run_lloyd(points, kmeanspp_seed(points, k, rng), seed, max_iter, tol);
}

ElbowResult elbow(const Matrix& points, int k_min, int k_max, std::uint64_t seed, int max_iter,
                  double tol) {
    if (k_min < 1 || k_max < k_min || static_cast<std::size_t>(k_max) > points.rows) {
        throw ConfigError("elbow: k range must satisfy 1 <= k_min <= k_max <= n");
    }

    ElbowResult result;
    std::optional<ClusterModel> previous;
    for (int k = k_min; k <= k_max; ++k) {
        ClusterModel fit = kmeans_fit(points, k, seed, max_iter, tol);
        if (previous && fit.inertia > previous->inertia) {
            // warm start: previous centroids plus the farthest point; Lloyd
            // never increases inertia from there
            std::vector<std::vector<double>> centroids = previous->centroids;
            double worst = -1.0;
            std::size_t farthest = 0;
            for (std::size_t i = 0; i < points.rows; ++i) {
                double d = kernels::squared_distance(
                    points.row(i), centroids[previous->assignments[i]].data(), points.cols);
                if (d > worst) {
                    worst = d;
                    farthest = i;
                }
            }
            centroids.emplace_back(points.row(farthest), points.row(farthest) + points.cols);
            ClusterModel warm = run_lloyd(points, std::move(centroids), seed, max_iter, tol);
            if (warm.inertia < fit.inertia) fit = std::move(warm);
        }
        result.curve.push_back({k, fit.inertia});
        previous = std::move(fit);
    }

    // largest discrete second difference; falls back to the smallest k when the
    // range has no interior point
    result.suggested_k = result.curve.front().k;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i + 1 < result.curve.size(); ++i) {
        double d2 = result.curve[i - 1].inertia - 2.0 * result.curve[i].inertia +
                    result.curve[i + 1].inertia;
        if (d2 > best) {
            best = d2;
            result.suggested_k = result.curve[i].k;
        }
    }
    return result;
}

Matrix minmax_scale(const Matrix& points) {
    if (points.rows == 0) throw ConfigError("minmax_scale: empty matrix");
    std::vector<double> mins(points.cols);
    std::vector<double> maxs(points.cols);
    kernels::column_min_max(points.data.data(), points.rows, points.cols, mins.data(),
                            maxs.data());
    std::vector<double> inv(points.cols);
    std::vector<std::uint8_t> invert(points.cols, 0);
    for (std::size_t c = 0; c < points.cols; ++c) {
        double range = maxs[c] - mins[c];
        inv[c] = range > 0.0 ? 1.0 / range : 0.0;
    }
    Matrix out(points.rows, points.cols);
    kernels::minmax_apply(points.data.data(), points.rows, points.cols, mins.data(), inv.data(),
                          invert.data(), out.data.data());
    return out;
}

}  // namespace codai::stats
