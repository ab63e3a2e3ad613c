#include "codai/kernels/kernels.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <string>

#include "codai/errors.hpp"
#include "kernels_impl.hpp"

namespace codai::kernels {

namespace detail {

namespace {

void scalar_column_min_max(const double* data, std::size_t rows, std::size_t cols,
                           double* mins, double* maxs) {
    for (std::size_t c = 0; c < cols; ++c) {
        mins[c] = std::numeric_limits<double>::infinity();
        maxs[c] = -std::numeric_limits<double>::infinity();
    }
    for (std::size_t r = 0; r < rows; ++r) {
        const double* row = data + r * cols;
        for (std::size_t c = 0; c < cols; ++c) {
            mins[c] = std::min(mins[c], row[c]);
            maxs[c] = std::max(maxs[c], row[c]);
        }
    }
}

void scalar_minmax_apply(const double* data, std::size_t rows, std::size_t cols,
                         const double* mins, const double* inv_ranges,
                         const std::uint8_t* invert, double* out) {
    for (std::size_t r = 0; r < rows; ++r) {
        const double* row = data + r * cols;
        double* out_row = out + r * cols;
        for (std::size_t c = 0; c < cols; ++c) {
            double t = (row[c] - mins[c]) * inv_ranges[c];
            t = std::min(t, 1.0);
            t = std::max(t, 0.0);
            out_row[c] = invert[c] ? 1.0 - t : t;
        }
    }
}

double scalar_squared_distance(const double* a, const double* b, std::size_t n) {
    double lane0 = 0.0, lane1 = 0.0, lane2 = 0.0, lane3 = 0.0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        double d0 = a[i] - b[i];
        double d1 = a[i + 1] - b[i + 1];
        double d2 = a[i + 2] - b[i + 2];
        double d3 = a[i + 3] - b[i + 3];
        lane0 += d0 * d0;
        lane1 += d1 * d1;
        lane2 += d2 * d2;
        lane3 += d3 * d3;
    }
    double* lanes[4] = {&lane0, &lane1, &lane2, &lane3};
    for (; i < n; ++i) {
        double d = a[i] - b[i];
        *lanes[i % 4] += d * d;
    }
    return (lane0 + lane1) + (lane2 + lane3);
}

void scalar_add_row(double* acc, const double* row, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) acc[i] += row[i];
}

void scalar_scale(double* v, std::size_t n, double factor) {
    for (std::size_t i = 0; i < n; ++i) v[i] *= factor;
}

void scalar_divide(double* v, std::size_t n, double divisor) {
    for (std::size_t i = 0; i < n; ++i) v[i] /= divisor;
}

}  // namespace

const KernelTable& scalar_table() {
    static const KernelTable table = {
        scalar_column_min_max, scalar_minmax_apply, scalar_squared_distance,
        scalar_add_row,        scalar_scale,      scalar_divide,
    };
    return table;
}

}  // namespace detail

namespace {

const detail::KernelTable* g_table = nullptr;
Backend g_backend = Backend::scalar;

bool backend_available(Backend backend) {
    switch (backend) {
        case Backend::scalar:
            return true;
        case Backend::avx2:
#if defined(__x86_64__) || defined(_M_X64)
            return detail::avx2_supported();
#else
            return false;
#endif
        case Backend::neon:
#if defined(__aarch64__)
            return true;
#else
            return false;
#endif
    }
    return false;
}

const detail::KernelTable& table_for(Backend backend) {
    switch (backend) {
        case Backend::scalar:
            return detail::scalar_table();
        case Backend::avx2:
#if defined(__x86_64__) || defined(_M_X64)
            return detail::avx2_table();
#else
            break;
#endif
        case Backend::neon:
#if defined(__aarch64__)
            return detail::neon_table();
#else
            break;
#endif
    }
    throw ConfigError(std::string("kernel backend not available on this platform: ") +
                      backend_name(backend));
}

Backend pick_backend() {
    if (const char* env = std::getenv("CODAI_KERNEL_BACKEND")) {
        std::string name(env);
        for (Backend b : {Backend::scalar, Backend::avx2, Backend::neon}) {
            if (name == backend_name(b)) {
                if (!backend_available(b)) {
                    throw ConfigError("CODAI_KERNEL_BACKEND names unavailable backend: " + name);
                }
                return b;
            }
        }
        throw ConfigError("unknown CODAI_KERNEL_BACKEND value: " + name);
    }
    if (backend_available(Backend::avx2)) return Backend::avx2;
    if (backend_available(Backend::neon)) return Backend::neon;
    return Backend::scalar;
}

void ensure_initialized() {
    if (g_table == nullptr) {
        g_backend = pick_backend();
        g_table = &table_for(g_backend);
    }
}

}  // namespace

const char* backend_name(Backend backend) {
    switch (backend) {
        case Backend::scalar: return "scalar";
        case Backend::avx2: return "avx2";
        case Backend::neon: return "neon";
    }
    return "unknown";
}

Backend active_backend() {
    ensure_initialized();
    return g_backend;
}

void force_backend(Backend backend) {
    if (!backend_available(backend)) {
        throw ConfigError(std::string("kernel backend not available: ") + backend_name(backend));
    }
    g_backend = backend;
    g_table = &table_for(backend);
}

std::vector<Backend> available_backends() {
    std::vector<Backend> out;
    for (Backend b : {Backend::scalar, Backend::avx2, Backend::neon}) {
        if (backend_available(b)) out.push_back(b);
    }
    return out;
}

void column_min_max(const double* data, std::size_t rows, std::size_t cols, double* mins,
                    double* maxs) {
    ensure_initialized();
    g_table->column_min_max(data, rows, cols, mins, maxs);
}

void minmax_apply(const double* data, std::size_t rows, std::size_t cols, const double* mins,
                  const double* inv_ranges, const std::uint8_t* invert, double* out) {
    ensure_initialized();
    g_table->minmax_apply(data, rows, cols, mins, inv_ranges, invert, out);
}

double squared_distance(const double* a, const double* b, std::size_t n) {
    ensure_initialized();
    return g_table->squared_distance(a, b, n);
}

void add_row(double* acc, const double* row, std::size_t n) {
    ensure_initialized();
    g_table->add_row(acc, row, n);
}

void scale(double* v, std::size_t n, double factor) {
    ensure_initialized();
    g_table->scale(v, n, factor);
}

void divide(double* v, std::size_t n, double divisor) {
    ensure_initialized();
    g_table->divide(v, n, divisor);
}

}  // namespace codai::kernels
