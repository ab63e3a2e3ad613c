// AVX2 kernel variants. Compiled with -mavx2 -ffp-contract=off; every loop
// mirrors the scalar reference's accumulation order exactly (see kernels.hpp),
// so outputs are bit-identical to the scalar backend.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <algorithm>
#include <cstring>
#include <limits>
#include <vector>

#include "kernels_impl.hpp"

namespace codai::kernels::detail {

namespace {

void avx2_column_min_max(const double* data, std::size_t rows, std::size_t cols,
                         double* mins, double* maxs) {
    std::size_t c = 0;
    for (; c + 4 <= cols; c += 4) {
        __m256d vmin = _mm256_set1_pd(std::numeric_limits<double>::infinity());
        __m256d vmax = _mm256_set1_pd(-std::numeric_limits<double>::infinity());
        for (std::size_t r = 0; r < rows; ++r) {
            __m256d v = _mm256_loadu_pd(data + r * cols + c);
            vmin = _mm256_min_pd(vmin, v);
            vmax = _mm256_max_pd(vmax, v);
        }
        _mm256_storeu_pd(mins + c, vmin);
        _mm256_storeu_pd(maxs + c, vmax);
    }
    for (; c < cols; ++c) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        for (std::size_t r = 0; r < rows; ++r) {
            double v = data[r * cols + c];
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        mins[c] = lo;
        maxs[c] = hi;
    }
}

void avx2_minmax_apply(const double* data, std::size_t rows, std::size_t cols,
                       const double* mins, const double* inv_ranges,
                       const std::uint8_t* invert, double* out) {
    // blendv selects by sign bit; build an all-bits mask per inverted column
    std::vector<double> mask(cols);
    for (std::size_t c = 0; c < cols; ++c) {
        std::uint64_t bits = invert[c] ? ~0ULL : 0ULL;
        std::memcpy(&mask[c], &bits, sizeof(double));
    }
    const __m256d ones = _mm256_set1_pd(1.0);
    const __m256d zeros = _mm256_setzero_pd();
    for (std::size_t r = 0; r < rows; ++r) {
        const double* row = data + r * cols;
        double* out_row = out + r * cols;
        std::size_t c = 0;
        for (; c + 4 <= cols; c += 4) {
            __m256d v = _mm256_loadu_pd(row + c);
            __m256d t = _mm256_mul_pd(_mm256_sub_pd(v, _mm256_loadu_pd(mins + c)),
                                      _mm256_loadu_pd(inv_ranges + c));
            t = _mm256_min_pd(t, ones);
            t = _mm256_max_pd(t, zeros);
            __m256d flipped = _mm256_sub_pd(ones, t);
            __m256d m = _mm256_loadu_pd(mask.data() + c);
            _mm256_storeu_pd(out_row + c, _mm256_blendv_pd(t, flipped, m));
        }
        for (; c < cols; ++c) {
            double t = (row[c] - mins[c]) * inv_ranges[c];
            t = std::min(t, 1.0);
            t = std::max(t, 0.0);
            out_row[c] = invert[c] ? 1.0 - t : t;
        }
    }
}

double avx2_squared_distance(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    for (; i < n; ++i) {
        double d = a[i] - b[i];
        lanes[i % 4] += d * d;
    }
    return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

void avx2_add_row(double* acc, const double* row, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_add_pd(_mm256_loadu_pd(acc + i), _mm256_loadu_pd(row + i));
        _mm256_storeu_pd(acc + i, v);
    }
    for (; i < n; ++i) acc[i] += row[i];
}

void avx2_scale(double* v, std::size_t n, double factor) {
    const __m256d f = _mm256_set1_pd(factor);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(v + i, _mm256_mul_pd(_mm256_loadu_pd(v + i), f));
    }
    for (; i < n; ++i) v[i] *= factor;
}

void avx2_divide(double* v, std::size_t n, double divisor) {
    const __m256d d = _mm256_set1_pd(divisor);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(v + i, _mm256_div_pd(_mm256_loadu_pd(v + i), d));
    }
    for (; i < n; ++i) v[i] /= divisor;
}

}  // namespace

bool avx2_supported() {
    return __builtin_cpu_supports("avx2") != 0;
}

const KernelTable& avx2_table() {
    static const KernelTable table = {
        avx2_column_min_max, avx2_minmax_apply, avx2_squared_distance,
        avx2_add_row,        avx2_scale,        avx2_divide,
    };
    return table;
}

}  // namespace codai::kernels::detail

#endif  // x86_64
