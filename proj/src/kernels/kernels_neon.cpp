// NEON kernel variants for aarch64. Compiled with -ffp-contract=off. The
// 4-lane squared-distance contract maps onto two 2-wide accumulators: lanes
// (0,1) and (2,3); all other loops mirror the scalar reference per element.

#if defined(__aarch64__)

#include <arm_neon.h>

#include <algorithm>
#include <limits>
#include <vector>

#include "kernels_impl.hpp"

namespace codai::kernels::detail {

namespace {

void neon_column_min_max(const double* data, std::size_t rows, std::size_t cols,
                         double* mins, double* maxs) {
    std::size_t c = 0;
    for (; c + 2 <= cols; c += 2) {
        float64x2_t vmin = vdupq_n_f64(std::numeric_limits<double>::infinity());
        float64x2_t vmax = vdupq_n_f64(-std::numeric_limits<double>::infinity());
        for (std::size_t r = 0; r < rows; ++r) {
            float64x2_t v = vld1q_f64(data + r * cols + c);
            vmin = vminq_f64(vmin, v);
            vmax = vmaxq_f64(vmax, v);
        }
        vst1q_f64(mins + c, vmin);
        vst1q_f64(maxs + c, vmax);
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

void neon_minmax_apply(const double* data, std::size_t rows, std::size_t cols,
                       const double* mins, const double* inv_ranges,
                       const std::uint8_t* invert, double* out) {
    std::vector<std::uint64_t> mask(cols);
    for (std::size_t c = 0; c < cols; ++c) mask[c] = invert[c] ? ~0ULL : 0ULL;
    const float64x2_t ones = vdupq_n_f64(1.0);
    const float64x2_t zeros = vdupq_n_f64(0.0);
    for (std::size_t r = 0; r < rows; ++r) {
        const double* row = data + r * cols;
        double* out_row = out + r * cols;
        std::size_t c = 0;
        for (; c + 2 <= cols; c += 2) {
            float64x2_t v = vld1q_f64(row + c);
            float64x2_t t = vmulq_f64(vsubq_f64(v, vld1q_f64(mins + c)),
                                      vld1q_f64(inv_ranges + c));
            t = vminq_f64(t, ones);
            t = vmaxq_f64(t, zeros);
            float64x2_t flipped = vsubq_f64(ones, t);
            uint64x2_t m = vld1q_u64(mask.data() + c);
            vst1q_f64(out_row + c, vbslq_f64(m, flipped, t));
        }
        for (; c < cols; ++c) {
            double t = (row[c] - mins[c]) * inv_ranges[c];
            t = std::min(t, 1.0);
            t = std::max(t, 0.0);
            out_row[c] = invert[c] ? 1.0 - t : t;
        }
    }
}

double neon_squared_distance(const double* a, const double* b, std::size_t n) {
    float64x2_t acc01 = vdupq_n_f64(0.0);
    float64x2_t acc23 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        float64x2_t d01 = vsubq_f64(vld1q_f64(a + i), vld1q_f64(b + i));
        float64x2_t d23 = vsubq_f64(vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
        acc01 = vaddq_f64(acc01, vmulq_f64(d01, d01));
        acc23 = vaddq_f64(acc23, vmulq_f64(d23, d23));
    }
    double lanes[4] = {vgetq_lane_f64(acc01, 0), vgetq_lane_f64(acc01, 1),
                       vgetq_lane_f64(acc23, 0), vgetq_lane_f64(acc23, 1)};
    for (; i < n; ++i) {
        double d = a[i] - b[i];
        lanes[i % 4] += d * d;
    }
    return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

void neon_add_row(double* acc, const double* row, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        vst1q_f64(acc + i, vaddq_f64(vld1q_f64(acc + i), vld1q_f64(row + i)));
    }
    for (; i < n; ++i) acc[i] += row[i];
}

void neon_scale(double* v, std::size_t n, double factor) {
    const float64x2_t f = vdupq_n_f64(factor);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        vst1q_f64(v + i, vmulq_f64(vld1q_f64(v + i), f));
    }
    for (; i < n; ++i) v[i] *= factor;
}

void neon_divide(double* v, std::size_t n, double divisor) {
    const float64x2_t d = vdupq_n_f64(divisor);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        vst1q_f64(v + i, vdivq_f64(vld1q_f64(v + i), d));
    }
    for (; i < n; ++i) v[i] /= divisor;
}

}  // namespace

const KernelTable& neon_table() {
    static const KernelTable table = {
        neon_column_min_max, neon_minmax_apply, neon_squared_distance,
        neon_add_row,        neon_scale,        neon_divide,
    };
    return table;
}

}  // namespace codai::kernels::detail

#endif  // aarch64
