#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

// Data-parallel inner loops shared by the index and stats modules. Every
// kernel has a scalar reference implementation and SIMD variants selected at
// runtime. The variants are equivalence-tested against the reference and are
// bit-identical to it by construction:
//
//  - column-wise reductions walk rows in order, so each column accumulates in
//    the same sequence on every backend;
//  - elementwise transforms perform the identical IEEE operations per element;
//  - squared_distance uses a fixed 4-lane tree: lane l sums the terms with
//    index i where i mod 4 == l, in ascending i, and the total is
//    (lane0 + lane1) + (lane2 + lane3). No FMA contraction anywhere.
//
// All matrices are row-major, rows x cols doubles, inputs finite (no NaN/inf).

namespace codai::kernels {

enum class Backend { scalar, avx2, neon };

const char* backend_name(Backend backend);

// Backend chosen at first use: the widest available one, unless the
// CODAI_KERNEL_BACKEND environment variable names another available backend.
Backend active_backend();

// Test/benchmark hook. Throws ConfigError when the backend is unavailable.
void force_backend(Backend backend);

std::vector<Backend> available_backends();

// Per-column minima and maxima over all rows. rows >= 1.
void column_min_max(const double* data, std::size_t rows, std::size_t cols,
                    double* mins, double* maxs);

// out[r,c] = clamp01((data[r,c] - mins[c]) * inv_ranges[c]), then 1 - x where
// invert[c] != 0. Degenerate columns pass inv_ranges[c] == 0 so they map to 0.
void minmax_apply(const double* data, std::size_t rows, std::size_t cols,
                  const double* mins, const double* inv_ranges,
                  const std::uint8_t* invert, double* out);

// Sum of squared differences under the 4-lane accumulation contract.
double squared_distance(const double* a, const double* b, std::size_t n);

// acc[i] += row[i]
void add_row(double* acc, const double* row, std::size_t n);

// v[i] *= factor
void scale(double* v, std::size_t n, double factor);

// v[i] /= divisor; exact where multiplying by the reciprocal would not be
void divide(double* v, std::size_t n, double divisor);

}  // namespace codai::kernels
