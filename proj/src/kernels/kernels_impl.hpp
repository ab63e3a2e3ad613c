#pragma once

#include <cstddef>
#include <cstdint>

// Per-backend entry points. Each backend fills one KernelTable; dispatch picks
// a table once at startup. Every implementation must honor the accumulation
// contract documented in kernels.hpp.

namespace codai::kernels::detail {

struct KernelTable {
    void (*column_min_max)(const double*, std::size_t, std::size_t, double*, double*);
    void (*minmax_apply)(const double*, std::size_t, std::size_t, const double*, const double*,
                         const std::uint8_t*, double*);
    double (*squared_distance)(const double*, const double*, std::size_t);
    void (*add_row)(double*, const double*, std::size_t);
    void (*scale)(double*, std::size_t, double);
    void (*divide)(double*, std::size_t, double);
};

const KernelTable& scalar_table();

#if defined(__x86_64__) || defined(_M_X64)
const KernelTable& avx2_table();
bool avx2_supported();
#endif

#if defined(__aarch64__)
const KernelTable& neon_table();
#endif

}  // namespace codai::kernels::detail
