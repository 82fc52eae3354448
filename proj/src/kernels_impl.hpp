#pragma once

#include <cstddef>
#include <cstdint>

// Per-backend kernel entry points. Only the dispatcher includes this.

namespace switchstab::kernels::detail {

struct KernelTable {
    void (*mat2_norms)(const double*, const double*, const double*, double*, std::size_t);
    void (*mat2_min_norms)(const double*, const double*, const double*, double*, std::size_t);
    void (*gather_interp_scale)(const double*, const std::int32_t*, const std::int32_t*,
                                const double*, const double*, const double*, double*, std::size_t);
    void (*min_inplace)(double*, const double*, std::size_t);
    double (*max_value)(const double*, std::size_t);
};

const KernelTable& scalar_table();

#if defined(__x86_64__) || defined(_M_X64)
const KernelTable& avx2_table();
#endif
#if defined(__aarch64__)
const KernelTable& neon_table();
#endif

} // namespace switchstab::kernels::detail
