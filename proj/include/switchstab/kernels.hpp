#pragma once

#include <cstddef>
#include <cstdint>

// Data-parallel inner loops shared by the grid sweeps (direction norms,
// Bellman gather-interpolate updates). Scalar reference implementations and
// SIMD variants (AVX2 on x86-64, NEON on aarch64) are selected at runtime;
// all variants use the same operation order, so results are bit-identical
// across backends (kernel translation units are built with fp-contract off).

namespace switchstab::kernels {

enum class Backend { scalar, avx2, neon };

/// Backend chosen at startup: SWITCHSTAB_SIMD=scalar|avx2|neon|auto overrides
/// the default (best supported).
Backend active_backend();
bool backend_supported(Backend b);
void set_backend(Backend b); // throws std::invalid_argument if unsupported
const char* backend_name(Backend b);

/// out[i] = | M * (x[i], y[i]) |  for a row-major 2x2 matrix m[4].
void mat2_norms(const double m[4], const double* x, const double* y, double* out, std::size_t n);

/// acc[i] = min(acc[i], | M * (x[i], y[i]) |).
void mat2_min_norms(const double m[4], const double* x, const double* y, double* acc, std::size_t n);

/// out[i] = scale[i] * (w0[i] * tab[i0[i]] + w1[i] * tab[i1[i]]).
/// Indices must be in range; i0/i1 are 32-bit to match gather instructions.
void gather_interp_scale(const double* tab, const std::int32_t* i0, const std::int32_t* i1,
                         const double* w0, const double* w1, const double* scale,
                         double* out, std::size_t n);

/// acc[i] = min(acc[i], b[i]).
void min_inplace(double* acc, const double* b, std::size_t n);

/// Maximum element; n must be >= 1.
double max_value(const double* a, std::size_t n);

} // namespace switchstab::kernels
