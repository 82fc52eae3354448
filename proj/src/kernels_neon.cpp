// NEON kernel variants (aarch64). Same operation order as the scalar kernels.

#if defined(__aarch64__)

#include <arm_neon.h>

#include <cmath>
#include <cstddef>
#include <cstdint>

#include "kernels_impl.hpp"

namespace switchstab::kernels::detail {
namespace {

inline float64x2_t norm2_f64(float64x2_t a, float64x2_t b, float64x2_t c, float64x2_t d,
                             float64x2_t x, float64x2_t y) {
    const float64x2_t u = vaddq_f64(vmulq_f64(a, x), vmulq_f64(b, y));
    const float64x2_t v = vaddq_f64(vmulq_f64(c, x), vmulq_f64(d, y));
    return vsqrtq_f64(vaddq_f64(vmulq_f64(u, u), vmulq_f64(v, v)));
}

void neon_mat2_norms(const double* m, const double* x, const double* y, double* out, std::size_t n) {
    const float64x2_t a = vdupq_n_f64(m[0]), b = vdupq_n_f64(m[1]);
    const float64x2_t c = vdupq_n_f64(m[2]), d = vdupq_n_f64(m[3]);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        vst1q_f64(out + i, norm2_f64(a, b, c, d, vld1q_f64(x + i), vld1q_f64(y + i)));
    for (; i < n; ++i) {
        const double u = m[0] * x[i] + m[1] * y[i];
        const double v = m[2] * x[i] + m[3] * y[i];
        out[i] = std::sqrt(u * u + v * v);
    }
}

void neon_mat2_min_norms(const double* m, const double* x, const double* y, double* acc, std::size_t n) {
    const float64x2_t a = vdupq_n_f64(m[0]), b = vdupq_n_f64(m[1]);
    const float64x2_t c = vdupq_n_f64(m[2]), d = vdupq_n_f64(m[3]);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t s = norm2_f64(a, b, c, d, vld1q_f64(x + i), vld1q_f64(y + i));
        vst1q_f64(acc + i, vminq_f64(vld1q_f64(acc + i), s));
    }
    for (; i < n; ++i) {
        const double u = m[0] * x[i] + m[1] * y[i];
        const double v = m[2] * x[i] + m[3] * y[i];
        const double s = std::sqrt(u * u + v * v);
        if (s < acc[i]) acc[i] = s;
    }
}

void neon_gather_interp_scale(const double* tab, const std::int32_t* i0, const std::int32_t* i1,
                              const double* w0, const double* w1, const double* scale,
                              double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t t0 = {tab[i0[i]], tab[i0[i + 1]]};
        const float64x2_t t1 = {tab[i1[i]], tab[i1[i + 1]]};
        const float64x2_t mix = vaddq_f64(vmulq_f64(vld1q_f64(w0 + i), t0),
                                          vmulq_f64(vld1q_f64(w1 + i), t1));
        vst1q_f64(out + i, vmulq_f64(vld1q_f64(scale + i), mix));
    }
    for (; i < n; ++i)
        out[i] = scale[i] * (w0[i] * tab[i0[i]] + w1[i] * tab[i1[i]]);
}

void neon_min_inplace(double* acc, const double* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        vst1q_f64(acc + i, vminq_f64(vld1q_f64(acc + i), vld1q_f64(b + i)));
    for (; i < n; ++i)
        if (b[i] < acc[i]) acc[i] = b[i];
}

double neon_max_value(const double* a, std::size_t n) {
    double m = a[0];
    std::size_t i = 0;
    if (n >= 2) {
        float64x2_t acc = vld1q_f64(a);
        for (i = 2; i + 2 <= n; i += 2)
            acc = vmaxq_f64(acc, vld1q_f64(a + i));
        m = vgetq_lane_f64(acc, 0);
        const double hi = vgetq_lane_f64(acc, 1);
        if (hi > m) m = hi;
    }
    for (; i < n; ++i)
        if (a[i] > m) m = a[i];
    return m;
}

} // namespace

const KernelTable& neon_table() {
    static const KernelTable t{neon_mat2_norms, neon_mat2_min_norms,
                               neon_gather_interp_scale, neon_min_inplace, neon_max_value};
    return t;
}

} // namespace switchstab::kernels::detail

#endif // aarch64
