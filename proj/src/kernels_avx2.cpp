// AVX2 kernel variants. This TU is compiled with -mavx2; execution is gated
// behind the runtime dispatch, so the rest of the build stays baseline.
// No FMA: operation order matches the scalar kernels bit for bit.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>
#include <cstddef>
#include <cstdint>

#include "kernels_impl.hpp"

namespace switchstab::kernels::detail {
namespace {

inline __m256d norm2_pd(__m256d a, __m256d b, __m256d c, __m256d d, __m256d x, __m256d y) {
    const __m256d u = _mm256_add_pd(_mm256_mul_pd(a, x), _mm256_mul_pd(b, y));
    const __m256d v = _mm256_add_pd(_mm256_mul_pd(c, x), _mm256_mul_pd(d, y));
    return _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(u, u), _mm256_mul_pd(v, v)));
}

void avx2_mat2_norms(const double* m, const double* x, const double* y, double* out, std::size_t n) {
    const __m256d a = _mm256_set1_pd(m[0]), b = _mm256_set1_pd(m[1]);
    const __m256d c = _mm256_set1_pd(m[2]), d = _mm256_set1_pd(m[3]);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d xs = _mm256_loadu_pd(x + i);
        const __m256d ys = _mm256_loadu_pd(y + i);
        _mm256_storeu_pd(out + i, norm2_pd(a, b, c, d, xs, ys));
    }
    for (; i < n; ++i) {
        const double u = m[0] * x[i] + m[1] * y[i];
        const double v = m[2] * x[i] + m[3] * y[i];
        out[i] = std::sqrt(u * u + v * v);
    }
}

void avx2_mat2_min_norms(const double* m, const double* x, const double* y, double* acc, std::size_t n) {
    const __m256d a = _mm256_set1_pd(m[0]), b = _mm256_set1_pd(m[1]);
    const __m256d c = _mm256_set1_pd(m[2]), d = _mm256_set1_pd(m[3]);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d xs = _mm256_loadu_pd(x + i);
        const __m256d ys = _mm256_loadu_pd(y + i);
        const __m256d s = norm2_pd(a, b, c, d, xs, ys);
        _mm256_storeu_pd(acc + i, _mm256_min_pd(_mm256_loadu_pd(acc + i), s));
    }
    for (; i < n; ++i) {
        const double u = m[0] * x[i] + m[1] * y[i];
        const double v = m[2] * x[i] + m[3] * y[i];
        const double s = std::sqrt(u * u + v * v);
        if (s < acc[i]) acc[i] = s;
    }
}

void avx2_gather_interp_scale(const double* tab, const std::int32_t* i0, const std::int32_t* i1,
                              const double* w0, const double* w1, const double* scale,
                              double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m128i idx0 = _mm_loadu_si128(reinterpret_cast<const __m128i*>(i0 + i));
        const __m128i idx1 = _mm_loadu_si128(reinterpret_cast<const __m128i*>(i1 + i));
        const __m256d t0 = _mm256_i32gather_pd(tab, idx0, 8);
        const __m256d t1 = _mm256_i32gather_pd(tab, idx1, 8);
        const __m256d mix = _mm256_add_pd(_mm256_mul_pd(_mm256_loadu_pd(w0 + i), t0),
                                          _mm256_mul_pd(_mm256_loadu_pd(w1 + i), t1));
        _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(scale + i), mix));
    }
    for (; i < n; ++i)
        out[i] = scale[i] * (w0[i] * tab[i0[i]] + w1[i] * tab[i1[i]]);
}

void avx2_min_inplace(double* acc, const double* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(acc + i, _mm256_min_pd(_mm256_loadu_pd(acc + i), _mm256_loadu_pd(b + i)));
    for (; i < n; ++i)
        if (b[i] < acc[i]) acc[i] = b[i];
}

double avx2_max_value(const double* a, std::size_t n) {
    double m = a[0];
    std::size_t i = 0;
    if (n >= 4) {
        __m256d acc = _mm256_loadu_pd(a);
        for (i = 4; i + 4 <= n; i += 4)
            acc = _mm256_max_pd(acc, _mm256_loadu_pd(a + i));
        alignas(32) double lanes[4];
        _mm256_store_pd(lanes, acc);
        m = lanes[0];
        for (int k = 1; k < 4; ++k)
            if (lanes[k] > m) m = lanes[k];
    }
    for (; i < n; ++i)
        if (a[i] > m) m = a[i];
    return m;
}

} // namespace

const KernelTable& avx2_table() {
    static const KernelTable t{avx2_mat2_norms, avx2_mat2_min_norms,
                               avx2_gather_interp_scale, avx2_min_inplace, avx2_max_value};
    return t;
}

} // namespace switchstab::kernels::detail

#endif // x86-64
