#include "switchstab/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <stdexcept>
#include <string>

#include "kernels_impl.hpp"

namespace switchstab::kernels {
namespace detail {

namespace {

void scalar_mat2_norms(const double* m, const double* x, const double* y, double* out, std::size_t n) {
    const double a = m[0], b = m[1], c = m[2], d = m[3];
    for (std::size_t i = 0; i < n; ++i) {
        const double u = a * x[i] + b * y[i];
        const double v = c * x[i] + d * y[i];
        out[i] = std::sqrt(u * u + v * v);
    }
}

void scalar_mat2_min_norms(const double* m, const double* x, const double* y, double* acc, std::size_t n) {
    const double a = m[0], b = m[1], c = m[2], d = m[3];
    for (std::size_t i = 0; i < n; ++i) {
        const double u = a * x[i] + b * y[i];
        const double v = c * x[i] + d * y[i];
        const double s = std::sqrt(u * u + v * v);
        if (s < acc[i]) acc[i] = s;
    }
}

void scalar_gather_interp_scale(const double* tab, const std::int32_t* i0, const std::int32_t* i1,
                                const double* w0, const double* w1, const double* scale,
                                double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        out[i] = scale[i] * (w0[i] * tab[i0[i]] + w1[i] * tab[i1[i]]);
}

void scalar_min_inplace(double* acc, const double* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        if (b[i] < acc[i]) acc[i] = b[i];
}

double scalar_max_value(const double* a, std::size_t n) {
    double m = a[0];
    for (std::size_t i = 1; i < n; ++i)
        if (a[i] > m) m = a[i];
    return m;
}

} // namespace

const KernelTable& scalar_table() {
    static const KernelTable t{scalar_mat2_norms, scalar_mat2_min_norms,
                               scalar_gather_interp_scale, scalar_min_inplace, scalar_max_value};
    return t;
}

} // namespace detail

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2") != 0;
#else
    return false;
#endif
}

struct Dispatch {
    Backend backend;
    const detail::KernelTable* table;
};

Backend default_backend() {
    if (const char* env = std::getenv("SWITCHSTAB_SIMD")) {
        std::string s(env);
        if (s == "scalar") return Backend::scalar;
        if (s == "avx2" && backend_supported(Backend::avx2)) return Backend::avx2;
        if (s == "neon" && backend_supported(Backend::neon)) return Backend::neon;
        // "auto" or unrecognized falls through to detection
    }
#if defined(__aarch64__)
    return Backend::neon;
#else
    return cpu_has_avx2() ? Backend::avx2 : Backend::scalar;
#endif
}

const detail::KernelTable* table_for(Backend b) {
    switch (b) {
    case Backend::scalar:
        return &detail::scalar_table();
    case Backend::avx2:
#if defined(__x86_64__) || defined(_M_X64)
        return &detail::avx2_table();
#else
        return nullptr;
#endif
    case Backend::neon:
#if defined(__aarch64__)
        return &detail::neon_table();
#else
        return nullptr;
#endif
    }
    return nullptr;
}

Dispatch& dispatch() {
    static Dispatch d = [] {
        Backend b = default_backend();
        return Dispatch{b, table_for(b)};
    }();
    return d;
}

} // namespace

Backend active_backend() { return dispatch().backend; }

bool backend_supported(Backend b) {
    switch (b) {
    case Backend::scalar: return true;
    case Backend::avx2: return cpu_has_avx2();
    case Backend::neon:
#if defined(__aarch64__)
        return true;
#else
        return false;
#endif
    }
    return false;
}

void set_backend(Backend b) {
    if (!backend_supported(b))
        throw std::invalid_argument(std::string("kernel backend not supported on this host: ") + backend_name(b));
    dispatch() = Dispatch{b, table_for(b)};
}

const char* backend_name(Backend b) {
    switch (b) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
    case Backend::neon: return "neon";
    }
    return "?";
}

void mat2_norms(const double m[4], const double* x, const double* y, double* out, std::size_t n) {
    dispatch().table->mat2_norms(m, x, y, out, n);
}

void mat2_min_norms(const double m[4], const double* x, const double* y, double* acc, std::size_t n) {
    dispatch().table->mat2_min_norms(m, x, y, acc, n);
}

void gather_interp_scale(const double* tab, const std::int32_t* i0, const std::int32_t* i1,
                         const double* w0, const double* w1, const double* scale,
                         double* out, std::size_t n) {
    dispatch().table->gather_interp_scale(tab, i0, i1, w0, w1, scale, out, n);
}

void min_inplace(double* acc, const double* b, std::size_t n) {
    dispatch().table->min_inplace(acc, b, n);
}

double max_value(const double* a, std::size_t n) {
    return dispatch().table->max_value(a, n);
}

} // namespace switchstab::kernels
