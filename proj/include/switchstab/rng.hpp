#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace switchstab {

/// Deterministic RNG: mt19937_64 raw output mapped to doubles by hand, so
/// streams are identical across standard libraries and platforms.
class DetRng {
public:
    explicit DetRng(std::uint64_t seed) : eng_(seed) {}

    double unit() { // [0, 1)
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = unit(), u2 = unit();
        while (u1 <= 0.0) u1 = unit();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    std::uint64_t raw() { return eng_(); }

private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace switchstab
