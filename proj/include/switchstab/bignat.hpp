#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace switchstab {

/// Arbitrary-precision unsigned integer with just the operations the orbit
/// arithmetic needs: add, absolute difference, shifts, binary gcd, mod 4,
/// decimal printing. Little-endian 64-bit limbs, no leading zero limbs.
class BigNat {
public:
    BigNat() = default;
    BigNat(std::uint64_t v) { // NOLINT(google-explicit-constructor) small literals read naturally
        if (v) limbs_.push_back(v);
    }

    bool is_zero() const { return limbs_.empty(); }
    bool is_even() const { return limbs_.empty() || (limbs_[0] & 1u) == 0; }
    unsigned mod4() const { return limbs_.empty() ? 0u : static_cast<unsigned>(limbs_[0] & 3u); }

    static int compare(const BigNat& a, const BigNat& b);
    bool operator==(const BigNat& o) const { return limbs_ == o.limbs_; }
    bool operator!=(const BigNat& o) const { return !(*this == o); }
    bool operator<(const BigNat& o) const { return compare(*this, o) < 0; }

    friend BigNat operator+(const BigNat& a, const BigNat& b);
    /// |a - b|
    static BigNat abs_diff(const BigNat& a, const BigNat& b);

    BigNat shifted_left(unsigned bits) const;
    BigNat shifted_right(unsigned bits) const;
    BigNat half() const { return shifted_right(1); }

    static BigNat gcd(BigNat a, BigNat b);

    /// a / b for exact multiples (binary long division); b must divide a.
    static BigNat divide_exact(const BigNat& a, const BigNat& b);

    /// Lowest 64 bits (for small-value checks in tests).
    std::uint64_t low64() const { return limbs_.empty() ? 0 : limbs_[0]; }
    std::size_t bit_length() const;

    std::string to_string() const;

    /// Nearest double (may overflow to inf for huge values).
    double to_double() const;

private:
    std::vector<std::uint64_t> limbs_;

    void trim() {
        while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    }
};

} // namespace switchstab
