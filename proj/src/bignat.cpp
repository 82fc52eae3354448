#include "switchstab/bignat.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace switchstab {

int BigNat::compare(const BigNat& a, const BigNat& b) {
    if (a.limbs_.size() != b.limbs_.size())
        return a.limbs_.size() < b.limbs_.size() ? -1 : 1;
    for (std::size_t i = a.limbs_.size(); i-- > 0;) {
        if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] < b.limbs_[i] ? -1 : 1;
    }
    return 0;
}

BigNat operator+(const BigNat& a, const BigNat& b) {
    BigNat out;
    const std::size_t n = std::max(a.limbs_.size(), b.limbs_.size());
    out.limbs_.resize(n, 0);
    unsigned __int128 carry = 0;
    for (std::size_t i = 0; i < n; ++i) {
        unsigned __int128 s = carry;
        if (i < a.limbs_.size()) s += a.limbs_[i];
        if (i < b.limbs_.size()) s += b.limbs_[i];
        out.limbs_[i] = static_cast<std::uint64_t>(s);
        carry = s >> 64;
    }
    if (carry) out.limbs_.push_back(static_cast<std::uint64_t>(carry));
    return out;
}

BigNat BigNat::abs_diff(const BigNat& a, const BigNat& b) {
    const int c = compare(a, b);
    if (c == 0) return BigNat();
    const BigNat& hi = c > 0 ? a : b;
    const BigNat& lo = c > 0 ? b : a;
    BigNat out;
    out.limbs_.resize(hi.limbs_.size(), 0);
    unsigned borrow = 0;
    for (std::size_t i = 0; i < hi.limbs_.size(); ++i) {
        const unsigned __int128 sub =
            static_cast<unsigned __int128>(i < lo.limbs_.size() ? lo.limbs_[i] : 0) + borrow;
        const unsigned __int128 top = hi.limbs_[i];
        if (top >= sub) {
            out.limbs_[i] = static_cast<std::uint64_t>(top - sub);
            borrow = 0;
        } else {
            out.limbs_[i] =
                static_cast<std::uint64_t>((static_cast<unsigned __int128>(1) << 64) + top - sub);
            borrow = 1;
        }
    }
    out.trim();
    return out;
}

std::size_t BigNat::bit_length() const {
    if (limbs_.empty()) return 0;
    std::size_t bits = (limbs_.size() - 1) * 64;
    std::uint64_t top = limbs_.back();
    while (top) {
        ++bits;
        top >>= 1;
    }
    return bits;
}

BigNat BigNat::shifted_left(unsigned bits) const {
    if (is_zero() || bits == 0) return *this;
    const unsigned limb_shift = bits / 64;
    const unsigned bit_shift = bits % 64;
    BigNat out;
    out.limbs_.assign(limbs_.size() + limb_shift + 1, 0);
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        out.limbs_[i + limb_shift] |= bit_shift ? (limbs_[i] << bit_shift) : limbs_[i];
        if (bit_shift) out.limbs_[i + limb_shift + 1] |= limbs_[i] >> (64 - bit_shift);
    }
    out.trim();
    return out;
}

BigNat BigNat::shifted_right(unsigned bits) const {
    if (is_zero() || bits == 0) return *this;
    const unsigned limb_shift = bits / 64;
    const unsigned bit_shift = bits % 64;
    if (limb_shift >= limbs_.size()) return BigNat();
    BigNat out;
    out.limbs_.assign(limbs_.size() - limb_shift, 0);
    for (std::size_t i = 0; i < out.limbs_.size(); ++i) {
        out.limbs_[i] = limbs_[i + limb_shift] >> bit_shift;
        if (bit_shift && i + limb_shift + 1 < limbs_.size())
            out.limbs_[i] |= limbs_[i + limb_shift + 1] << (64 - bit_shift);
    }
    out.trim();
    return out;
}

BigNat BigNat::gcd(BigNat a, BigNat b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    unsigned shift = 0;
    while (a.is_even() && b.is_even()) {
        a = a.shifted_right(1);
        b = b.shifted_right(1);
        ++shift;
    }
    while (a.is_even()) a = a.shifted_right(1);
    while (!b.is_zero()) {
        while (b.is_even()) b = b.shifted_right(1);
        if (compare(a, b) > 0) std::swap(a, b);
        b = abs_diff(b, a);
    }
    return a.shifted_left(shift);
}

BigNat BigNat::divide_exact(const BigNat& a, const BigNat& b) {
    if (b.is_zero()) throw std::invalid_argument("division by zero");
    if (compare(a, b) < 0) return BigNat();
    const std::size_t shift_max = a.bit_length() - b.bit_length();
    BigNat rem = a;
    BigNat quot;
    quot.limbs_.assign(shift_max / 64 + 1, 0);
    for (std::size_t s = shift_max + 1; s-- > 0;) {
        const BigNat shifted = b.shifted_left(static_cast<unsigned>(s));
        if (compare(shifted, rem) <= 0) {
            rem = abs_diff(rem, shifted);
            quot.limbs_[s / 64] |= std::uint64_t{1} << (s % 64);
        }
    }
    quot.trim();
    return quot;
}

std::string BigNat::to_string() const {
    if (is_zero()) return "0";
    std::vector<std::uint64_t> work = limbs_;
    std::string out;
    constexpr std::uint64_t base = 1000000000ull;
    while (!work.empty()) {
        unsigned __int128 rem = 0;
        for (std::size_t i = work.size(); i-- > 0;) {
            unsigned __int128 cur = (rem << 64) | work[i];
            work[i] = static_cast<std::uint64_t>(cur / base);
            rem = cur % base;
        }
        while (!work.empty() && work.back() == 0) work.pop_back();
        std::string chunk = std::to_string(static_cast<std::uint64_t>(rem));
        if (!work.empty())
            chunk = std::string(9 - chunk.size(), '0') + chunk;
        out = chunk + out;
    }
    return out;
}

double BigNat::to_double() const {
    double v = 0.0;
    for (std::size_t i = limbs_.size(); i-- > 0;)
        v = v * 18446744073709551616.0 + static_cast<double>(limbs_[i]);
    return v;
}

} // namespace switchstab
