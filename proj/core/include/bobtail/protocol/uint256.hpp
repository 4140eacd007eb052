#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bobtail::protocol {

__extension__ using uint128_t = unsigned __int128;

/// Unsigned integer of 64*Limbs bits, little-endian limbs. Arithmetic wraps
/// modulo 2^(64*Limbs) unless stated otherwise.
template <std::size_t Limbs>
class BigUint {
public:
    static constexpr std::size_t kBits = 64 * Limbs;
    static constexpr std::size_t kBytes = 8 * Limbs;

    constexpr BigUint() noexcept = default;
    constexpr BigUint(std::uint64_t low) noexcept { limbs_[0] = low; }

    static constexpr BigUint max() noexcept
    {
        BigUint r;
        r.limbs_.fill(~std::uint64_t{0});
        return r;
    }

    constexpr std::uint64_t limb(std::size_t i) const noexcept { return limbs_[i]; }
    constexpr void set_limb(std::size_t i, std::uint64_t v) noexcept { limbs_[i] = v; }

    constexpr bool is_zero() const noexcept
    {
        return std::all_of(limbs_.begin(), limbs_.end(), [](std::uint64_t l) { return l == 0; });
    }

    /// Number of significant bits.
    constexpr std::size_t bits() const noexcept
    {
        for (std::size_t i = Limbs; i-- > 0;) {
            if (limbs_[i] != 0)
                return 64 * i + (64 - static_cast<std::size_t>(std::countl_zero(limbs_[i])));
        }
        return 0;
    }

    friend constexpr bool operator==(const BigUint&, const BigUint&) noexcept = default;

    friend constexpr std::strong_ordering operator<=>(const BigUint& a, const BigUint& b) noexcept
    {
        for (std::size_t i = Limbs; i-- > 0;) {
            if (a.limbs_[i] != b.limbs_[i])
                return a.limbs_[i] <=> b.limbs_[i];
        }
        return std::strong_ordering::equal;
    }

    constexpr BigUint& operator+=(const BigUint& o) noexcept
    {
        uint128_t carry = 0;
        for (std::size_t i = 0; i < Limbs; ++i) {
            carry += static_cast<uint128_t>(limbs_[i]) + o.limbs_[i];
            limbs_[i] = static_cast<std::uint64_t>(carry);
            carry >>= 64;
        }
        return *this;
    }

    constexpr BigUint& operator-=(const BigUint& o) noexcept
    {
        std::uint64_t borrow = 0;
        for (std::size_t i = 0; i < Limbs; ++i) {
            const std::uint64_t a = limbs_[i];
            const std::uint64_t d = a - o.limbs_[i] - borrow;
            borrow = (a < o.limbs_[i] || (a == o.limbs_[i] && borrow)) ? 1 : 0;
            limbs_[i] = d;
        }
        return *this;
    }

    constexpr BigUint& operator*=(std::uint64_t m) noexcept
    {
        uint128_t carry = 0;
        for (std::size_t i = 0; i < Limbs; ++i) {
            carry += static_cast<uint128_t>(limbs_[i]) * m;
            limbs_[i] = static_cast<std::uint64_t>(carry);
            carry >>= 64;
        }
        return *this;
    }

    /// Truncating division by a nonzero 64-bit divisor.
    constexpr BigUint& operator/=(std::uint64_t d)
    {
        if (d == 0)
            throw std::domain_error("BigUint: division by zero");
        uint128_t rem = 0;
        for (std::size_t i = Limbs; i-- > 0;) {
            rem = (rem << 64) | limbs_[i];
            limbs_[i] = static_cast<std::uint64_t>(rem / d);
            rem %= d;
        }
        return *this;
    }

    constexpr std::uint64_t mod(std::uint64_t d) const
    {
        if (d == 0)
            throw std::domain_error("BigUint: modulo by zero");
        uint128_t rem = 0;
        for (std::size_t i = Limbs; i-- > 0;)
            rem = ((rem << 64) | limbs_[i]) % d;
        return static_cast<std::uint64_t>(rem);
    }

    constexpr BigUint& operator<<=(unsigned n) noexcept
    {
        if (n >= kBits) {
            limbs_.fill(0);
            return *this;
        }
        const std::size_t words = n / 64;
        const unsigned shift = n % 64;
        for (std::size_t i = Limbs; i-- > 0;) {
            std::uint64_t v = i >= words ? limbs_[i - words] << shift : 0;
            if (shift && i >= words + 1)
                v |= limbs_[i - words - 1] >> (64 - shift);
            limbs_[i] = v;
        }
        return *this;
    }

    constexpr BigUint& operator>>=(unsigned n) noexcept
    {
        if (n >= kBits) {
            limbs_.fill(0);
            return *this;
        }
        const std::size_t words = n / 64;
        const unsigned shift = n % 64;
        for (std::size_t i = 0; i < Limbs; ++i) {
            std::uint64_t v = i + words < Limbs ? limbs_[i + words] >> shift : 0;
            if (shift && i + words + 1 < Limbs)
                v |= limbs_[i + words + 1] << (64 - shift);
            limbs_[i] = v;
        }
        return *this;
    }

    friend constexpr BigUint operator+(BigUint a, const BigUint& b) noexcept { return a += b; }
    friend constexpr BigUint operator-(BigUint a, const BigUint& b) noexcept { return a -= b; }
    friend constexpr BigUint operator*(BigUint a, std::uint64_t m) noexcept { return a *= m; }
    friend constexpr BigUint operator/(BigUint a, std::uint64_t d) { return a /= d; }
    friend constexpr BigUint operator<<(BigUint a, unsigned n) noexcept { return a <<= n; }
    friend constexpr BigUint operator>>(BigUint a, unsigned n) noexcept { return a >>= n; }

    /// Zero-extends or truncates to another width.
    template <std::size_t Other>
    constexpr BigUint<Other> resize() const noexcept
    {
        BigUint<Other> r;
        for (std::size_t i = 0; i < std::min(Limbs, Other); ++i)
            r.set_limb(i, limbs_[i]);
        return r;
    }

    /// True when the value fits in `Other` limbs.
    template <std::size_t Other>
    constexpr bool fits() const noexcept
    {
        for (std::size_t i = Other; i < Limbs; ++i) {
            if (limbs_[i] != 0)
                return false;
        }
        return true;
    }

    double to_double() const noexcept
    {
        double r = 0.0;
        for (std::size_t i = Limbs; i-- > 0;)
            r = r * 18446744073709551616.0 + static_cast<double>(limbs_[i]);
        return r;
    }

    /// Little-endian byte image.
    std::array<std::uint8_t, kBytes> to_bytes() const noexcept
    {
        std::array<std::uint8_t, kBytes> out{};
        for (std::size_t i = 0; i < Limbs; ++i) {
            for (std::size_t b = 0; b < 8; ++b)
                out[8 * i + b] = static_cast<std::uint8_t>(limbs_[i] >> (8 * b));
        }
        return out;
    }

    static BigUint from_bytes(std::span<const std::uint8_t> bytes)
    {
        if (bytes.size() != kBytes)
            throw std::invalid_argument("BigUint::from_bytes: wrong length");
        BigUint r;
        for (std::size_t i = 0; i < Limbs; ++i) {
            std::uint64_t v = 0;
            for (std::size_t b = 0; b < 8; ++b)
                v |= static_cast<std::uint64_t>(bytes[8 * i + b]) << (8 * b);
            r.limbs_[i] = v;
        }
        return r;
    }

    /// Big-endian hexadecimal, zero-padded to full width.
    std::string to_hex() const
    {
        static constexpr char digits[] = "0123456789abcdef";
        std::string s;
        s.reserve(2 * kBytes);
        for (std::size_t i = Limbs; i-- > 0;) {
            for (int nib = 15; nib >= 0; --nib)
                s += digits[(limbs_[i] >> (4 * nib)) & 0xf];
        }
        return s;
    }

    /// Parses big-endian hexadecimal with an optional 0x prefix.
    static BigUint from_hex(std::string_view hex)
    {
        if (hex.starts_with("0x") || hex.starts_with("0X"))
            hex.remove_prefix(2);
        if (hex.empty() || hex.size() > 2 * kBytes)
            throw std::invalid_argument("BigUint::from_hex: bad length");
        BigUint r;
        for (char c : hex) {
            unsigned v;
            if (c >= '0' && c <= '9')
                v = static_cast<unsigned>(c - '0');
            else if (c >= 'a' && c <= 'f')
                v = static_cast<unsigned>(c - 'a' + 10);
            else if (c >= 'A' && c <= 'F')
                v = static_cast<unsigned>(c - 'A' + 10);
            else
                throw std::invalid_argument("BigUint::from_hex: bad digit");
            r <<= 4;
            r.limbs_[0] |= v;
        }
        return r;
    }

private:
    std::array<std::uint64_t, Limbs> limbs_{};
};

using Uint256 = BigUint<4>;
using Uint320 = BigUint<5>;

} // namespace bobtail::protocol
