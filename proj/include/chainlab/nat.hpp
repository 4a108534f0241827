#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace chainlab {

/// Arbitrary-precision unsigned integer on little-endian 64-bit limbs.
///
/// Chain values are dense runs of binary ones (2^a - 2^b and friends), so
/// limbs stay small even at the top of the desk-scale range (2^8192 is 128
/// limbs). All arithmetic is exact; decimal conversion happens only at I/O
/// boundaries.
class Nat {
public:
    Nat() = default;
    Nat(uint64_t v) {
        if (v != 0) limbs_.push_back(v);
    }

    /// 2^e
    static Nat pow2(size_t e) {
        Nat r;
        r.limbs_.assign(e / 64 + 1, 0);
        r.limbs_.back() = uint64_t{1} << (e % 64);
        return r;
    }

    /// 2^hi - 2^lo (bits [lo, hi) set). Requires hi >= lo.
    static Nat ones_run(size_t hi, size_t lo) {
        if (hi < lo) throw std::invalid_argument("ones_run: hi < lo");
        if (hi == lo) return Nat{};
        Nat r;
        r.limbs_.assign((hi - 1) / 64 + 1, 0);
        for (size_t w = lo / 64; w < r.limbs_.size(); ++w) {
            uint64_t mask = ~uint64_t{0};
            if (w == lo / 64) mask &= ~uint64_t{0} << (lo % 64);
            if (w == (hi - 1) / 64 && hi % 64 != 0)
                mask &= ~uint64_t{0} >> (64 - hi % 64);
            r.limbs_[w] = mask;
        }
        return r;
    }

    static Nat from_decimal(std::string_view s);

    bool is_zero() const { return limbs_.empty(); }

    /// Number of bits; 0 for zero.
    size_t bit_length() const {
        if (limbs_.empty()) return 0;
        size_t bits = 64;
        uint64_t top = limbs_.back();
        while ((top & (uint64_t{1} << 63)) == 0) {
            top <<= 1;
            --bits;
        }
        return (limbs_.size() - 1) * 64 + bits;
    }

    size_t popcount() const {
        size_t c = 0;
        for (uint64_t w : limbs_) c += static_cast<size_t>(__builtin_popcountll(w));
        return c;
    }

    bool bit(size_t i) const {
        size_t w = i / 64;
        if (w >= limbs_.size()) return false;
        return (limbs_[w] >> (i % 64)) & 1;
    }

    bool fits_u64() const { return limbs_.size() <= 1; }

    uint64_t to_u64() const {
        if (limbs_.size() > 1) throw std::overflow_error("Nat::to_u64: value too large");
        return limbs_.empty() ? 0 : limbs_[0];
    }

    std::string to_decimal() const;

    Nat operator+(const Nat& o) const {
        const Nat& a = limbs_.size() >= o.limbs_.size() ? *this : o;
        const Nat& b = limbs_.size() >= o.limbs_.size() ? o : *this;
        Nat r;
        r.limbs_.resize(a.limbs_.size() + 1, 0);
        unsigned __int128 carry = 0;
        for (size_t i = 0; i < a.limbs_.size(); ++i) {
            unsigned __int128 s = carry + a.limbs_[i] + (i < b.limbs_.size() ? b.limbs_[i] : 0);
            r.limbs_[i] = static_cast<uint64_t>(s);
            carry = s >> 64;
        }
        r.limbs_.back() = static_cast<uint64_t>(carry);
        r.trim();
        return r;
    }

    /// Requires *this >= o.
    Nat operator-(const Nat& o) const {
        if (*this < o) throw std::underflow_error("Nat::operator-: negative result");
        Nat r;
        r.limbs_.resize(limbs_.size(), 0);
        int64_t borrow = 0;
        for (size_t i = 0; i < limbs_.size(); ++i) {
            unsigned __int128 lhs = limbs_[i];
            unsigned __int128 rhs = (i < o.limbs_.size() ? o.limbs_[i] : 0) + static_cast<unsigned __int128>(borrow);
            if (lhs >= rhs) {
                r.limbs_[i] = static_cast<uint64_t>(lhs - rhs);
                borrow = 0;
            } else {
                r.limbs_[i] = static_cast<uint64_t>((lhs + (static_cast<unsigned __int128>(1) << 64)) - rhs);
                borrow = 1;
            }
        }
        r.trim();
        return r;
    }

    Nat operator*(const Nat& o) const {
        if (is_zero() || o.is_zero()) return Nat{};
        Nat r;
        r.limbs_.assign(limbs_.size() + o.limbs_.size(), 0);
        for (size_t i = 0; i < limbs_.size(); ++i) {
            unsigned __int128 carry = 0;
            for (size_t j = 0; j < o.limbs_.size(); ++j) {
                unsigned __int128 cur = static_cast<unsigned __int128>(limbs_[i]) * o.limbs_[j] +
                                        r.limbs_[i + j] + carry;
                r.limbs_[i + j] = static_cast<uint64_t>(cur);
                carry = cur >> 64;
            }
            size_t k = i + o.limbs_.size();
            while (carry != 0) {
                unsigned __int128 cur = carry + r.limbs_[k];
                r.limbs_[k] = static_cast<uint64_t>(cur);
                carry = cur >> 64;
                ++k;
            }
        }
        r.trim();
        return r;
    }

    Nat operator<<(size_t k) const {
        if (is_zero() || k == 0) return *this;
        size_t words = k / 64, bits = k % 64;
        Nat r;
        r.limbs_.assign(limbs_.size() + words + 1, 0);
        for (size_t i = 0; i < limbs_.size(); ++i) {
            r.limbs_[i + words] |= limbs_[i] << bits;
            if (bits != 0) r.limbs_[i + words + 1] |= limbs_[i] >> (64 - bits);
        }
        r.trim();
        return r;
    }

    std::strong_ordering operator<=>(const Nat& o) const {
        if (limbs_.size() != o.limbs_.size())
            return limbs_.size() <=> o.limbs_.size();
        for (size_t i = limbs_.size(); i-- > 0;) {
            if (limbs_[i] != o.limbs_[i]) return limbs_[i] <=> o.limbs_[i];
        }
        return std::strong_ordering::equal;
    }
    bool operator==(const Nat& o) const = default;

private:
    std::vector<uint64_t> limbs_;  // little-endian, no trailing zero limb; empty == 0

    void trim() {
        while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    }
};

}  // namespace chainlab
