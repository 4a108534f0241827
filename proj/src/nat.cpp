#include "chainlab/nat.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace chainlab {

namespace {
constexpr uint64_t kDecChunkBase = 10'000'000'000'000'000'000ull;  // 10^19
constexpr int kDecChunkDigits = 19;
}  // namespace

Nat Nat::from_decimal(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("Nat::from_decimal: empty string");
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw std::invalid_argument("Nat::from_decimal: non-digit character");
    }
    Nat r;
    size_t pos = 0;
    while (pos < s.size()) {
        size_t take = std::min<size_t>(kDecChunkDigits, s.size() - pos);
        uint64_t chunk = 0, scale = 1;
        for (size_t i = 0; i < take; ++i) {
            chunk = chunk * 10 + static_cast<uint64_t>(s[pos + i] - '0');
            scale *= 10;
        }
        // r = r * scale + chunk
        unsigned __int128 carry = chunk;
        for (size_t i = 0; i < r.limbs_.size(); ++i) {
            unsigned __int128 cur = static_cast<unsigned __int128>(r.limbs_[i]) * scale + carry;
            r.limbs_[i] = static_cast<uint64_t>(cur);
            carry = cur >> 64;
        }
        while (carry != 0) {
            r.limbs_.push_back(static_cast<uint64_t>(carry));
            carry >>= 64;
        }
        pos += take;
    }
    r.trim();
    return r;
}

std::string Nat::to_decimal() const {
    if (is_zero()) return "0";
    std::vector<uint64_t> work = limbs_;
    std::vector<uint64_t> chunks;
    while (!work.empty()) {
        unsigned __int128 rem = 0;
        for (size_t i = work.size(); i-- > 0;) {
            unsigned __int128 cur = (rem << 64) | work[i];
            work[i] = static_cast<uint64_t>(cur / kDecChunkBase);
            rem = cur % kDecChunkBase;
        }
        while (!work.empty() && work.back() == 0) work.pop_back();
        chunks.push_back(static_cast<uint64_t>(rem));
    }
    std::string out = std::to_string(chunks.back());
    for (size_t i = chunks.size() - 1; i-- > 0;) {
        std::string part = std::to_string(chunks[i]);
        out.append(kDecChunkDigits - part.size(), '0');
        out += part;
    }
    return out;
}

}  // namespace chainlab
