#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "chainlab/chain.hpp"

namespace chainlab {

/// A constructed chain plus its length accounting: base sub-chain, terms the
/// construction officially adjoins, and filler steps the implementation adds
/// to complete it. base_length + adjoined_count + filler_count == length.
struct ConstructionOutcome {
    AdditionChain chain;
    int64_t adjoined_count = 0;
    int64_t filler_count = 0;
    std::string method;

    int64_t base_length() const {
        return static_cast<int64_t>(chain.length()) - adjoined_count - filler_count;
    }
};

/// Doubling chain for 2^n, length exactly n. n >= 0.
AdditionChain power_chain(uint64_t n);

/// Doubling chain plus one step for 2^n + 1, length exactly n + 1. n >= 1.
AdditionChain power_plus_one_chain(uint64_t n);

/// 1,2,3,6,...,3*2^(n-2) then gap-halving additions to 2^n - 1.
/// Length <= n + 1 + floor((n-2)/2). n >= 2.
ConstructionOutcome halving_run_chain(uint64_t n);

/// Doubling base to 2^(n-1), one power ladder per prime p <= (n-1)/2
/// (exponents floor((n-1)/p^k), deduplicated across primes), then a greedy
/// largest-first binary completion to 2^n - 1. n >= 3.
ConstructionOutcome prime_ladder_chain(uint64_t n);

/// Tail terms 2^n - 2^floor((n-1)/2^j) with their run-valued regulators;
/// any summand not yet in the chain is repaired by a run expansion, counted
/// as filler. n >= 4.
ConstructionOutcome backtrack_chain(uint64_t n);

/// Doubling base to 2^(n-1), sparse spine 2^(n-1) + 2^floor((n-1)/2) + ...,
/// then the missing powers filled one per step. n >= 2.
ConstructionOutcome pothole_chain(uint64_t n);

/// Factorization 2^n - 1 = (2^(n/2)-1)(2^(n/2)+1) for even n (pothole chain
/// times power-plus-one chain); odd n extends the even case by two steps.
/// n >= 4.
ConstructionOutcome factor_pothole_chain(uint64_t n);

/// Iterated factorization down to exponent <= 8 (solved by exact search) or
/// until the depth budget s runs out (halving-run base). Default s is
/// floor(log2 n). n >= 2, 1 <= s <= floor(log2 n).
ConstructionOutcome iterated_factor_chain(uint64_t n, std::optional<int> s = std::nullopt);

/// Degree-d chain for 2^n - 1 with d = floor((n-1)/2) and length exactly
/// n + 1. n >= 3.
DegreeDChain degree_chain(uint64_t n);

}  // namespace chainlab
