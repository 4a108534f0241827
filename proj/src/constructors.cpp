#include "chainlab/constructors.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <stdexcept>

#include "chainlab/bounds.hpp"
#include "chainlab/search.hpp"

namespace chainlab {

namespace {

/// Doubling chain 1, 2, ..., 2^n.
AdditionChain doubling(uint64_t n) {
    AdditionChain c = AdditionChain::unit();
    for (uint64_t i = 0; i < n; ++i) c.push_step(c.elements.size() - 1, c.elements.size() - 1);
    return c;
}

}  // namespace

AdditionChain power_chain(uint64_t n) {
    AdditionChain c = doubling(n);
    c.method = "power";
    return c;
}

AdditionChain power_plus_one_chain(uint64_t n) {
    if (n < 1) throw std::invalid_argument("power_plus_one_chain: n must be at least 1");
    AdditionChain c = doubling(n);
    c.push_step(c.elements.size() - 1, 0);
    c.method = "power-plus-one";
    return c;
}

ConstructionOutcome halving_run_chain(uint64_t n) {
    if (n < 2) throw std::invalid_argument("halving_run_chain: n must be at least 2");
    // Base 1,2,3,6,...,3*2^(n-2): element at index g (g >= 2) is 3*2^(g-2),
    // i.e. 2^g - 2^(g-2). The last one is 2^n - 2^(n-2).
    AdditionChain c = AdditionChain::unit();
    c.push_step(0, 0);
    c.push_step(1, 0);
    for (uint64_t k = 1; k + 1 < n; ++k) c.push_step(c.elements.size() - 1, c.elements.size() - 1);

    // With a gap of 2^g left to the target, adding 3*2^(g-2) (index g)
    // shrinks the gap to 2^(g-2).
    int64_t adjoined = 0;
    for (uint64_t g = n - 2; g >= 2; g -= 2) {
        c.push_step(c.elements.size() - 1, g);
        ++adjoined;
    }
    if (n % 2 == 1 && n >= 3) {
        c.push_step(c.elements.size() - 1, 0);
        ++adjoined;
    }
    c.method = "halving-run";
    return ConstructionOutcome{std::move(c), adjoined, 0, "halving-run"};
}

ConstructionOutcome prime_ladder_chain(uint64_t n) {
    if (n < 3) throw std::invalid_argument("prime_ladder_chain: n must be at least 3");
    AdditionChain c = doubling(n - 1);

    std::set<uint64_t> seen;
    std::vector<uint64_t> order;
    for (uint32_t p : bounds::primes_upto((n - 1) / 2)) {
        if (2ull * p > n - 1) break;
        for (uint64_t q = p; q <= n - 1; q *= p) {
            uint64_t e = (n - 1) / q;
            if (seen.insert(e).second) order.push_back(e);
            if (q > (n - 1) / p) break;  // next q would overflow past n-1
        }
    }
    for (uint64_t e : order) c.push_step(c.elements.size() - 1, e);

    // Greedy binary completion: every exponent of 2^n - 1 not yet in the
    // running sum, largest first, then the closing +1.
    int64_t filler = 0;
    for (uint64_t m = n - 1; m-- > 0;) {
        if (seen.count(m)) continue;
        c.push_step(c.elements.size() - 1, m);
        ++filler;
    }
    c.method = "prime-ladder";
    return ConstructionOutcome{std::move(c), static_cast<int64_t>(order.size()), filler,
                               "prime-ladder"};
}

ConstructionOutcome backtrack_chain(uint64_t n) {
    if (n < 4) throw std::invalid_argument("backtrack_chain: n must be at least 4");
    const int K = bounds::floor_log2(n);

    // value -> its two summand values; assembled unsorted, indexed later.
    std::map<Nat, std::pair<Nat, Nat>> parts;
    auto add = [&](const Nat& v, const Nat& a, const Nat& b) {
        return parts.emplace(v, std::make_pair(a, b)).second;
    };
    for (uint64_t b = 1; b <= n - 1; ++b) add(Nat::pow2(b), Nat::pow2(b - 1), Nat::pow2(b - 1));

    int64_t adjoined = 0, filler = 0;
    std::vector<uint64_t> e(static_cast<size_t>(K) + 1);
    for (int j = 0; j <= K; ++j) e[j] = (n - 1) >> j;

    // Regulators 2^(e[j-1]) - 2^(e[j]) as runs of ones, built by extending
    // the power 2^(a-1) one bit at a time; intermediate runs are the repair
    // cost the construction leaves implicit.
    for (int j = 1; j <= K; ++j) {
        uint64_t a = e[j - 1], b = e[j];
        for (uint64_t cbit = a - 1; cbit-- > b;) {
            if (add(Nat::ones_run(a, cbit), Nat::ones_run(a, cbit + 1), Nat::pow2(cbit)))
                ++(cbit == b ? adjoined : filler);
        }
    }
    // Tail terms 2^n - 2^(e[j]).
    Nat tail = Nat::pow2(n - 1) + Nat::ones_run(n - 1, e[1]);
    add(tail, Nat::pow2(n - 1), Nat::ones_run(n - 1, e[1]));
    ++adjoined;
    for (int j = 2; j <= K; ++j) {
        Nat next = tail + Nat::ones_run(e[j - 1], e[j]);
        add(next, tail, Nat::ones_run(e[j - 1], e[j]));
        ++adjoined;
        tail = std::move(next);
    }
    if (e[K] == 1) {
        add(tail + Nat{1}, tail, Nat{1});
        ++adjoined;
    }

    AdditionChain c;
    std::map<Nat, size_t> index;
    c.elements.push_back(Nat{1});
    index.emplace(Nat{1}, 0);
    for (const auto& [value, summands] : parts) {
        index.emplace(value, c.elements.size());
        size_t l = index.at(summands.first), r = index.at(summands.second);
        c.elements.push_back(value);
        c.steps.push_back(Step{std::min(l, r), std::max(l, r)});
    }
    c.target = c.elements.back();
    c.method = "backtrack";
    return ConstructionOutcome{std::move(c), adjoined, filler, "backtrack"};
}

ConstructionOutcome pothole_chain(uint64_t n) {
    if (n < 2) throw std::invalid_argument("pothole_chain: n must be at least 2");
    const int K = bounds::floor_log2(n);
    AdditionChain c = doubling(n - 1);

    std::set<uint64_t> spine;
    for (int j = 1; j <= K; ++j) spine.insert((n - 1) >> j);
    for (int j = 1; j <= K; ++j) c.push_step(c.elements.size() - 1, (n - 1) >> j);

    int64_t filler = 0;
    for (uint64_t m = n - 1; m-- > 0;) {
        if (spine.count(m)) continue;
        c.push_step(c.elements.size() - 1, m);
        ++filler;
    }
    c.method = "pothole";
    return ConstructionOutcome{std::move(c), K, filler, "pothole"};
}

ConstructionOutcome factor_pothole_chain(uint64_t n) {
    if (n < 4) throw std::invalid_argument("factor_pothole_chain: n must be at least 4");
    if (n % 2 == 0) {
        uint64_t k = n / 2;
        ConstructionOutcome half = pothole_chain(k);
        AdditionChain c = chain_product(half.chain, power_plus_one_chain(k));
        c.method = "factor-pothole";
        return ConstructionOutcome{std::move(c), half.adjoined_count + static_cast<int64_t>(k) + 1,
                                   half.filler_count, "factor-pothole"};
    }
    ConstructionOutcome even_case = factor_pothole_chain(n - 1);
    AdditionChain c = double_plus_one_extend(even_case.chain);
    c.method = "factor-pothole";
    return ConstructionOutcome{std::move(c), even_case.adjoined_count + 2, even_case.filler_count,
                               "factor-pothole"};
}

namespace {

const AdditionChain& mersenne_base_chain(uint64_t k) {
    static const std::array<AdditionChain, 9> chains = [] {
        std::array<AdditionChain, 9> out;
        for (uint64_t i = 2; i <= 8; ++i) {
            auto r = search::shortest_chain(Nat::ones_run(i, 0));
            if (!r.proven_optimal)
                throw std::logic_error("iterated_factor_chain: base-case search failed");
            out[i] = r.witness;
        }
        return out;
    }();
    return chains.at(k);
}

ConstructionOutcome iterated_factor_rec(uint64_t k, int s) {
    if (k <= 8) {
        AdditionChain c = mersenne_base_chain(k);
        return ConstructionOutcome{std::move(c), 0, 0, "iterated-factor"};
    }
    if (s == 0) return halving_run_chain(k);
    const uint64_t half = k / 2;  // the odd case factors 2^(k-1) - 1 first
    ConstructionOutcome sub = iterated_factor_rec(half, s - 1);
    AdditionChain c = chain_product(sub.chain, power_plus_one_chain(half));
    int64_t adjoined = sub.adjoined_count + static_cast<int64_t>(half) + 1;
    if (k % 2 == 1) {
        c = double_plus_one_extend(c);
        adjoined += 2;
    }
    return ConstructionOutcome{std::move(c), adjoined, sub.filler_count, "iterated-factor"};
}

}  // namespace

ConstructionOutcome iterated_factor_chain(uint64_t n, std::optional<int> s) {
    if (n < 2) throw std::invalid_argument("iterated_factor_chain: n must be at least 2");
    const int max_s = bounds::floor_log2(n);
    const int depth = s.value_or(max_s);
    if (depth < 1 || depth > max_s)
        throw std::invalid_argument("iterated_factor_chain: s out of range");
    ConstructionOutcome out = iterated_factor_rec(n, depth);
    out.method = "iterated-factor";
    out.chain.method = "iterated-factor";
    return out;
}

DegreeDChain degree_chain(uint64_t n) {
    if (n < 3) throw std::invalid_argument("degree_chain: n must be at least 3");
    const size_t d = static_cast<size_t>((n - 1) / 2);

    if (n == 4) {
        // d = 1: the star chain 1,2,3,6,12,15 written in block form.
        DegreeDChain c;
        for (uint64_t v : {1, 2, 3, 6, 12, 15}) c.elements.push_back(Nat{v});
        c.blocks = {{0}, {0}, {2}, {3}, {2}};
        c.degree = 1;
        c.target = Nat{15};
        return c;
    }
    if (n % 2 == 0) {
        // 2^n - 1 = 2*(2^(n-1) - 1) + 1; same degree, one extra block step.
        DegreeDChain c = degree_chain(n - 1);
        size_t last = c.elements.size() - 1;
        c.blocks.push_back({0, last});
        c.elements.push_back(c.elements[last] + c.elements[last] + Nat{1});
        c.degree = d;
        c.target = c.elements.back();
        return c;
    }

    DegreeDChain c;
    c.degree = d;
    c.elements.push_back(Nat{1});
    for (uint64_t b = 1; b < n; ++b) {
        c.elements.push_back(Nat::pow2(b));
        c.blocks.push_back({static_cast<size_t>(b - 1)});
    }
    std::vector<size_t> high, low;
    for (size_t idx = d; idx <= n - 2; ++idx) high.push_back(idx);
    for (size_t idx = 0; idx < d; ++idx) low.push_back(idx);
    c.elements.push_back(Nat::pow2(n) - Nat::pow2(d));
    c.blocks.push_back(std::move(high));
    c.elements.push_back(Nat::ones_run(n, 0));
    c.blocks.push_back(std::move(low));
    c.target = c.elements.back();
    return c;
}

}  // namespace chainlab
