#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include "chainlab/chain.hpp"

namespace chainlab::search {

struct SearchBudget {
    int max_depth = 14;
    uint64_t max_nodes = 1'000'000'000;
    double time_limit_seconds = 300.0;
};

/// Toggles for the individual pruning rules; disabling any of them may only
/// slow the search down, never change a proven length (property-tested).
struct PruningOptions {
    bool weight_lower_bound = true;   // start depth at floor(log2 n) + ceil(log2 popcount(n))
    bool real_lower_bound = true;     // start depth at the smallest integer > log2(n) - 1
    bool reachability = true;         // prune when max * 2^remaining < n
    bool non_doubling_cap = true;     // prune when n is out of reach of any non-pure-doubling tail
};

struct SearchResult {
    Nat n;
    int optimal_length = 0;
    AdditionChain witness;
    uint64_t nodes_expanded = 0;
    bool proven_optimal = false;
    bool star_only = false;
};

/// Exact iota(n): iterative-deepening DFS over strictly increasing chains.
/// proven_optimal is set only when every depth below optimal_length was
/// exhausted (or excluded by a sound lower bound). On budget exhaustion the
/// best chain found so far is returned with proven_optimal false.
SearchResult shortest_chain(const Nat& n, const SearchBudget& budget = {}, int workers = 1,
                            const PruningOptions& opts = {});

/// Exact iota*(n): as shortest_chain but each step must use the immediately
/// preceding element as one summand.
SearchResult shortest_star_chain(const Nat& n, const SearchBudget& budget = {}, int workers = 1,
                                 const PruningOptions& opts = {});

/// Immutable (n, iota(n)) lookup loaded from the plain-text table format:
/// one "n length" pair per line, '#' comments, n strictly increasing.
class KnownValuesTable {
public:
    static KnownValuesTable parse(std::istream& in);
    static KnownValuesTable load_file(const std::string& path);

    std::optional<int> find(uint64_t n) const {
        auto it = values_.find(n);
        if (it == values_.end()) return std::nullopt;
        return it->second;
    }
    size_t size() const { return values_.size(); }

    /// Raises a data-integrity error when a proven search result contradicts
    /// a table entry.
    void cross_check(const SearchResult& result) const;

private:
    std::map<uint64_t, int> values_;
};

}  // namespace chainlab::search
