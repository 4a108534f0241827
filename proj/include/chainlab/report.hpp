#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "chainlab/bounds.hpp"
#include "chainlab/search.hpp"

namespace chainlab::report {

/// Everything a batch run needs to be reproducible: range, kinds, budget,
/// table and output locations, worker count.
struct RunConfig {
    uint64_t n_lo = 2;
    uint64_t n_hi = 8;
    std::vector<bounds::BoundKind> kinds;
    search::SearchBudget budget;
    std::string table_path;
    std::string out_path;
    int workers = 1;
    bool pretty = false;
};

/// Budget for iota(n) ingredient lookups: enough to prove every easy case
/// quickly, small enough that hard cases fall through to the table.
search::SearchBudget ingredient_budget();

/// iota(n) with provenance. Sourcing order: proven search, then the
/// known-values table (cross-checked against any proven search result),
/// then nothing; callers decide whether the Brauer-upper fallback applies.
class IotaProvider {
public:
    explicit IotaProvider(const search::KnownValuesTable* table = nullptr,
                          search::SearchBudget budget = ingredient_budget());

    std::optional<bounds::IotaIngredient> get(uint64_t n);

private:
    const search::KnownValuesTable* table_;
    search::SearchBudget budget_;
    std::map<uint64_t, std::optional<bounds::IotaIngredient>> cache_;
    std::mutex mutex_;
};

/// One audited exponent: iota(n), iota(2^n - 1) (proven search or best
/// construction), the Scholz right-hand side, and per-method measurements.
struct AuditRow {
    uint64_t n = 0;
    int iota_n = 0;
    bool iota_n_proven = false;
    int64_t iota_mersenne = 0;
    std::string iota_mersenne_source;
    int64_t scholz_rhs = 0;
    std::optional<bool> equality;  // set only when both sides are proven
};

/// CSV with columns n,kind,bound,constructed_length,satisfied,iota_source;
/// rows ordered by n then kind enumeration order. First line is a timestamp
/// comment; everything below it is deterministic for a given config.
std::string bounds_table_csv(const RunConfig& config, IotaProvider& iota);

/// Scholz audit CSV over 2 <= n <= n_hi (n_lo clamped to 2).
std::string scholz_audit_csv(const RunConfig& config);

/// Plain-text known-values table for 1 <= n <= n_max, every entry proven by
/// exhaustive search. Throws if the budget cannot prove some entry.
std::string generate_iota_table(uint64_t n_max, const search::SearchBudget& budget, int workers);

/// Column-aligned rendering of a CSV (comment lines pass through).
std::string render_pretty(const std::string& csv);

}  // namespace chainlab::report
