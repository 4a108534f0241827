#include "chainlab/report.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <ctime>
#include <sstream>
#include <thread>

#include "chainlab/constructors.hpp"

namespace chainlab::report {

namespace {

std::string timestamp_line(const std::string& what) {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[64];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return "# chainlab " + what + " generated=" + buf + "\n";
}

/// Constructor backing each bound kind, when one exists in the kind's
/// domain. Returns the outcome, or nullopt for formula-only kinds.
std::optional<ConstructionOutcome> construction_for(bounds::BoundKind kind, uint64_t n) {
    using bounds::BoundKind;
    std::optional<ConstructionOutcome> out;
    switch (kind) {
        case BoundKind::simple:
            if (n >= 2) out = halving_run_chain(n);
            break;
        case BoundKind::integral:
            if (n >= 3) out = prime_ladder_chain(n);
            break;
        case BoundKind::backtrack:
            if (n >= 4) out = backtrack_chain(n);
            break;
        case BoundKind::pothole:
            if (n >= 3) out = pothole_chain(n);
            break;
        case BoundKind::improved:
            if (n >= 4) out = factor_pothole_chain(n);
            break;
        case BoundKind::main:
            if (n >= 2) out = iterated_factor_chain(n);
            break;
        default:
            break;
    }
    return out;
}

bool kind_needs_iota(bounds::BoundKind kind) {
    using bounds::BoundKind;
    return kind == BoundKind::integral || kind == BoundKind::pothole ||
           kind == BoundKind::improved || kind == BoundKind::scholz_rhs;
}

}  // namespace

search::SearchBudget ingredient_budget() {
    search::SearchBudget b;
    b.max_depth = 14;
    b.max_nodes = 500'000;
    b.time_limit_seconds = 5.0;
    return b;
}

IotaProvider::IotaProvider(const search::KnownValuesTable* table, search::SearchBudget budget)
    : table_(table), budget_(budget) {}

std::optional<bounds::IotaIngredient> IotaProvider::get(uint64_t n) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cache_.find(n);
    if (it != cache_.end()) return it->second;

    std::optional<bounds::IotaIngredient> out;
    auto result = search::shortest_chain(Nat{n}, budget_);
    if (result.proven_optimal) {
        if (table_) table_->cross_check(result);
        out = bounds::IotaIngredient{result.optimal_length, bounds::IotaSource::search};
    } else if (table_) {
        if (auto known = table_->find(n))
            out = bounds::IotaIngredient{*known, bounds::IotaSource::table};
    }
    cache_[n] = out;
    return out;
}

std::string bounds_table_csv(const RunConfig& config, IotaProvider& iota) {
    std::ostringstream out;
    out << timestamp_line("bounds-table");
    out << "n,kind,bound,constructed_length,satisfied,iota_source\n";

    std::vector<uint64_t> ns;
    for (uint64_t n = std::max<uint64_t>(config.n_lo, 2); n <= config.n_hi; ++n) ns.push_back(n);

    std::vector<std::string> rows(ns.size());
    std::atomic<size_t> cursor{0};
    auto work = [&]() {
        for (size_t i = cursor.fetch_add(1); i < ns.size(); i = cursor.fetch_add(1)) {
            uint64_t n = ns[i];
            std::ostringstream line;
            for (bounds::BoundKind kind : config.kinds) {
                std::optional<bounds::IotaIngredient> ing;
                if (kind_needs_iota(kind)) ing = iota.get(n);

                auto outcome = construction_for(kind, n);
                std::optional<int64_t> measured_xi;
                if (kind == bounds::BoundKind::integral && outcome)
                    measured_xi = outcome->filler_count;

                bounds::BoundValue bound =
                    bounds::bound_value(kind, n, ing, /*allow_iota_fallback=*/true, measured_xi);

                std::string source = bounds::iota_source_name(bound.iota_source);
                if (kind == bounds::BoundKind::main) source = "search";

                line << n << ',' << bounds::bound_kind_name(kind) << ',' << bound.to_string() << ',';
                if (outcome) {
                    int64_t len = static_cast<int64_t>(outcome->chain.length());
                    line << len << ',' << (bounds::bound_satisfied(len, bound) ? "true" : "false");
                } else {
                    line << "-,-";
                }
                line << ',' << source << '\n';
            }
            rows[i] = line.str();
        }
    };
    int workers = std::max(1, config.workers);
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    for (const auto& r : rows) out << r;
    return out.str();
}

namespace {

struct MersenneEstimate {
    int64_t length;
    std::string source;
    bool proven;
};

MersenneEstimate best_mersenne_length(uint64_t n, const search::SearchBudget& budget) {
    auto result = search::shortest_chain(Nat::ones_run(n, 0), budget);
    if (result.proven_optimal) return {result.optimal_length, "search", true};

    MersenneEstimate best{static_cast<int64_t>(result.witness.length()), "search-unproven", false};
    auto consider = [&](int64_t len, const std::string& name) {
        if (len < best.length) best = {len, name, false};
    };
    consider(static_cast<int64_t>(halving_run_chain(n).chain.length()), "halving-run");
    if (n >= 3) consider(static_cast<int64_t>(pothole_chain(n).chain.length()), "pothole");
    if (n >= 3) consider(static_cast<int64_t>(prime_ladder_chain(n).chain.length()), "prime-ladder");
    if (n >= 4) consider(static_cast<int64_t>(backtrack_chain(n).chain.length()), "backtrack");
    if (n >= 4) consider(static_cast<int64_t>(factor_pothole_chain(n).chain.length()), "factor-pothole");
    consider(static_cast<int64_t>(iterated_factor_chain(n).chain.length()), "iterated-factor");
    return best;
}

}  // namespace

std::string scholz_audit_csv(const RunConfig& config) {
    std::ostringstream out;
    out << timestamp_line("scholz-audit");
    out << "n,iota_n,iota_n_source,iota_2n_minus_1,iota_2n_minus_1_source,scholz_rhs,equality,"
           "halving_len,simple_bound,prime_ladder_len,integral_bound,backtrack_len,backtrack_bound,"
           "pothole_len,pothole_bound,factor_len,improved_bound,iterated_len,main_bound\n";

    std::vector<uint64_t> ns;
    for (uint64_t n = std::max<uint64_t>(config.n_lo, 2); n <= config.n_hi; ++n) ns.push_back(n);
    std::vector<std::string> rows(ns.size());
    std::atomic<size_t> cursor{0};

    auto work = [&]() {
        for (size_t i = cursor.fetch_add(1); i < ns.size(); i = cursor.fetch_add(1)) {
            uint64_t n = ns[i];
            std::ostringstream line;

            auto exp_result = search::shortest_chain(Nat{n}, config.budget);
            bool exp_proven = exp_result.proven_optimal;
            int64_t iota_n = exp_result.optimal_length;
            int64_t rhs = static_cast<int64_t>(n) - 1 + iota_n;

            MersenneEstimate m = best_mersenne_length(n, config.budget);

            line << n << ',' << iota_n << ',' << (exp_proven ? "search" : "unproven") << ','
                 << m.length << ',' << m.source << ',' << rhs << ',';
            if (exp_proven && m.proven)
                line << (m.length == rhs ? "true" : "false");
            else
                line << '-';

            bounds::IotaIngredient ing{iota_n, bounds::IotaSource::search};
            auto emit = [&](std::optional<int64_t> len, const bounds::BoundValue& bound) {
                if (len)
                    line << ',' << *len;
                else
                    line << ",-";
                line << ',' << bound.to_string();
            };
            auto opt_len = [](const std::optional<ConstructionOutcome>& o) -> std::optional<int64_t> {
                if (!o) return std::nullopt;
                return static_cast<int64_t>(o->chain.length());
            };

            auto halving = halving_run_chain(n);
            emit(static_cast<int64_t>(halving.chain.length()),
                 bounds::bound_value(bounds::BoundKind::simple, n));
            std::optional<ConstructionOutcome> ladder;
            if (n >= 3) ladder = prime_ladder_chain(n);
            emit(opt_len(ladder),
                 bounds::bound_value(bounds::BoundKind::integral, n, ing, false,
                                     ladder ? ladder->filler_count : int64_t{0}));
            std::optional<ConstructionOutcome> backtrack;
            if (n >= 4) backtrack = backtrack_chain(n);
            emit(opt_len(backtrack), bounds::bound_value(bounds::BoundKind::backtrack, n));
            std::optional<ConstructionOutcome> pothole;
            if (n >= 3) pothole = pothole_chain(n);
            emit(opt_len(pothole), bounds::bound_value(bounds::BoundKind::pothole, n, ing));
            std::optional<ConstructionOutcome> factor;
            if (n >= 4) factor = factor_pothole_chain(n);
            emit(opt_len(factor), bounds::bound_value(bounds::BoundKind::improved, n, ing));
            auto iterated = iterated_factor_chain(n);
            emit(static_cast<int64_t>(iterated.chain.length()),
                 bounds::bound_value(bounds::BoundKind::main, n));
            line << '\n';
            rows[i] = line.str();
        }
    };
    int workers = std::max(1, config.workers);
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    for (const auto& r : rows) out << r;
    return out.str();
}

std::string generate_iota_table(uint64_t n_max, const search::SearchBudget& budget, int workers) {
    std::vector<std::string> rows(n_max);
    std::atomic<size_t> cursor{1};
    std::atomic<bool> failed{false};
    auto work = [&]() {
        for (size_t n = cursor.fetch_add(1); n <= n_max; n = cursor.fetch_add(1)) {
            auto result = search::shortest_chain(Nat{n}, budget);
            if (!result.proven_optimal) {
                failed.store(true);
                return;
            }
            rows[n - 1] = std::to_string(n) + " " + std::to_string(result.optimal_length);
        }
    };
    workers = std::max(1, workers);
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (failed.load())
        throw std::runtime_error("generate_iota_table: search budget too small to prove some entry");
    std::ostringstream out;
    out << "# shortest addition chain lengths, proven by exhaustive search\n";
    out << "# n iota(n)\n";
    for (const auto& r : rows) out << r << "\n";
    return out.str();
}

std::string render_pretty(const std::string& csv) {
    std::vector<std::vector<std::string>> table;
    std::vector<std::string> passthrough;
    std::istringstream in(csv);
    std::string line;
    std::vector<size_t> widths;
    std::vector<std::pair<bool, size_t>> order;  // (is_comment, index)
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') {
            order.emplace_back(true, passthrough.size());
            passthrough.push_back(line);
            continue;
        }
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        for (size_t i = 0; i < cells.size(); ++i) {
            if (widths.size() <= i) widths.push_back(0);
            widths[i] = std::max(widths[i], cells[i].size());
        }
        order.emplace_back(false, table.size());
        table.push_back(std::move(cells));
    }
    std::ostringstream out;
    for (auto [is_comment, idx] : order) {
        if (is_comment) {
            out << passthrough[idx] << "\n";
            continue;
        }
        const auto& cells = table[idx];
        for (size_t i = 0; i < cells.size(); ++i) {
            out << cells[i];
            if (i + 1 < cells.size()) out << std::string(widths[i] - cells[i].size() + 2, ' ');
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace chainlab::report
