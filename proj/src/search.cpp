#include "chainlab/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <istream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace chainlab::search {

namespace {

using u64 = uint64_t;
using u128 = unsigned __int128;
using Clock = std::chrono::steady_clock;

int floor_log2_u64(u64 n) { return 63 - __builtin_clzll(n); }

int ceil_log2_u64(u64 n) {
    int f = floor_log2_u64(n);
    return ((u64{1} << f) == n) ? f : f + 1;
}

/// Sound start depth for iterative deepening, per the enabled rules.
int initial_lower_bound(u64 n, const PruningOptions& opts) {
    if (n == 1) return 0;
    int lb = 1;
    if (opts.real_lower_bound) {
        // smallest integer strictly greater than log2(n) - 1, computed
        // exactly: floor(log2 n) either way.
        lb = std::max(lb, floor_log2_u64(n));
    }
    if (opts.weight_lower_bound) {
        int nu = __builtin_popcountll(n);
        lb = std::max(lb, floor_log2_u64(n) + ceil_log2_u64(static_cast<u64>(nu)));
    }
    return lb;
}

struct Shared {
    std::atomic<uint64_t> nodes{0};
    std::atomic<bool> found{false};
    std::atomic<bool> aborted{false};  // budget blown; depth not exhausted
    Clock::time_point deadline;
    uint64_t max_nodes = 0;
};

struct Frame {
    u64 value;
    size_t left, right;
};

class Dfs {
public:
    Dfs(u64 target, bool star, const PruningOptions& opts, Shared& shared)
        : target_(target), star_(star), opts_(opts), shared_(shared) {}

    /// Runs depth-limited search from the given prefix. Returns true when a
    /// chain reaching the target within `limit` steps was found; the winning
    /// stack is left in place.
    bool run(const std::vector<Frame>& prefix, int limit) {
        stack_ = prefix;
        limit_ = limit;
        local_nodes_ = 0;
        bool ok = dfs();
        shared_.nodes.fetch_add(local_nodes_, std::memory_order_relaxed);
        return ok;
    }

    const std::vector<Frame>& stack() const { return stack_; }

private:
    bool out_of_budget() {
        if (shared_.aborted.load(std::memory_order_relaxed)) return true;
        if ((local_nodes_ & 0xFFF) == 0) {
            if (shared_.nodes.load(std::memory_order_relaxed) + local_nodes_ > shared_.max_nodes ||
                Clock::now() > shared_.deadline) {
                shared_.aborted.store(true, std::memory_order_relaxed);
                return true;
            }
        }
        return false;
    }

    bool dfs() {
        const size_t i = stack_.size() - 1;
        const u64 v = stack_[i].value;
        if (v == target_) return true;
        const int rem = limit_ - static_cast<int>(i);
        if (rem <= 0) return false;
        if (shared_.found.load(std::memory_order_relaxed)) return false;

        ++local_nodes_;
        if (out_of_budget()) return false;

        if (opts_.reachability && (u128{v} << rem) < target_) return false;

        if (opts_.non_doubling_cap && rem >= 2 && i >= 1) {
            // If every tail fails unless all remaining steps double the
            // maximum, the target must be exactly v * 2^rem.
            u128 best_non_doubling =
                std::max(u128{v + stack_[i - 1].value} << (rem - 1), (u128{3} * v) << (rem - 2));
            if (target_ > best_non_doubling) {
                if (target_ != (u128{v} << rem)) return false;
                stack_.push_back(Frame{v + v, i, i});
                bool ok = dfs();
                if (!ok) stack_.pop_back();
                return ok;
            }
        }

        if (rem == 1) return last_step();

        // Candidate next elements, largest first; duplicated sums collapse
        // to their first provenance.
        candidates_.clear();
        if (star_) {
            for (size_t j = i + 1; j-- > 0;) {
                u64 s = v + stack_[j].value;
                if (s <= v) break;  // summands only shrink from here
                if (s > target_) continue;
                candidates_.push_back(Frame{s, j, i});
            }
        } else {
            for (size_t k = i + 1; k-- > 0;) {
                u64 vk = stack_[k].value;
                if (vk + vk <= v) break;
                for (size_t j = k + 1; j-- > 0;) {
                    u64 s = vk + stack_[j].value;
                    if (s <= v) break;
                    if (s > target_) continue;
                    candidates_.push_back(Frame{s, j, k});
                }
            }
            std::sort(candidates_.begin(), candidates_.end(),
                      [](const Frame& a, const Frame& b) { return a.value > b.value; });
            candidates_.erase(std::unique(candidates_.begin(), candidates_.end(),
                                          [](const Frame& a, const Frame& b) {
                                              return a.value == b.value;
                                          }),
                              candidates_.end());
        }

        const size_t base = scratch_.size();
        scratch_.insert(scratch_.end(), candidates_.begin(), candidates_.end());
        bool ok = false;
        for (size_t c = base; c != scratch_.size() && !ok; ++c) {
            const Frame f = scratch_[c];
            if (opts_.reachability && (u128{f.value} << (rem - 1)) < target_) continue;
            stack_.push_back(f);
            ok = dfs();
            if (!ok) stack_.pop_back();
        }
        scratch_.resize(base);
        return ok;
    }

    bool last_step() {
        const size_t i = stack_.size() - 1;
        const u64 v = stack_[i].value;
        if (star_) {
            u64 need = target_ - v;
            if (need > v) return false;
            for (size_t j = 0; j <= i; ++j) {
                if (stack_[j].value == need) {
                    stack_.push_back(Frame{target_, j, i});
                    return true;
                }
            }
            return false;
        }
        for (size_t k = i + 1; k-- > 0;) {
            u64 vk = stack_[k].value;
            if (vk + vk < target_) break;
            if (vk >= target_) continue;
            u64 need = target_ - vk;
            // stack values are strictly increasing: binary search
            size_t lo = 0, hi = k + 1;
            while (lo < hi) {
                size_t mid = (lo + hi) / 2;
                if (stack_[mid].value < need)
                    lo = mid + 1;
                else
                    hi = mid;
            }
            if (lo <= k && stack_[lo].value == need) {
                stack_.push_back(Frame{target_, lo, k});
                return true;
            }
        }
        return false;
    }

    u64 target_;
    bool star_;
    PruningOptions opts_;
    Shared& shared_;
    int limit_ = 0;
    uint64_t local_nodes_ = 0;
    std::vector<Frame> stack_;
    std::vector<Frame> candidates_;
    std::vector<Frame> scratch_;  // candidate frames for the whole DFS path
};

AdditionChain chain_from_stack(const std::vector<Frame>& stack) {
    AdditionChain c;
    for (size_t i = 0; i < stack.size(); ++i) {
        c.elements.push_back(Nat{stack[i].value});
        if (i > 0) c.steps.push_back(Step{std::min(stack[i].left, stack[i].right),
                                          std::max(stack[i].left, stack[i].right)});
    }
    c.target = c.elements.back();
    return c;
}

/// Enumerates the chain prefixes used as independent subtree roots when the
/// search runs on several workers. The set depends only on (n, star), so the
/// searched space is identical for every worker count.
std::vector<std::vector<Frame>> split_prefixes(u64 target, bool star, int depth) {
    std::vector<std::vector<Frame>> out;
    out.push_back({Frame{1, 0, 0}});
    for (int d = 0; d < depth; ++d) {
        std::vector<std::vector<Frame>> next;
        for (const auto& p : out) {
            if (p.back().value == target) {
                next.push_back(p);  // keep complete prefixes as-is
                continue;
            }
            const size_t i = p.size() - 1;
            std::vector<Frame> cands;
            for (size_t k = i + 1; k-- > 0;) {
                if (star && k != i) break;
                for (size_t j = k + 1; j-- > 0;) {
                    u64 s = p[k].value + p[j].value;
                    if (s <= p[i].value || s > target) continue;
                    cands.push_back(Frame{s, j, k});
                }
            }
            std::sort(cands.begin(), cands.end(),
                      [](const Frame& a, const Frame& b) { return a.value > b.value; });
            cands.erase(std::unique(cands.begin(), cands.end(),
                                    [](const Frame& a, const Frame& b) { return a.value == b.value; }),
                        cands.end());
            for (const Frame& f : cands) {
                auto q = p;
                q.push_back(f);
                next.push_back(std::move(q));
            }
        }
        if (next.empty()) break;
        out = std::move(next);
    }
    return out;
}

SearchResult run_search(const Nat& n, const SearchBudget& budget, int workers,
                        const PruningOptions& opts, bool star) {
    SearchResult result;
    result.n = n;
    result.star_only = star;
    if (n.is_zero()) throw std::invalid_argument("search: n must be positive");

    if (!n.fits_u64() || n.bit_length() > 62) {
        // Outside the desk-scale envelope: report the binary-method chain,
        // honestly unproven.
        result.witness = AdditionChain::unit();
        size_t top = n.bit_length() - 1;
        for (size_t b = 0; b < top; ++b) {
            size_t last = result.witness.elements.size() - 1;
            result.witness.push_step(last, last);
            if (n.bit(top - 1 - b)) result.witness.push_step(result.witness.elements.size() - 1, 0);
        }
        result.optimal_length = static_cast<int>(result.witness.length());
        result.proven_optimal = false;
        return result;
    }

    const u64 target = n.to_u64();
    if (target == 1) {
        result.witness = AdditionChain::unit();
        result.optimal_length = 0;
        result.proven_optimal = true;
        return result;
    }

    Shared shared;
    shared.max_nodes = budget.max_nodes;
    shared.deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                         std::chrono::duration<double>(budget.time_limit_seconds));

    workers = std::max(1, workers);
    const int start = initial_lower_bound(target, opts);

    for (int limit = start; limit <= budget.max_depth; ++limit) {
        shared.found.store(false);
        std::vector<Frame> winner;

        if (workers == 1) {
            Dfs dfs(target, star, opts, shared);
            if (dfs.run({Frame{1, 0, 0}}, limit)) {
                shared.found.store(true);
                winner = dfs.stack();
            }
        } else {
            auto prefixes = split_prefixes(target, star, std::min(limit, 3));
            std::vector<std::thread> pool;
            std::mutex winner_mutex;
            std::atomic<size_t> cursor{0};
            for (int w = 0; w < workers; ++w) {
                pool.emplace_back([&]() {
                    Dfs dfs(target, star, opts, shared);
                    for (size_t idx = cursor.fetch_add(1); idx < prefixes.size();
                         idx = cursor.fetch_add(1)) {
                        if (shared.found.load() || shared.aborted.load()) break;
                        if (static_cast<int>(prefixes[idx].size()) - 1 > limit) continue;
                        if (dfs.run(prefixes[idx], limit)) {
                            std::lock_guard<std::mutex> lock(winner_mutex);
                            if (!shared.found.exchange(true)) winner = dfs.stack();
                        }
                    }
                });
            }
            for (auto& t : pool) t.join();
        }

        if (shared.found.load()) {
            result.witness = chain_from_stack(winner);
            result.witness.method = star ? "search-star" : "search";
            result.optimal_length = limit;
            result.nodes_expanded = shared.nodes.load();
            // Depths below `start` are excluded by a sound lower bound;
            // depths in [start, limit) were exhausted unless the budget cut
            // a pass short.
            result.proven_optimal = !shared.aborted.load();
            return result;
        }
        if (shared.aborted.load()) break;
    }

    // Nothing found within budget/depth: fall back to a valid chain so the
    // caller always receives a certificate, flagged unproven.
    result.witness = AdditionChain::unit();
    u64 v = target;
    std::vector<bool> bits;
    while (v > 1) {
        bits.push_back(v & 1);
        v >>= 1;
    }
    for (size_t b = bits.size(); b-- > 0;) {
        size_t last = result.witness.elements.size() - 1;
        result.witness.push_step(last, last);
        if (bits[b]) result.witness.push_step(result.witness.elements.size() - 1, 0);
    }
    result.optimal_length = static_cast<int>(result.witness.length());
    result.nodes_expanded = shared.nodes.load();
    result.proven_optimal = false;
    return result;
}

}  // namespace

SearchResult shortest_chain(const Nat& n, const SearchBudget& budget, int workers,
                            const PruningOptions& opts) {
    return run_search(n, budget, workers, opts, false);
}

SearchResult shortest_star_chain(const Nat& n, const SearchBudget& budget, int workers,
                                 const PruningOptions& opts) {
    return run_search(n, budget, workers, opts, true);
}

KnownValuesTable KnownValuesTable::parse(std::istream& in) {
    KnownValuesTable table;
    std::string line;
    size_t line_no = 0;
    uint64_t prev_n = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        uint64_t n = 0;
        int len = 0;
        if (!(ls >> n)) {
            std::string rest;
            ls.clear();
            if (ls >> rest)
                throw std::runtime_error("known-values table line " + std::to_string(line_no) +
                                         ": malformed record");
            continue;  // blank or comment-only line
        }
        if (!(ls >> len) || len < 0)
            throw std::runtime_error("known-values table line " + std::to_string(line_no) +
                                     ": malformed record");
        std::string extra;
        if (ls >> extra)
            throw std::runtime_error("known-values table line " + std::to_string(line_no) +
                                     ": trailing tokens");
        if (n == 0 || n <= prev_n)
            throw std::runtime_error("known-values table line " + std::to_string(line_no) +
                                     ": n not strictly increasing");
        prev_n = n;
        table.values_[n] = len;
    }
    return table;
}

KnownValuesTable KnownValuesTable::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open known-values table: " + path);
    return parse(in);
}

void KnownValuesTable::cross_check(const SearchResult& result) const {
    if (!result.proven_optimal || !result.n.fits_u64()) return;
    auto known = find(result.n.to_u64());
    if (known && *known != result.optimal_length)
        throw std::runtime_error("known-values table conflicts with exhaustive search at n=" +
                                 result.n.to_decimal() + ": table says " + std::to_string(*known) +
                                 ", search proved " + std::to_string(result.optimal_length));
}

}  // namespace chainlab::search
