#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "chainlab/bounds.hpp"
#include "chainlab/chain_io.hpp"
#include "chainlab/constructors.hpp"
#include "chainlab/report.hpp"
#include "chainlab/search.hpp"

namespace {

using namespace chainlab;

constexpr int kExitOk = 0;
constexpr int kExitInvariant = 1;
constexpr int kExitUsage = 2;

struct BudgetFlags {
    int depth = 14;
    uint64_t nodes = 1'000'000'000;
    double seconds = 300.0;

    search::SearchBudget to_budget() const {
        if (depth < 1 || nodes == 0 || seconds <= 0)
            throw std::invalid_argument("search budget values must be positive");
        return {depth, nodes, seconds};
    }

    void attach(CLI::App* cmd) {
        cmd->add_option("--budget-depth", depth, "maximum search depth");
        cmd->add_option("--budget-nodes", nodes, "maximum expanded nodes");
        cmd->add_option("--budget-seconds", seconds, "search time limit");
    }
};

std::string default_table_path(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("CHAINLAB_TABLE")) return env;
    return {};
}

std::optional<search::KnownValuesTable> load_table(const std::string& path) {
    if (path.empty()) return std::nullopt;
    return search::KnownValuesTable::load_file(path);
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty())
        std::cout << text;
    else
        io::write_file(out_path, text);
}

int run_construct(const std::string& method, uint64_t n, const std::string& out_path,
                  const std::string& table_path) {
    struct Domain {
        std::string name;
        uint64_t min_n;
    };
    static const Domain domains[] = {
        {"power", 0},          {"power-plus-one", 1}, {"halving-run", 2},
        {"prime-ladder", 3},   {"backtrack", 4},      {"pothole", 3},
        {"factor-pothole", 4}, {"iterated-factor", 2}, {"degree", 3},
    };
    const Domain* dom = nullptr;
    for (const auto& d : domains)
        if (d.name == method) dom = &d;
    if (!dom) {
        std::cerr << "unknown method: " << method << "\n";
        return kExitUsage;
    }
    if (n < dom->min_n) {
        std::cerr << "method " << method << " requires n >= " << dom->min_n << "\n";
        return kExitUsage;
    }

    if (method == "degree") {
        DegreeDChain chain = degree_chain(n);
        auto report = validate_degree_d(chain);
        if (!out_path.empty()) io::write_file(out_path, io::degree_chain_to_text(chain));
        int64_t len = static_cast<int64_t>(chain.length());
        int64_t bound = static_cast<int64_t>(n) + 1;
        std::cout << len << " <= " << bound << (report.ok && len <= bound ? " OK" : " FAIL") << "\n";
        if (!report.ok) {
            std::cerr << "invalid chain at index " << report.index << ": " << report.message << "\n";
            return kExitInvariant;
        }
        return kExitOk;
    }

    ConstructionOutcome outcome;
    std::optional<bounds::BoundKind> kind;
    if (method == "power") {
        outcome = ConstructionOutcome{power_chain(n), static_cast<int64_t>(n), 0, "power"};
    } else if (method == "power-plus-one") {
        outcome =
            ConstructionOutcome{power_plus_one_chain(n), static_cast<int64_t>(n) + 1, 0, method};
    } else if (method == "halving-run") {
        outcome = halving_run_chain(n);
        kind = bounds::BoundKind::simple;
    } else if (method == "prime-ladder") {
        outcome = prime_ladder_chain(n);
        kind = bounds::BoundKind::integral;
    } else if (method == "backtrack") {
        outcome = backtrack_chain(n);
        kind = bounds::BoundKind::backtrack;
    } else if (method == "pothole") {
        outcome = pothole_chain(n);
        kind = bounds::BoundKind::pothole;
    } else if (method == "factor-pothole") {
        outcome = factor_pothole_chain(n);
        kind = bounds::BoundKind::improved;
    } else {
        outcome = iterated_factor_chain(n);
        kind = bounds::BoundKind::main;
    }

    bounds::BoundValue bound;
    if (kind) {
        auto table = load_table(default_table_path(table_path));
        report::IotaProvider iota(table ? &*table : nullptr);
        std::optional<bounds::IotaIngredient> ing;
        if (*kind == bounds::BoundKind::integral || *kind == bounds::BoundKind::pothole ||
            *kind == bounds::BoundKind::improved)
            ing = iota.get(n);
        std::optional<int64_t> measured_xi;
        if (*kind == bounds::BoundKind::integral) measured_xi = outcome.filler_count;
        bound = bounds::bound_value(*kind, n, ing, /*allow_iota_fallback=*/true, measured_xi);
    } else {
        bound.kind = bounds::BoundKind::simple;
        bound.exact = true;
        bound.rational = bounds::DyadicRational::from_int(
            method == "power" ? static_cast<int64_t>(n) : static_cast<int64_t>(n) + 1);
    }

    auto report = validate_chain(outcome.chain);
    int64_t len = static_cast<int64_t>(outcome.chain.length());
    bool ok = bounds::bound_satisfied(len, bound);
    if (!out_path.empty()) io::write_file(out_path, io::outcome_to_text(outcome, bound, ok));
    std::cout << len << " <= " << bound.to_string() << (ok ? " OK" : " FAIL") << "\n";
    if (!report.ok) {
        std::cerr << "invalid chain at index " << report.index << ": " << report.message << "\n";
        return kExitInvariant;
    }
    return kExitOk;
}

int run_verify(const std::string& path) {
    std::string text;
    bool is_degree = false;
    AdditionChain chain;
    DegreeDChain degree;
    try {
        text = io::read_file(path);
        is_degree = io::text_is_degree_chain(text);
        if (is_degree)
            degree = io::degree_chain_from_text(text);
        else
            chain = io::chain_from_text(text);
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }
    ValidationReport report = is_degree ? validate_degree_d(degree) : validate_chain(chain);
    if (!report.ok) {
        std::cerr << "invalid chain at index " << report.index << ": " << report.message << "\n";
        return kExitInvariant;
    }
    std::cout << "ok: length " << (is_degree ? degree.length() : chain.length()) << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"addition chain laboratory: constructions, exact search, bound audits"};
    app.require_subcommand(1);

    // construct
    auto* construct = app.add_subcommand("construct", "build a chain for 2^n-1 (or 2^n, 2^n+1)");
    std::string method;
    uint64_t n = 0;
    std::string out_path, table_path;
    construct->add_option("--method", method, "construction method")->required();
    construct->add_option("--n", n, "exponent")->required();
    construct->add_option("--out", out_path, "write the chain document here");
    construct->add_option("--table", table_path, "known iota values (default $CHAINLAB_TABLE)");

    // verify
    auto* verify = app.add_subcommand("verify", "validate a chain document");
    std::string verify_path;
    verify->add_option("path", verify_path, "chain document")->required();

    // search
    auto* search_cmd = app.add_subcommand("search", "exact shortest chain for a target");
    std::string search_n;
    bool star = false;
    int workers = 1;
    BudgetFlags search_budget;
    search_cmd->add_option("--n", search_n, "target (decimal)")->required();
    search_cmd->add_flag("--star", star, "restrict to star chains");
    search_cmd->add_option("--workers", workers, "worker threads");
    search_cmd->add_option("--out", out_path, "write the search certificate here");
    search_budget.attach(search_cmd);

    // scholz-audit
    auto* audit = app.add_subcommand("scholz-audit", "audit iota(2^n-1) vs n-1+iota(n)");
    uint64_t n_max = 8;
    BudgetFlags audit_budget;
    bool pretty = false;
    audit->add_option("--n-max", n_max, "audit 2..n-max")->required();
    audit->add_option("--table", table_path, "known iota values (default $CHAINLAB_TABLE)");
    audit->add_option("--out", out_path, "output path (default stdout)");
    audit->add_option("--workers", workers, "worker threads");
    audit->add_flag("--pretty", pretty, "aligned text instead of raw CSV");
    audit_budget.attach(audit);

    // bounds-table
    auto* table_cmd = app.add_subcommand("bounds-table", "evaluate bound formulas over a range");
    std::string range = "2..64";
    std::string kinds_flag = "all";
    BudgetFlags table_budget;
    table_cmd->add_option("--range", range, "exponent range a..b");
    table_cmd->add_option("--kinds", kinds_flag, "comma-separated bound kinds (or 'all')");
    table_cmd->add_option("--table", table_path, "known iota values (default $CHAINLAB_TABLE)");
    table_cmd->add_option("--out", out_path, "output path (default stdout)");
    table_cmd->add_option("--workers", workers, "worker threads");
    table_cmd->add_flag("--pretty", pretty, "aligned text instead of raw CSV");
    table_budget.attach(table_cmd);

    // iota-table
    auto* gen = app.add_subcommand("iota-table", "generate a known-values table by proven search");
    uint64_t gen_max = 256;
    BudgetFlags gen_budget;
    gen->add_option("--n-max", gen_max, "largest n")->required();
    gen->add_option("--out", out_path, "output path (default stdout)");
    gen->add_option("--workers", workers, "worker threads");
    gen_budget.attach(gen);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (construct->parsed()) return run_construct(method, n, out_path, table_path);
        if (verify->parsed()) return run_verify(verify_path);

        if (search_cmd->parsed()) {
            auto result = search::shortest_chain(Nat::from_decimal(search_n),
                                                 search_budget.to_budget(), workers);
            if (star)
                result = search::shortest_star_chain(Nat::from_decimal(search_n),
                                                     search_budget.to_budget(), workers);
            if (!out_path.empty()) io::write_file(out_path, io::search_result_to_text(result));
            std::cout << (star ? "iota*(" : "iota(") << search_n << ") = " << result.optimal_length
                      << (result.proven_optimal ? " proven" : " unproven") << ", nodes "
                      << result.nodes_expanded << "\n";
            return result.proven_optimal ? kExitOk : kExitInvariant;
        }

        report::RunConfig config;
        config.workers = workers;
        config.pretty = pretty;
        config.table_path = default_table_path(table_path);

        if (audit->parsed()) {
            if (n_max < 2) {
                std::cerr << "--n-max must be at least 2\n";
                return kExitUsage;
            }
            config.n_lo = 2;
            config.n_hi = n_max;
            config.budget = audit_budget.to_budget();
            std::string csv = report::scholz_audit_csv(config);
            emit(pretty ? report::render_pretty(csv) : csv, out_path);
            return kExitOk;
        }

        if (table_cmd->parsed()) {
            auto sep = range.find("..");
            if (sep == std::string::npos) {
                std::cerr << "--range must look like a..b\n";
                return kExitUsage;
            }
            config.n_lo = std::stoull(range.substr(0, sep));
            config.n_hi = std::stoull(range.substr(sep + 2));
            if (config.n_lo < 2 || config.n_hi < config.n_lo) {
                std::cerr << "--range must satisfy 2 <= a <= b\n";
                return kExitUsage;
            }
            config.budget = table_budget.to_budget();
            if (kinds_flag == "all") {
                config.kinds = bounds::all_bound_kinds();
            } else if (!kinds_flag.empty()) {
                std::string item;
                std::istringstream ks(kinds_flag);
                while (std::getline(ks, item, ',')) {
                    auto kind = bounds::bound_kind_from_name(item);
                    if (!kind) {
                        std::cerr << "unknown bound kind: " << item << "\n";
                        return kExitUsage;
                    }
                    config.kinds.push_back(*kind);
                }
            }
            auto table = load_table(config.table_path);
            report::IotaProvider iota(table ? &*table : nullptr);
            std::string csv = report::bounds_table_csv(config, iota);
            emit(pretty ? report::render_pretty(csv) : csv, out_path);
            return kExitOk;
        }

        if (gen->parsed()) {
            std::string text = report::generate_iota_table(gen_max, gen_budget.to_budget(), workers);
            emit(text, out_path);
            return kExitOk;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitInvariant;
    }
    return kExitUsage;
}
