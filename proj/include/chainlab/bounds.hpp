#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace chainlab::bounds {

/// Exact value numerator / 2^exponent, kept normalized (odd numerator or
/// exponent 0). Large enough for every xi/theta at desk scale.
struct DyadicRational {
    int64_t numerator = 0;
    int exponent = 0;

    static DyadicRational make(int64_t num, int exp);
    static DyadicRational from_int(int64_t v) { return DyadicRational{v, 0}; }

    DyadicRational operator+(const DyadicRational& o) const;
    DyadicRational operator-(const DyadicRational& o) const;
    int compare(const DyadicRational& o) const;  // sign of *this - o
    int compare_int(int64_t v) const { return compare(from_int(v)); }

    double to_double() const;
    /// Exact finite decimal, e.g. "5/4" prints as "1.25".
    std::string to_decimal() const;

    bool operator==(const DyadicRational&) const = default;
};

enum class BoundKind {
    brauer_lower,
    brauer_upper,
    simple,
    integral,
    backtrack,
    pothole,
    improved,
    main,
    scholz_rhs,
};

const std::vector<BoundKind>& all_bound_kinds();
std::string bound_kind_name(BoundKind kind);
std::optional<BoundKind> bound_kind_from_name(const std::string& name);

enum class IotaSource { none, search, table, fallback_upper };
std::string iota_source_name(IotaSource src);

/// iota(n) ingredient for the bound formulas that need it, together with
/// where it came from.
struct IotaIngredient {
    int64_t value = 0;
    IotaSource source = IotaSource::none;
};

struct BoundValue {
    BoundKind kind = BoundKind::simple;
    bool exact = true;
    DyadicRational rational;   // when exact
    double real = 0.0;         // when !exact
    double abs_error = 0.0;    // when !exact
    IotaSource iota_source = IotaSource::none;

    double approx() const { return exact ? rational.to_double() : real; }
    std::string to_string() const;
};

struct BoundReport {
    uint64_t n = 0;
    BoundKind kind = BoundKind::simple;
    int64_t constructed_length = 0;
    BoundValue bound;
    bool satisfied = false;
};

/// floor(log2 n) via bit length; n >= 1.
int floor_log2(uint64_t n);

/// Dyadic deficit of the j-th iterated halving: n/2^j - k_j with
/// k_0 = n, k_j = floor(k_{j-1}/2). Always in [0, 1).
DyadicRational xi(uint64_t n, int j);

/// Sum of xi(n, 1..s); zero exactly when n is a power of two.
DyadicRational theta(uint64_t n, int s);

/// Number of primes <= x, exact by sieve (x <= 1e8).
int64_t prime_count(double x);

/// Primes up to limit inclusive, shared immutable sieve.
const std::vector<uint32_t>& primes_upto(uint64_t limit);

/// Integral of dt / ln(t)^3 over [a, b], 2 <= a <= b, absolute error
/// below 1e-9 (adaptive Simpson).
double log_cube_integral(double a, double b);

/// Brauer's real-valued upper bound for iota(x) evaluated with x given by
/// its base-2 logarithm (so x = 2^n - 1 costs no big arithmetic).
double brauer_upper_from_log2(double log2_x);

/// Evaluates one bound formula at exponent n, where the audited number is
/// 2^n - 1. Kinds {pothole, improved, scholz_rhs, integral} consume the
/// iota(n) ingredient: absent iota either falls back to Brauer's upper
/// bound on iota(n) (allow_iota_fallback) or is a dependency error. The
/// integral kind additionally needs the measured binary-completion count
/// from the prime-ladder construction.
BoundValue bound_value(BoundKind kind, uint64_t n,
                       std::optional<IotaIngredient> iota = std::nullopt,
                       bool allow_iota_fallback = false,
                       std::optional<int64_t> measured_xi = std::nullopt);

/// Conservative comparison: a real-valued bound must exceed the length by
/// more than its error margin to count as satisfied.
bool bound_satisfied(int64_t constructed_length, const BoundValue& bound);

}  // namespace chainlab::bounds
