#include "chainlab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

namespace chainlab::bounds {

namespace {

int64_t pow2_i64(int e) { return int64_t{1} << e; }

}  // namespace

DyadicRational DyadicRational::make(int64_t num, int exp) {
    if (exp < 0) throw std::invalid_argument("DyadicRational: negative exponent");
    while (exp > 0 && num % 2 == 0) {
        num /= 2;
        --exp;
    }
    if (num == 0) exp = 0;
    return DyadicRational{num, exp};
}

DyadicRational DyadicRational::operator+(const DyadicRational& o) const {
    int e = std::max(exponent, o.exponent);
    return make(numerator * pow2_i64(e - exponent) + o.numerator * pow2_i64(e - o.exponent), e);
}

DyadicRational DyadicRational::operator-(const DyadicRational& o) const {
    int e = std::max(exponent, o.exponent);
    return make(numerator * pow2_i64(e - exponent) - o.numerator * pow2_i64(e - o.exponent), e);
}

int DyadicRational::compare(const DyadicRational& o) const {
    DyadicRational d = *this - o;
    return d.numerator < 0 ? -1 : d.numerator > 0 ? 1 : 0;
}

double DyadicRational::to_double() const {
    return std::ldexp(static_cast<double>(numerator), -exponent);
}

std::string DyadicRational::to_decimal() const {
    if (exponent == 0) return std::to_string(numerator);
    bool neg = numerator < 0;
    uint64_t mag = neg ? static_cast<uint64_t>(-numerator) : static_cast<uint64_t>(numerator);
    uint64_t whole = mag >> exponent;
    uint64_t frac = mag - (whole << exponent);
    std::string digits;
    // frac / 2^e written exactly: multiply by 5 and shift per digit
    int e = exponent;
    while (frac != 0) {
        frac *= 5;
        --e;
        digits += static_cast<char>('0' + (frac >> e));
        frac &= (uint64_t{1} << e) - 1;
    }
    std::string out = (neg ? "-" : "") + std::to_string(whole) + "." + digits;
    return out;
}

const std::vector<BoundKind>& all_bound_kinds() {
    static const std::vector<BoundKind> kinds = {
        BoundKind::brauer_lower, BoundKind::brauer_upper, BoundKind::simple,
        BoundKind::integral,     BoundKind::backtrack,    BoundKind::pothole,
        BoundKind::improved,     BoundKind::main,         BoundKind::scholz_rhs,
    };
    return kinds;
}

std::string bound_kind_name(BoundKind kind) {
    switch (kind) {
        case BoundKind::brauer_lower: return "brauer_lower";
        case BoundKind::brauer_upper: return "brauer_upper";
        case BoundKind::simple: return "simple";
        case BoundKind::integral: return "integral";
        case BoundKind::backtrack: return "backtrack";
        case BoundKind::pothole: return "pothole";
        case BoundKind::improved: return "improved";
        case BoundKind::main: return "main";
        case BoundKind::scholz_rhs: return "scholz_rhs";
    }
    return "?";
}

std::optional<BoundKind> bound_kind_from_name(const std::string& name) {
    for (BoundKind k : all_bound_kinds())
        if (bound_kind_name(k) == name) return k;
    return std::nullopt;
}

std::string iota_source_name(IotaSource src) {
    switch (src) {
        case IotaSource::none: return "-";
        case IotaSource::search: return "search";
        case IotaSource::table: return "table";
        case IotaSource::fallback_upper: return "fallback-upper";
    }
    return "?";
}

std::string BoundValue::to_string() const {
    if (exact) return rational.to_decimal();
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9f", real);
    return buf;
}

int floor_log2(uint64_t n) {
    if (n == 0) throw std::invalid_argument("floor_log2: n must be positive");
    return 63 - __builtin_clzll(n);
}

DyadicRational xi(uint64_t n, int j) {
    if (n < 2) throw std::invalid_argument("xi: n must be at least 2");
    if (j < 1 || j > floor_log2(n)) throw std::out_of_range("xi: j out of range");
    uint64_t k = n;
    for (int i = 0; i < j; ++i) k /= 2;
    // n / 2^j - k_j, exactly
    return DyadicRational::make(static_cast<int64_t>(n - (k << j)), j);
}

DyadicRational theta(uint64_t n, int s) {
    if (n < 2) throw std::invalid_argument("theta: n must be at least 2");
    if (s < 1 || s > floor_log2(n)) throw std::out_of_range("theta: s out of range");
    DyadicRational sum{};
    for (int j = 1; j <= s; ++j) sum = sum + xi(n, j);
    return sum;
}

namespace {

struct Sieve {
    std::vector<uint32_t> primes;
    uint64_t limit = 0;
};

const Sieve& sieve_upto(uint64_t limit) {
    static Sieve cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    if (limit > 100'000'000) throw std::invalid_argument("prime sieve limited to 1e8");
    if (cache.limit >= std::max<uint64_t>(limit, 2)) return cache;
    uint64_t n = std::max<uint64_t>(limit, 1000);
    std::vector<bool> composite(n + 1, false);
    Sieve fresh;
    fresh.limit = n;
    for (uint64_t p = 2; p <= n; ++p) {
        if (composite[p]) continue;
        fresh.primes.push_back(static_cast<uint32_t>(p));
        for (uint64_t m = p * p; m <= n; m += p) composite[m] = true;
    }
    cache = std::move(fresh);
    return cache;
}

}  // namespace

const std::vector<uint32_t>& primes_upto(uint64_t limit) { return sieve_upto(limit).primes; }

int64_t prime_count(double x) {
    if (x < 0 || x > 1e8) throw std::invalid_argument("prime_count: x out of range");
    if (x < 2) return 0;
    uint64_t xi_ = static_cast<uint64_t>(std::floor(x));
    const auto& primes = primes_upto(xi_);
    auto it = std::upper_bound(primes.begin(), primes.end(), static_cast<uint32_t>(xi_));
    return static_cast<int64_t>(it - primes.begin());
}

namespace {

double log_cube(double t) {
    double l = std::log(t);
    return 1.0 / (l * l * l);
}

double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive(double a, double b, double fa, double fm, double fb, double whole, double eps,
                int depth) {
    double m = (a + b) / 2;
    double lm = (a + m) / 2, rm = (m + b) / 2;
    double flm = log_cube(lm), frm = log_cube(rm);
    double left = simpson(a, m, fa, flm, fm);
    double right = simpson(m, b, fm, frm, fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15 * eps)
        return left + right + (left + right - whole) / 15.0;
    return adaptive(a, m, fa, flm, fm, left, eps / 2, depth - 1) +
           adaptive(m, b, fm, frm, fb, right, eps / 2, depth - 1);
}

}  // namespace

double log_cube_integral(double a, double b) {
    if (!(a >= 2.0) || !(b >= a)) throw std::invalid_argument("log_cube_integral: need 2 <= a <= b");
    if (a == b) return 0.0;
    double fa = log_cube(a), fb = log_cube(b), fm = log_cube((a + b) / 2);
    double whole = simpson(a, b, fa, fm, fb);
    return adaptive(a, b, fa, fm, fb, whole, 1e-12, 48);
}

double brauer_upper_from_log2(double log2_x) {
    constexpr double ln2 = 0.693147180559945309417232121458;
    double ln_x = log2_x * ln2;
    if (ln_x <= 1.0)
        throw std::invalid_argument("brauer_upper: argument too small for the correction terms");
    return log2_x * (1.0 + 1.0 / std::log(ln_x) + 2.0 * ln2 / std::pow(ln_x, 1.0 - ln2));
}

namespace {

double log2_of_pow2n_minus_1(uint64_t n) {
    // log2(2^n - 1) = n + log2(1 - 2^-n)
    if (n >= 64) return static_cast<double>(n) + std::log1p(-std::ldexp(1.0, -static_cast<int>(n))) / M_LN2;
    return std::log2(static_cast<double>((uint64_t{1} << n) - 1));
}

BoundValue exact_bound(BoundKind kind, DyadicRational v, IotaSource src = IotaSource::none) {
    BoundValue b;
    b.kind = kind;
    b.exact = true;
    b.rational = v;
    b.iota_source = src;
    return b;
}

BoundValue real_bound(BoundKind kind, double v, double err, IotaSource src = IotaSource::none) {
    BoundValue b;
    b.kind = kind;
    b.exact = false;
    b.real = v;
    b.abs_error = err;
    b.iota_source = src;
    return b;
}

}  // namespace

BoundValue bound_value(BoundKind kind, uint64_t n, std::optional<IotaIngredient> iota,
                       bool allow_iota_fallback, std::optional<int64_t> measured_xi) {
    if (n < 2) throw std::invalid_argument("bound_value: n must be at least 2");
    const int lam = floor_log2(n);
    const int64_t ni = static_cast<int64_t>(n);

    const bool needs_iota = kind == BoundKind::integral || kind == BoundKind::pothole ||
                            kind == BoundKind::improved || kind == BoundKind::scholz_rhs;
    bool iota_exact = iota.has_value();
    double iota_real = 0.0;
    IotaSource src = iota ? iota->source : IotaSource::none;
    if (needs_iota && !iota) {
        if (!allow_iota_fallback)
            throw std::runtime_error("bound_value: iota(n) required for kind " +
                                     bound_kind_name(kind));
        if (n < 3) throw std::runtime_error("bound_value: no iota fallback below n=3");
        iota_real = brauer_upper_from_log2(std::log2(static_cast<double>(n)));
        src = IotaSource::fallback_upper;
    }
    auto iota_term = [&]() -> int64_t { return iota->value; };

    switch (kind) {
        case BoundKind::brauer_lower:
            return real_bound(kind, std::log2(static_cast<double>(n)) - 1.0, 1e-12);
        case BoundKind::brauer_upper:
            return real_bound(kind, brauer_upper_from_log2(log2_of_pow2n_minus_1(n)), 1e-9);
        case BoundKind::simple:
            return exact_bound(kind, DyadicRational::from_int(ni + 1 + (ni - 2) / 2));
        case BoundKind::integral: {
            if (!measured_xi)
                throw std::runtime_error("bound_value: integral kind needs the measured filler count");
            double upper = (static_cast<double>(n) - 1.0) / 2.0;
            double quad = upper > 2.0 ? log_cube_integral(2.0, upper) : 0.0;
            double ln_n = std::log(static_cast<double>(n));
            double value = static_cast<double>(n) + (iota_exact ? static_cast<double>(iota_term()) : iota_real) +
                           static_cast<double>(n) / ln_n + 1.3 * ln_n * quad +
                           static_cast<double>(*measured_xi);
            return real_bound(kind, value, 1e-9, src);
        }
        case BoundKind::backtrack: {
            int64_t f = static_cast<int64_t>((n - 1) >> lam);
            return exact_bound(kind, DyadicRational::from_int(2 * ni - 1 - 2 * f + lam));
        }
        case BoundKind::pothole: {
            int64_t f = static_cast<int64_t>((n - 1) >> lam);
            DyadicRational base = DyadicRational::from_int(2 * ni - 1 - f - lam);
            if (iota_exact) return exact_bound(kind, base + DyadicRational::from_int(iota_term()), src);
            return real_bound(kind, base.to_double() + iota_real, 1e-9, src);
        }
        case BoundKind::improved: {
            int64_t f = static_cast<int64_t>((n - 2) >> lam);
            DyadicRational base = DyadicRational::make(3 * ni, 1) -
                                  DyadicRational::from_int(f + lam - 1) +
                                  DyadicRational::make((n % 2 == 1) ? 1 : 0, 1);
            if (iota_exact) return exact_bound(kind, base + DyadicRational::from_int(iota_term()), src);
            return real_bound(kind, base.to_double() + iota_real, 1e-9, src);
        }
        case BoundKind::main:
            return exact_bound(kind, DyadicRational::from_int(ni + 1 + 3 * lam) - theta(n, lam));
        case BoundKind::scholz_rhs: {
            if (iota_exact)
                return exact_bound(kind, DyadicRational::from_int(ni - 1 + iota_term()), src);
            return real_bound(kind, static_cast<double>(ni - 1) + iota_real, 1e-9, src);
        }
    }
    throw std::logic_error("bound_value: unknown kind");
}

bool bound_satisfied(int64_t constructed_length, const BoundValue& bound) {
    if (bound.exact) return bound.rational.compare_int(constructed_length) >= 0;
    return static_cast<double>(constructed_length) + bound.abs_error <= bound.real;
}

}  // namespace chainlab::bounds
