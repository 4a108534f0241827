#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "chainlab/bounds.hpp"

using namespace chainlab::bounds;

TEST_CASE("dyadic rationals normalize, add, compare, print") {
    auto half = DyadicRational::make(1, 1);
    auto quarter = DyadicRational::make(1, 2);
    CHECK(DyadicRational::make(4, 2) == DyadicRational::from_int(1));
    CHECK((half + quarter) == DyadicRational::make(3, 2));
    CHECK((half - quarter) == quarter);
    CHECK(half.compare(quarter) > 0);
    CHECK(quarter.compare_int(1) < 0);
    CHECK(DyadicRational::make(5, 2).to_decimal() == "1.25");
    CHECK(DyadicRational::make(3, 1).to_decimal() == "1.5");
    CHECK(DyadicRational::from_int(83).to_decimal() == "83");
    CHECK(DyadicRational::make(-5, 2).to_decimal() == "-1.25");
    CHECK(half.to_double() == 0.5);
}

TEST_CASE("xi values") {
    CHECK(xi(7, 1) == DyadicRational::make(1, 1));
    CHECK(xi(7, 2) == DyadicRational::make(3, 2));
    CHECK(xi(6, 1) == DyadicRational::from_int(0));
    CHECK(xi(6, 2) == DyadicRational::make(1, 1));
    for (int r = 1; r <= 16; ++r)
        for (int j = 1; j <= r; ++j)
            CHECK(xi(uint64_t{1} << r, j) == DyadicRational::from_int(0));
    CHECK_THROWS_AS(xi(7, 0), std::out_of_range);
    CHECK_THROWS_AS(xi(7, 3), std::out_of_range);
    CHECK_THROWS_AS(xi(1, 1), std::invalid_argument);
}

TEST_CASE("xi stays in [0,1) for every n up to 1e5") {
    uint64_t violations = 0, checked = 0;
    for (uint64_t n = 2; n <= 100000; ++n) {
        int lam = floor_log2(n);
        for (int j = 1; j <= lam; ++j) {
            auto v = xi(n, j);
            if (v.compare_int(0) < 0 || v.compare_int(1) >= 0) ++violations;
            ++checked;
        }
    }
    CHECK(violations == 0);
    CHECK(checked > 1500000 / 2);
}

TEST_CASE("theta sums xi and is monotone in s") {
    CHECK(theta(7, 2) == DyadicRational::make(5, 2));
    CHECK(theta(6, 2) == DyadicRational::make(1, 1));
    CHECK(theta(64, 6) == DyadicRational::from_int(0));
    for (uint64_t n : {6ull, 7ull, 100ull, 999ull, 4097ull, 99999ull}) {
        DyadicRational prev{};
        for (int s = 1; s <= floor_log2(n); ++s) {
            auto t = theta(n, s);
            CHECK(t.compare(prev) >= 0);
            prev = t;
        }
    }
    CHECK_THROWS_AS(theta(8, 4), std::out_of_range);
}

TEST_CASE("floor_log2 equals bit length minus one") {
    for (uint64_t n = 1; n <= 1000000; ++n) {
        int expected = 0;
        while ((uint64_t{1} << (expected + 1)) <= n) ++expected;
        if (floor_log2(n) != expected) {
            REQUIRE(floor_log2(n) == expected);
        }
    }
    CHECK_THROWS_AS(floor_log2(0), std::invalid_argument);
}

TEST_CASE("prime counting") {
    CHECK(prime_count(10) == 4);
    CHECK(prime_count(100) == 25);
    CHECK(prime_count(1000) == 168);
    CHECK(prime_count(1000000) == 78498);
    CHECK(prime_count(1.9) == 0);
    CHECK(prime_count(2.0) == 1);
    CHECK_THROWS_AS(prime_count(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(prime_count(2e8), std::invalid_argument);
    const auto& primes = primes_upto(30);
    CHECK(primes[0] == 2);
    CHECK(primes[1] == 3);
}

namespace {
// Independent quadrature route: composite Simpson on a fixed fine mesh.
double dense_simpson(double a, double b) {
    const int k = 200000;
    double h = (b - a) / (2 * k);
    auto f = [](double t) {
        double l = std::log(t);
        return 1.0 / (l * l * l);
    };
    double sum = f(a) + f(b);
    for (int i = 1; i < 2 * k; ++i) sum += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return sum * h / 3.0;
}
}  // namespace

TEST_CASE("adaptive integral matches an independent dense rule") {
    CHECK(log_cube_integral(2, 2) == 0.0);
    for (auto [a, b] : {std::pair{2.0, 5.0}, {2.0, 31.5}, {3.0, 255.5}, {2.0, 4095.5}}) {
        double adaptive = log_cube_integral(a, b);
        double reference = dense_simpson(a, b);
        CHECK(std::abs(adaptive - reference) < 1e-8);
    }
    CHECK_THROWS_AS(log_cube_integral(1.0, 5.0), std::invalid_argument);
    CHECK_THROWS_AS(log_cube_integral(5.0, 2.0), std::invalid_argument);
}

TEST_CASE("brauer upper bound formula cross-check") {
    // independent recomputation at r = 2^64 - 1
    const double ln2 = std::log(2.0);
    double log2r = 64.0 + std::log1p(-std::ldexp(1.0, -64)) / ln2;
    double lnr = log2r * ln2;
    double expected = log2r * (1.0 + 1.0 / std::log(lnr) + 2.0 * ln2 / std::exp((1.0 - ln2) * std::log(lnr)));
    CHECK(brauer_upper_from_log2(log2r) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(brauer_upper_from_log2(64.0) > 64.0);
    CHECK_THROWS_AS(brauer_upper_from_log2(1.0), std::invalid_argument);
}

TEST_CASE("bound_value matches the worked spot values") {
    CHECK(bound_value(BoundKind::simple, 4).rational == DyadicRational::from_int(6));
    CHECK(bound_value(BoundKind::main, 64).rational == DyadicRational::from_int(83));
    CHECK(bound_value(BoundKind::backtrack, 16).rational == DyadicRational::from_int(35));

    IotaIngredient iota8{3, IotaSource::search};
    CHECK(bound_value(BoundKind::pothole, 8, iota8).rational == DyadicRational::from_int(15));
    IotaIngredient iota10{4, IotaSource::search};
    CHECK(bound_value(BoundKind::scholz_rhs, 10, iota10).rational == DyadicRational::from_int(13));
    IotaIngredient iota8b{3, IotaSource::table};
    CHECK(bound_value(BoundKind::improved, 8, iota8b).rational == DyadicRational::from_int(13));

    auto lower2 = bound_value(BoundKind::brauer_lower, 2);
    CHECK(lower2.real == doctest::Approx(0.0).epsilon(1e-9));

    // power-of-two backtrack: floor term vanishes, bound is 2n - 1 + log2 n
    for (int r = 2; r <= 12; ++r) {
        uint64_t n = uint64_t{1} << r;
        CHECK(bound_value(BoundKind::backtrack, n).rational ==
              DyadicRational::from_int(2 * static_cast<int64_t>(n) - 1 + r));
    }
}

TEST_CASE("bound_value iota plumbing") {
    CHECK_THROWS_AS(bound_value(BoundKind::pothole, 8), std::runtime_error);
    auto fb = bound_value(BoundKind::pothole, 8, std::nullopt, /*allow_iota_fallback=*/true);
    CHECK_FALSE(fb.exact);
    CHECK(fb.iota_source == IotaSource::fallback_upper);
    CHECK(fb.real > bound_value(BoundKind::pothole, 8, IotaIngredient{3, IotaSource::search})
                        .rational.to_double());
    CHECK_THROWS_AS(bound_value(BoundKind::integral, 8, IotaIngredient{3, IotaSource::search}),
                    std::runtime_error);  // measured filler missing
    CHECK_THROWS_AS(bound_value(BoundKind::simple, 1), std::invalid_argument);
}

TEST_CASE("satisfied comparisons are conservative on real bounds") {
    BoundValue real;
    real.exact = false;
    real.real = 10.0;
    real.abs_error = 1e-9;
    CHECK(bound_satisfied(9, real));
    CHECK_FALSE(bound_satisfied(10, real));  // within the error margin: not claimed

    BoundValue exact;
    exact.exact = true;
    exact.rational = DyadicRational::from_int(10);
    CHECK(bound_satisfied(10, exact));
    CHECK_FALSE(bound_satisfied(11, exact));
}

TEST_CASE("main bound is stronger than brauer upper at 2^n - 1") {
    uint64_t violations = 0;
    for (uint64_t n = 64; n <= 4096; ++n) {
        auto main_b = bound_value(BoundKind::main, n);
        auto upper = bound_value(BoundKind::brauer_upper, n);
        if (!(main_b.rational.to_double() < upper.real - upper.abs_error)) ++violations;
    }
    CHECK(violations == 0);
}

TEST_CASE("scholz rhs never exceeds the simple bound when iota is small enough") {
    // iota(n) <= floor((n-2)/2) + 2 implies n - 1 + iota(n) <= n + 1 + floor((n-2)/2)
    for (uint64_t n = 2; n <= 64; ++n) {
        int64_t iota_cap = static_cast<int64_t>((n - 2) / 2) + 2;
        IotaIngredient ing{iota_cap, IotaSource::table};
        auto rhs = bound_value(BoundKind::scholz_rhs, n, ing);
        auto simple = bound_value(BoundKind::simple, n);
        CHECK(rhs.rational.compare(simple.rational) <= 0);
    }
}

TEST_CASE("kind names round trip") {
    for (BoundKind k : all_bound_kinds()) {
        auto back = bound_kind_from_name(bound_kind_name(k));
        REQUIRE(back.has_value());
        CHECK(*back == k);
    }
    CHECK_FALSE(bound_kind_from_name("nope").has_value());
}
