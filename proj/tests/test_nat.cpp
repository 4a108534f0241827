#include <doctest.h>

#include <random>

#include "chainlab/nat.hpp"

using chainlab::Nat;

TEST_CASE("small values and decimal round trip") {
    CHECK(Nat{0}.is_zero());
    CHECK(Nat{0}.to_decimal() == "0");
    CHECK(Nat{1}.to_decimal() == "1");
    CHECK(Nat{18446744073709551615ull}.to_decimal() == "18446744073709551615");
    CHECK(Nat::from_decimal("18446744073709551616") == Nat::pow2(64));
    CHECK(Nat::pow2(64).to_decimal() == "18446744073709551616");
    CHECK(Nat::ones_run(127, 0).to_decimal() == "170141183460469231731687303715884105727");
    CHECK(Nat::from_decimal("000123") == Nat{123});
}

TEST_CASE("from_decimal rejects junk") {
    CHECK_THROWS_AS(Nat::from_decimal(""), std::invalid_argument);
    CHECK_THROWS_AS(Nat::from_decimal("12a3"), std::invalid_argument);
    CHECK_THROWS_AS(Nat::from_decimal("-5"), std::invalid_argument);
}

TEST_CASE("arithmetic agrees with native 64-bit on random inputs") {
    std::mt19937_64 rng(20240901);
    for (int it = 0; it < 5000; ++it) {
        uint64_t a = rng() >> 33, b = rng() >> 33;
        if (a < b) std::swap(a, b);
        CHECK((Nat{a} + Nat{b}).to_u64() == a + b);
        CHECK((Nat{a} - Nat{b}).to_u64() == a - b);
        CHECK((Nat{a} * Nat{b}).to_u64() == a * b);
        CHECK((Nat{a} <=> Nat{b}) == (a <=> b));
    }
}

TEST_CASE("wide values round trip and shift") {
    std::mt19937_64 rng(7);
    for (int it = 0; it < 200; ++it) {
        Nat x;
        for (int part = 0; part < 5; ++part) x = (x << 61) + Nat{rng() >> 3};
        CHECK(Nat::from_decimal(x.to_decimal()) == x);
        CHECK((x << 64) == x * Nat::pow2(64));
    }
}

TEST_CASE("bit_length, popcount, bit") {
    CHECK(Nat{0}.bit_length() == 0);
    CHECK(Nat{1}.bit_length() == 1);
    CHECK(Nat::pow2(100).bit_length() == 101);
    CHECK(Nat::ones_run(100, 0).bit_length() == 100);
    CHECK(Nat::ones_run(100, 0).popcount() == 100);
    CHECK(Nat::ones_run(100, 37).popcount() == 63);
    CHECK(Nat::ones_run(100, 37).bit(36) == false);
    CHECK(Nat::ones_run(100, 37).bit(37) == true);
    CHECK(Nat::ones_run(100, 37).bit(99) == true);
    CHECK(Nat::ones_run(100, 37).bit(100) == false);
}

TEST_CASE("ones_run equals subtraction of powers") {
    for (size_t hi = 1; hi <= 200; hi += 13) {
        for (size_t lo = 0; lo <= hi; lo += 7) {
            CHECK(Nat::ones_run(hi, lo) == Nat::pow2(hi) - Nat::pow2(lo));
        }
    }
    CHECK(Nat::ones_run(5, 5).is_zero());
    CHECK_THROWS_AS(Nat::ones_run(3, 4), std::invalid_argument);
}

TEST_CASE("subtraction underflow and to_u64 overflow throw") {
    CHECK_THROWS_AS(Nat{3} - Nat{5}, std::underflow_error);
    CHECK_THROWS_AS(Nat::pow2(64).to_u64(), std::overflow_error);
}

TEST_CASE("mersenne arithmetic identity") {
    // (2^k - 1)(2^k + 1) = 2^(2k) - 1
    for (size_t k : {3u, 17u, 64u, 1000u}) {
        Nat lhs = Nat::ones_run(k, 0) * (Nat::pow2(k) + Nat{1});
        CHECK(lhs == Nat::ones_run(2 * k, 0));
    }
}
