#include <doctest.h>

#include <random>

#include "chainlab/bounds.hpp"
#include "chainlab/constructors.hpp"
#include "chainlab/search.hpp"

using namespace chainlab;

namespace {

std::vector<Nat> nats(std::initializer_list<uint64_t> vs) {
    std::vector<Nat> out;
    for (uint64_t v : vs) out.push_back(Nat{v});
    return out;
}

void check_outcome(const ConstructionOutcome& o, const Nat& target) {
    CHECK(validate_chain(o.chain).ok);
    CHECK(o.chain.target == target);
    CHECK(o.base_length() + o.adjoined_count + o.filler_count ==
          static_cast<int64_t>(o.chain.length()));
    CHECK(o.base_length() >= 0);
}

}  // namespace

TEST_CASE("power_chain") {
    CHECK(power_chain(5).elements == nats({1, 2, 4, 8, 16, 32}));
    CHECK(power_chain(5).length() == 5);
    CHECK(power_chain(0).elements == nats({1}));
    CHECK(power_chain(0).length() == 0);
    CHECK(power_chain(12).length() == 12);
    CHECK(power_chain(12).target == Nat{4096});
    for (uint64_t n : {1ull, 7ull, 300ull}) CHECK(validate_chain(power_chain(n)).ok);
}

TEST_CASE("power_plus_one_chain") {
    CHECK(power_plus_one_chain(4).elements == nats({1, 2, 4, 8, 16, 17}));
    CHECK(power_plus_one_chain(4).length() == 5);
    CHECK(power_plus_one_chain(1).elements == nats({1, 2, 3}));
    CHECK(power_plus_one_chain(10).length() == 11);
    CHECK(power_plus_one_chain(10).target == Nat{1025});
    CHECK_THROWS_AS(power_plus_one_chain(0), std::invalid_argument);
}

TEST_CASE("halving_run_chain worked examples") {
    auto h4 = halving_run_chain(4);
    CHECK(h4.chain.elements == nats({1, 2, 3, 6, 12, 15}));
    CHECK(h4.chain.length() == 5);

    auto h5 = halving_run_chain(5);
    CHECK(h5.chain.elements == nats({1, 2, 3, 6, 12, 24, 30, 31}));
    CHECK(h5.chain.length() == 7);

    auto h2 = halving_run_chain(2);
    CHECK(h2.chain.elements == nats({1, 2, 3}));
    CHECK(h2.chain.length() == 2);
    CHECK(h2.adjoined_count == 0);

    CHECK_THROWS_AS(halving_run_chain(1), std::invalid_argument);
}

TEST_CASE("halving_run_chain meets its bound over the full range") {
    uint64_t violations = 0;
    for (uint64_t n = 2; n <= 2000; ++n) {
        auto o = halving_run_chain(n);
        auto r = validate_chain(o.chain);
        auto bound = bounds::bound_value(bounds::BoundKind::simple, n);
        if (!r.ok || o.chain.target != Nat::ones_run(n, 0) ||
            !bounds::bound_satisfied(static_cast<int64_t>(o.chain.length()), bound))
            ++violations;
    }
    CHECK(violations == 0);
}

TEST_CASE("prime_ladder_chain dedupes exponents across primes") {
    auto o = prime_ladder_chain(11);
    check_outcome(o, Nat::ones_run(11, 0));
    // exponent ladders {5,2,1}, {3,1}, {2} collapse to four adjoined terms
    CHECK(o.adjoined_count == 4);
    CHECK(o.adjoined_count <= 6);

    auto o3 = prime_ladder_chain(3);
    check_outcome(o3, Nat{7});
    CHECK(o3.adjoined_count == 0);  // no primes at or below 1
    CHECK(o3.chain.elements == nats({1, 2, 4, 6, 7}));

    auto o64 = prime_ladder_chain(64);
    check_outcome(o64, Nat::ones_run(64, 0));
    CHECK(o64.filler_count > 0);

    CHECK_THROWS_AS(prime_ladder_chain(2), std::invalid_argument);
}

TEST_CASE("prime_ladder_chain adjoined count stays below the prime-sum cap") {
    for (uint64_t n = 3; n <= 256; ++n) {
        auto o = prime_ladder_chain(n);
        check_outcome(o, Nat::ones_run(n, 0));
        // sum over primes p <= (n-1)/2 of floor(log_p n), all integer math
        int64_t cap = 0;
        for (uint32_t p : bounds::primes_upto((n - 1) / 2)) {
            if (2ull * p > n - 1) break;
            uint64_t q = p;
            while (q <= n) {
                ++cap;
                if (q > n / p) break;
                q *= p;
            }
        }
        CHECK(o.adjoined_count <= cap);
    }
}

TEST_CASE("backtrack_chain builds valid chains and reports against its bound") {
    auto o16 = backtrack_chain(16);
    check_outcome(o16, Nat::ones_run(16, 0));
    CHECK(bounds::bound_value(bounds::BoundKind::backtrack, 16).rational ==
          bounds::DyadicRational::from_int(35));

    auto o4 = backtrack_chain(4);
    check_outcome(o4, Nat{15});
    // tail terms 2^4 - 2^1 and 2^4 - 2^0
    CHECK(o4.chain.find(Nat{14}).has_value());
    CHECK(o4.chain.find(Nat{15}).has_value());

    for (uint64_t n = 4; n <= 300; ++n) check_outcome(backtrack_chain(n), Nat::ones_run(n, 0));
    CHECK_THROWS_AS(backtrack_chain(3), std::invalid_argument);
}

TEST_CASE("pothole_chain worked examples") {
    CHECK(pothole_chain(4).chain.elements == nats({1, 2, 4, 8, 10, 11, 15}));
    CHECK(pothole_chain(4).chain.length() == 6);
    CHECK(pothole_chain(3).chain.elements == nats({1, 2, 4, 6, 7}));
    CHECK(pothole_chain(8).chain.length() == 14);
    CHECK_THROWS_AS(pothole_chain(1), std::invalid_argument);
}

TEST_CASE("pothole_chain meets its bound with table-backed iota") {
    auto table = search::KnownValuesTable::load_file(std::string(CHAINLAB_SOURCE_DIR) +
                                                     "/data/iota-table.txt");
    uint64_t violations = 0;
    for (uint64_t n = 3; n <= 512; ++n) {
        auto o = pothole_chain(n);
        auto iota = table.find(n);
        REQUIRE(iota.has_value());
        auto bound = bounds::bound_value(bounds::BoundKind::pothole, n,
                                         bounds::IotaIngredient{*iota, bounds::IotaSource::table});
        if (!validate_chain(o.chain).ok || o.chain.target != Nat::ones_run(n, 0) ||
            !bounds::bound_satisfied(static_cast<int64_t>(o.chain.length()), bound))
            ++violations;
    }
    CHECK(violations == 0);
}

TEST_CASE("factor_pothole_chain worked examples") {
    auto o4 = factor_pothole_chain(4);
    CHECK(o4.chain.elements == nats({1, 2, 3, 6, 12, 15}));
    CHECK(o4.chain.length() == 5);

    auto o8 = factor_pothole_chain(8);
    check_outcome(o8, Nat{255});
    CHECK(o8.chain.length() <= 13);

    auto o9 = factor_pothole_chain(9);
    check_outcome(o9, Nat{511});
    CHECK(o9.chain.length() == o8.chain.length() + 2);

    CHECK_THROWS_AS(factor_pothole_chain(3), std::invalid_argument);
}

TEST_CASE("factor_pothole_chain meets the improved bound") {
    auto table = search::KnownValuesTable::load_file(std::string(CHAINLAB_SOURCE_DIR) +
                                                     "/data/iota-table.txt");
    uint64_t violations = 0;
    for (uint64_t n = 4; n <= 512; ++n) {
        auto o = factor_pothole_chain(n);
        auto iota = table.find(n);
        REQUIRE(iota.has_value());
        auto bound = bounds::bound_value(bounds::BoundKind::improved, n,
                                         bounds::IotaIngredient{*iota, bounds::IotaSource::table});
        if (!validate_chain(o.chain).ok || o.chain.target != Nat::ones_run(n, 0) ||
            !bounds::bound_satisfied(static_cast<int64_t>(o.chain.length()), bound))
            ++violations;
    }
    CHECK(violations == 0);
}

TEST_CASE("iterated_factor_chain worked examples") {
    auto o64 = iterated_factor_chain(64, 6);
    check_outcome(o64, Nat::ones_run(64, 0));
    CHECK(o64.chain.length() == 69);
    CHECK(bounds::bound_value(bounds::BoundKind::main, 64).rational ==
          bounds::DyadicRational::from_int(83));

    auto o7 = iterated_factor_chain(7);
    check_outcome(o7, Nat{127});
    CHECK(o7.chain.length() == 10);  // equals the proven iota(127)

    auto o2 = iterated_factor_chain(2);
    CHECK(o2.chain.elements == nats({1, 2, 3}));
    CHECK(o2.chain.length() == 2);

    CHECK_THROWS_AS(iterated_factor_chain(1), std::invalid_argument);
    CHECK_THROWS_AS(iterated_factor_chain(64, 0), std::invalid_argument);
    CHECK_THROWS_AS(iterated_factor_chain(64, 7), std::invalid_argument);
}

TEST_CASE("iterated_factor_chain with a small depth budget falls back to halving runs") {
    auto o = iterated_factor_chain(200, 1);
    check_outcome(o, Nat::ones_run(200, 0));
    auto deep = iterated_factor_chain(200);
    check_outcome(deep, Nat::ones_run(200, 0));
    CHECK(deep.chain.length() < o.chain.length());
}

TEST_CASE("iterated_factor_chain meets the main bound on a sample") {
    std::mt19937_64 rng(4242);
    std::vector<uint64_t> sample = {64, 65, 127, 128, 1000, 4096, 8191, 8192};
    for (int it = 0; it < 6; ++it) sample.push_back(64 + rng() % 8129);
    for (uint64_t n : sample) {
        auto o = iterated_factor_chain(n);
        check_outcome(o, Nat::ones_run(n, 0));
        auto bound = bounds::bound_value(bounds::BoundKind::main, n);
        CHECK(bounds::bound_satisfied(static_cast<int64_t>(o.chain.length()), bound));
    }
}

TEST_CASE("degree_chain worked examples") {
    auto d5 = degree_chain(5);
    CHECK(d5.elements == nats({1, 2, 4, 8, 16, 28, 31}));
    CHECK(d5.degree == 2);
    CHECK(d5.blocks[4] == std::vector<size_t>{2, 3});
    CHECK(d5.blocks[5] == std::vector<size_t>{0, 1});
    CHECK(validate_degree_d(d5).ok);
    CHECK(d5.length() == 6);

    auto d3 = degree_chain(3);
    CHECK(d3.elements == nats({1, 2, 4, 6, 7}));
    CHECK(d3.degree == 1);
    CHECK(d3.length() == 4);
    CHECK(validate_degree_d(d3).ok);

    auto d9 = degree_chain(9);
    CHECK(d9.length() == 10);
    CHECK(d9.blocks[d9.blocks.size() - 2].size() == 4);
    CHECK(d9.blocks.back().size() == 4);
    CHECK(validate_degree_d(d9).ok);

    CHECK_THROWS_AS(degree_chain(2), std::invalid_argument);
}

TEST_CASE("degree_chain: length n+1 and blocks within degree across the range") {
    uint64_t violations = 0;
    for (uint64_t n = 3; n <= 1000; ++n) {
        auto d = degree_chain(n);
        bool ok = validate_degree_d(d).ok && d.length() == n + 1 &&
                  d.degree == (n - 1) / 2 && d.target == Nat::ones_run(n, 0);
        for (const auto& block : d.blocks)
            if (block.size() > d.degree) ok = false;
        if (!ok) ++violations;
    }
    CHECK(violations == 0);
}

TEST_CASE("every constructor output validates across a sweep") {
    for (uint64_t n = 4; n <= 150; n += 7) {
        check_outcome(halving_run_chain(n), Nat::ones_run(n, 0));
        check_outcome(prime_ladder_chain(n), Nat::ones_run(n, 0));
        check_outcome(backtrack_chain(n), Nat::ones_run(n, 0));
        check_outcome(pothole_chain(n), Nat::ones_run(n, 0));
        check_outcome(factor_pothole_chain(n), Nat::ones_run(n, 0));
        check_outcome(iterated_factor_chain(n), Nat::ones_run(n, 0));
    }
}
