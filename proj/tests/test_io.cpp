#include <doctest.h>

#include <random>

#include "chainlab/chain_io.hpp"
#include "chainlab/constructors.hpp"

using namespace chainlab;

TEST_CASE("chain documents round trip byte-exactly") {
    std::mt19937_64 rng(17);
    for (int it = 0; it < 50; ++it) {
        AdditionChain c = AdditionChain::unit();
        int steps = 1 + static_cast<int>(rng() % 12);
        for (int i = 0; i < steps; ++i) {
            for (;;) {
                size_t a = rng() % c.elements.size(), b = rng() % c.elements.size();
                if (c.elements[a] + c.elements[b] > c.elements.back()) {
                    c.push_step(a, b);
                    break;
                }
            }
        }
        c.method = "test";
        std::string text = io::chain_to_text(c);
        AdditionChain parsed = io::chain_from_text(text);
        CHECK(parsed.elements == c.elements);
        CHECK(parsed.steps == c.steps);
        CHECK(parsed.target == c.target);
        CHECK(parsed.method == c.method);
        CHECK(io::chain_to_text(parsed) == text);
    }
}

TEST_CASE("big targets survive the decimal boundary") {
    auto outcome = halving_run_chain(300);
    std::string text = io::chain_to_text(outcome.chain);
    auto parsed = io::chain_from_text(text);
    CHECK(parsed.target == Nat::ones_run(300, 0));
    CHECK(io::chain_to_text(parsed) == text);
    CHECK(validate_chain(parsed).ok);
}

TEST_CASE("degree chain documents round trip") {
    DegreeDChain c = degree_chain(9);
    std::string text = io::degree_chain_to_text(c);
    CHECK(io::text_is_degree_chain(text));
    DegreeDChain parsed = io::degree_chain_from_text(text);
    CHECK(parsed.elements == c.elements);
    CHECK(parsed.blocks == c.blocks);
    CHECK(parsed.degree == c.degree);
    CHECK(io::degree_chain_to_text(parsed) == text);
    CHECK_FALSE(io::text_is_degree_chain(io::chain_to_text(power_chain(3))));
}

TEST_CASE("outcome documents carry the measurement block") {
    auto outcome = pothole_chain(8);
    auto bound = bounds::bound_value(bounds::BoundKind::pothole, 8,
                                     bounds::IotaIngredient{3, bounds::IotaSource::table});
    std::string text = io::outcome_to_text(outcome, bound, true);
    CHECK(text.find("\"adjoined_count\": 3") != std::string::npos);
    CHECK(text.find("\"filler_count\": 4") != std::string::npos);
    CHECK(text.find("\"bound\": \"15\"") != std::string::npos);
    CHECK(text.find("\"satisfied\": true") != std::string::npos);
    auto parsed = io::chain_from_text(text);  // measurement block is ignorable
    CHECK(validate_chain(parsed).ok);
}

TEST_CASE("search result documents carry provenance") {
    search::SearchResult r;
    r.n = Nat{15};
    r.witness = io::chain_from_text(io::chain_to_text(power_chain(2)));
    r.witness.method = "search";
    r.nodes_expanded = 42;
    r.proven_optimal = true;
    std::string text = io::search_result_to_text(r);
    CHECK(text.find("\"nodes_expanded\": 42") != std::string::npos);
    CHECK(text.find("\"proven_optimal\": true") != std::string::npos);
}

TEST_CASE("malformed documents raise parse errors") {
    CHECK_THROWS_AS(io::chain_from_text("{ \"target\": \"3"), std::runtime_error);
    CHECK_THROWS_AS(io::chain_from_text("{}"), std::runtime_error);
    CHECK_THROWS_AS(io::chain_from_text("{\"target\":\"3\",\"elements\":[\"1\"],\"steps\":[[0]]}"),
                    std::runtime_error);
    CHECK_THROWS_AS(io::read_file("/nonexistent/chain.json"), std::runtime_error);
}
