#include "chainlab/chain_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace chainlab::io {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json chain_body(const AdditionChain& chain) {
    ordered_json doc;
    doc["target"] = chain.target.to_decimal();
    ordered_json elems = ordered_json::array();
    for (const Nat& e : chain.elements) elems.push_back(e.to_decimal());
    doc["elements"] = std::move(elems);
    ordered_json steps = ordered_json::array();
    for (const Step& s : chain.steps) steps.push_back({s.left, s.right});
    doc["steps"] = std::move(steps);
    doc["method"] = chain.method;
    return doc;
}

AdditionChain chain_from_json(const ordered_json& doc) {
    AdditionChain chain;
    chain.target = Nat::from_decimal(doc.at("target").get<std::string>());
    for (const auto& e : doc.at("elements"))
        chain.elements.push_back(Nat::from_decimal(e.get<std::string>()));
    for (const auto& s : doc.at("steps")) {
        if (!s.is_array() || s.size() != 2)
            throw std::runtime_error("chain document: step is not a [left, right] pair");
        chain.steps.push_back(Step{s.at(0).get<size_t>(), s.at(1).get<size_t>()});
    }
    chain.method = doc.value("method", "");
    return chain;
}

std::string dump(const ordered_json& doc) { return doc.dump(2) + "\n"; }

ordered_json parse(const std::string& text) {
    try {
        return ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("chain document parse error: ") + e.what());
    }
}

}  // namespace

std::string chain_to_text(const AdditionChain& chain) { return dump(chain_body(chain)); }

AdditionChain chain_from_text(const std::string& text) {
    try {
        return chain_from_json(parse(text));
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("chain document parse error: ") + e.what());
    }
}

std::string degree_chain_to_text(const DegreeDChain& chain) {
    ordered_json doc;
    doc["target"] = chain.target.to_decimal();
    ordered_json elems = ordered_json::array();
    for (const Nat& e : chain.elements) elems.push_back(e.to_decimal());
    doc["elements"] = std::move(elems);
    ordered_json blocks = ordered_json::array();
    for (const auto& b : chain.blocks) blocks.push_back(b);
    doc["blocks"] = std::move(blocks);
    doc["degree"] = chain.degree;
    doc["method"] = "degree";
    return dump(doc);
}

DegreeDChain degree_chain_from_text(const std::string& text) {
    try {
        ordered_json doc = parse(text);
        DegreeDChain chain;
        chain.target = Nat::from_decimal(doc.at("target").get<std::string>());
        for (const auto& e : doc.at("elements"))
            chain.elements.push_back(Nat::from_decimal(e.get<std::string>()));
        for (const auto& b : doc.at("blocks"))
            chain.blocks.push_back(b.get<std::vector<size_t>>());
        chain.degree = doc.at("degree").get<size_t>();
        return chain;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("chain document parse error: ") + e.what());
    }
}

std::string outcome_to_text(const ConstructionOutcome& outcome, const bounds::BoundValue& bound,
                            bool satisfied) {
    ordered_json doc = chain_body(outcome.chain);
    doc["method"] = outcome.method;
    ordered_json m;
    m["method"] = outcome.method;
    m["adjoined_count"] = outcome.adjoined_count;
    m["filler_count"] = outcome.filler_count;
    m["bound"] = bound.to_string();
    m["satisfied"] = satisfied;
    doc["measurement"] = std::move(m);
    return dump(doc);
}

std::string search_result_to_text(const search::SearchResult& result) {
    ordered_json doc = chain_body(result.witness);
    doc["method"] = result.star_only ? "search-star" : "search";
    doc["nodes_expanded"] = result.nodes_expanded;
    doc["proven_optimal"] = result.proven_optimal;
    return dump(doc);
}

bool text_is_degree_chain(const std::string& text) {
    ordered_json doc = parse(text);
    return doc.contains("blocks");
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace chainlab::io
