#pragma once

#include <string>

#include "chainlab/bounds.hpp"
#include "chainlab/chain.hpp"
#include "chainlab/constructors.hpp"
#include "chainlab/search.hpp"

namespace chainlab::io {

/// Canonical chain document: target (decimal string), elements (decimal
/// strings), steps ([left, right] pairs), method. Serialization is
/// deterministic so files round-trip byte-exactly.
std::string chain_to_text(const AdditionChain& chain);
AdditionChain chain_from_text(const std::string& text);

std::string degree_chain_to_text(const DegreeDChain& chain);
DegreeDChain degree_chain_from_text(const std::string& text);

/// Chain document plus the measurement block (method, adjoined/filler
/// counts, bound, satisfied).
std::string outcome_to_text(const ConstructionOutcome& outcome,
                            const bounds::BoundValue& bound, bool satisfied);

/// Chain document plus nodes_expanded and proven_optimal.
std::string search_result_to_text(const search::SearchResult& result);

/// True when the document carries a degree-d chain (a "blocks" field).
bool text_is_degree_chain(const std::string& text);

void write_file(const std::string& path, const std::string& text);
std::string read_file(const std::string& path);

}  // namespace chainlab::io
