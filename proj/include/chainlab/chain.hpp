#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "chainlab/nat.hpp"

namespace chainlab {

/// One generated element's provenance: the indices of its two summands.
/// Both indices refer to strictly earlier elements; left <= right.
struct Step {
    size_t left = 0;
    size_t right = 0;
    bool operator==(const Step&) const = default;
};

/// An addition chain: 1 = e_0 < e_1 < ... < e_k = target, each e_i
/// (i >= 1) the sum of two earlier elements named by steps[i-1].
/// Length is element count minus one (the leading 1 is free).
struct AdditionChain {
    std::vector<Nat> elements;
    std::vector<Step> steps;
    Nat target;
    std::string method;

    size_t length() const { return elements.empty() ? 0 : elements.size() - 1; }

    /// The chain producing 1.
    static AdditionChain unit() {
        AdditionChain c;
        c.elements.push_back(Nat{1});
        c.target = Nat{1};
        return c;
    }

    /// Appends elements[left] + elements[right] with its step record and
    /// keeps target on the new last element. Throws if the sum does not
    /// strictly ascend.
    void push_step(size_t left, size_t right);

    /// Index of an element equal to v, if present (elements are sorted).
    std::optional<size_t> find(const Nat& v) const;
};

struct ValidationReport {
    bool ok = true;
    size_t index = 0;       // first failing element index when !ok
    std::string message;
};

/// Checks every AdditionChain invariant; violations become report content,
/// never exceptions.
ValidationReport validate_chain(const AdditionChain& chain);

/// True iff every step uses the immediately preceding element as one
/// summand. Requires a valid chain.
bool is_star(const AdditionChain& chain);

/// Determiner/regulator view of a star chain: element i (i >= 1) splits as
/// determiners[i-1] + regulators[i-1] with the determiner the immediately
/// preceding element. Empty when the chain is not star.
struct StarView {
    std::vector<Nat> determiners;
    std::vector<Nat> regulators;
};
std::optional<StarView> star_view(const AdditionChain& chain);

/// Chain for a*b: a's chain followed by a-scaled copies of b's elements
/// past the leading 1. Length adds exactly.
AdditionChain chain_product(const AdditionChain& a_chain, const AdditionChain& b_chain);

/// Extends a chain for m to one for 2m+1 (two steps: double, then +1).
AdditionChain double_plus_one_extend(const AdditionChain& chain);

/// Generalized chain of degree d: elements[k] = elements[k-1] + the sum of
/// the block's referenced elements, block size between 1 and d.
struct DegreeDChain {
    std::vector<Nat> elements;
    std::vector<std::vector<size_t>> blocks;  // multisets, stored sorted
    size_t degree = 1;
    Nat target;

    size_t length() const { return elements.empty() ? 0 : elements.size() - 1; }
};

ValidationReport validate_degree_d(const DegreeDChain& chain);

/// Degree-1 chains are exactly star addition chains; the conversions are
/// lossless inverses of one another.
AdditionChain degree1_to_star(const DegreeDChain& chain);
DegreeDChain star_to_degree1(const AdditionChain& chain);

/// Stabilizer entry: a non-negative offset by definition, but malformed
/// witnesses may carry a negative one (then the witness checks false).
struct SignedNat {
    Nat magnitude;
    bool negative = false;
};

struct StabilizerPair {
    SignedNat v;  // determiner stabilizer
    SignedNat d;  // regulator stabilizer
};

/// Witness that chain a is equivalent to chain b: a prefix of b (the
/// complete sub-addition chain) whose determiners/regulators differ from
/// a's by the given stabilizers.
struct EquivalenceWitness {
    std::vector<size_t> sub_indices;           // must select a prefix of b
    std::vector<StabilizerPair> stabilizer_pairs;  // one per generator of the prefix
};

/// Verifies the witness: for each generator i of the selected prefix,
/// b's determiner g_i == a_i - v_i and b's regulator h_i == r_i - d_i.
/// The prefix must pair up with a term-for-term, so a true result implies
/// length(a) <= length(b). Both chains must be valid star chains;
/// structurally broken witnesses (out-of-range indices, non-prefix
/// selection, count mismatch) throw.
bool check_equivalence_witness(const AdditionChain& a, const AdditionChain& b,
                               const EquivalenceWitness& w);

}  // namespace chainlab
