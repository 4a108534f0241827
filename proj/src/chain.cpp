#include "chainlab/chain.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace chainlab {

void AdditionChain::push_step(size_t left, size_t right) {
    if (left > right) std::swap(left, right);
    if (right >= elements.size())
        throw std::out_of_range("push_step: summand index out of range");
    Nat v = elements[left] + elements[right];
    if (!(v > elements.back()))
        throw std::invalid_argument("push_step: sum does not ascend");
    elements.push_back(std::move(v));
    steps.push_back(Step{left, right});
    target = elements.back();
}

std::optional<size_t> AdditionChain::find(const Nat& v) const {
    auto it = std::lower_bound(elements.begin(), elements.end(), v);
    if (it != elements.end() && *it == v)
        return static_cast<size_t>(it - elements.begin());
    return std::nullopt;
}

ValidationReport validate_chain(const AdditionChain& chain) {
    auto fail = [](size_t idx, std::string msg) {
        return ValidationReport{false, idx, std::move(msg)};
    };
    if (chain.elements.empty()) return fail(0, "chain has no elements");
    if (chain.elements[0] != Nat{1}) return fail(0, "first element is not 1");
    if (chain.steps.size() + 1 != chain.elements.size())
        return fail(chain.elements.size() - 1, "step count does not match element count");
    for (size_t k = 1; k < chain.elements.size(); ++k) {
        if (!(chain.elements[k] > chain.elements[k - 1]))
            return fail(k, "elements not strictly increasing");
        const Step& s = chain.steps[k - 1];
        if (s.left > s.right) return fail(k, "step has left > right");
        if (s.right >= k) return fail(k, "step references a non-earlier element");
        if (chain.elements[s.left] + chain.elements[s.right] != chain.elements[k])
            return fail(k, "element is not the sum of its referenced summands");
    }
    if (chain.elements.back() != chain.target)
        return fail(chain.elements.size() - 1, "last element differs from target");
    return ValidationReport{};
}

bool is_star(const AdditionChain& chain) {
    if (!validate_chain(chain).ok)
        throw std::invalid_argument("is_star: chain is not valid");
    for (size_t k = 1; k < chain.elements.size(); ++k) {
        const Step& s = chain.steps[k - 1];
        if (s.left != k - 1 && s.right != k - 1) return false;
    }
    return true;
}

std::optional<StarView> star_view(const AdditionChain& chain) {
    if (!is_star(chain)) return std::nullopt;
    StarView view;
    for (size_t k = 1; k < chain.elements.size(); ++k) {
        const Step& s = chain.steps[k - 1];
        size_t other = (s.right == k - 1) ? s.left : s.right;
        view.determiners.push_back(chain.elements[k - 1]);
        view.regulators.push_back(chain.elements[other]);
    }
    return view;
}

AdditionChain chain_product(const AdditionChain& a_chain, const AdditionChain& b_chain) {
    if (!validate_chain(a_chain).ok || !validate_chain(b_chain).ok)
        throw std::invalid_argument("chain_product: invalid input chain");
    AdditionChain out = a_chain;
    // a's last element plays the role of b's leading 1 after scaling, so
    // b's index i lands at a.size()-1 + i.
    const size_t base = a_chain.elements.size() - 1;
    for (size_t m = 1; m < b_chain.elements.size(); ++m) {
        const Step& s = b_chain.steps[m - 1];
        out.push_step(base + s.left, base + s.right);
    }
    out.target = out.elements.back();
    out.method.clear();
    return out;
}

AdditionChain double_plus_one_extend(const AdditionChain& chain) {
    if (!validate_chain(chain).ok)
        throw std::invalid_argument("double_plus_one_extend: invalid input chain");
    AdditionChain out = chain;
    size_t last = out.elements.size() - 1;
    out.push_step(last, last);
    out.push_step(out.elements.size() - 1, 0);
    out.method.clear();
    return out;
}

ValidationReport validate_degree_d(const DegreeDChain& chain) {
    auto fail = [](size_t idx, std::string msg) {
        return ValidationReport{false, idx, std::move(msg)};
    };
    if (chain.elements.empty()) return fail(0, "chain has no elements");
    if (chain.elements[0] != Nat{1}) return fail(0, "first element is not 1");
    if (chain.degree < 1) return fail(0, "degree must be positive");
    if (chain.blocks.size() + 1 != chain.elements.size())
        return fail(chain.elements.size() - 1, "block count does not match element count");
    for (size_t k = 1; k < chain.elements.size(); ++k) {
        if (!(chain.elements[k] > chain.elements[k - 1]))
            return fail(k, "elements not strictly increasing");
        const auto& block = chain.blocks[k - 1];
        if (block.empty()) return fail(k, "empty block");
        if (block.size() > chain.degree) return fail(k, "block size exceeds degree");
        Nat sum = chain.elements[k - 1];
        for (size_t idx : block) {
            if (idx >= k) return fail(k, "block references a non-earlier element");
            sum = sum + chain.elements[idx];
        }
        if (sum != chain.elements[k])
            return fail(k, "element is not previous plus block sum");
    }
    if (chain.elements.back() != chain.target)
        return fail(chain.elements.size() - 1, "last element differs from target");
    return ValidationReport{};
}

AdditionChain degree1_to_star(const DegreeDChain& chain) {
    if (chain.degree != 1)
        throw std::invalid_argument("degree1_to_star: degree is not 1");
    if (!validate_degree_d(chain).ok)
        throw std::invalid_argument("degree1_to_star: invalid chain");
    AdditionChain out;
    out.elements = chain.elements;
    for (size_t k = 1; k < chain.elements.size(); ++k) {
        size_t other = chain.blocks[k - 1][0];
        out.steps.push_back(Step{std::min(other, k - 1), std::max(other, k - 1)});
    }
    out.target = chain.target;
    return out;
}

DegreeDChain star_to_degree1(const AdditionChain& chain) {
    if (!is_star(chain))
        throw std::invalid_argument("star_to_degree1: chain is not star");
    DegreeDChain out;
    out.elements = chain.elements;
    out.degree = 1;
    out.target = chain.target;
    for (size_t k = 1; k < chain.elements.size(); ++k) {
        const Step& s = chain.steps[k - 1];
        size_t other = (s.right == k - 1) ? s.left : s.right;
        out.blocks.push_back({other});
    }
    return out;
}

bool check_equivalence_witness(const AdditionChain& a, const AdditionChain& b,
                               const EquivalenceWitness& w) {
    auto va = star_view(a);
    auto vb = star_view(b);
    if (!va || !vb)
        throw std::invalid_argument("check_equivalence_witness: both chains must be star chains");

    const size_t t = w.sub_indices.size();
    if (t == 0 || t > b.elements.size())
        throw std::out_of_range("check_equivalence_witness: witness selects no valid prefix");
    for (size_t i = 0; i < t; ++i) {
        if (w.sub_indices[i] >= b.elements.size())
            throw std::out_of_range("check_equivalence_witness: witness index out of range");
        if (w.sub_indices[i] != i)
            throw std::invalid_argument("check_equivalence_witness: sub-chain is not a prefix");
    }
    if (w.stabilizer_pairs.size() != t - 1)
        throw std::invalid_argument("check_equivalence_witness: one stabilizer pair per generator required");

    // The prefix must pair up term-for-term with a (the Prop's counting
    // argument), otherwise the length consequence below has no footing.
    if (t != a.elements.size()) return false;

    for (size_t i = 0; i + 1 < t; ++i) {
        const StabilizerPair& st = w.stabilizer_pairs[i];
        if (st.v.negative || st.d.negative) return false;
        const Nat& det_a = va->determiners[i];
        const Nat& reg_a = va->regulators[i];
        if (st.v.magnitude > det_a || det_a - st.v.magnitude != vb->determiners[i]) return false;
        if (st.d.magnitude > reg_a || reg_a - st.d.magnitude != vb->regulators[i]) return false;
    }
    assert(a.length() <= b.length());
    return true;
}

}  // namespace chainlab
