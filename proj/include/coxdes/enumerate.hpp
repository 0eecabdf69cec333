#pragma once

#include "coxdes/element.hpp"

#include <cstdint>
#include <functional>
#include <unordered_map>
#include <vector>

namespace coxdes {

inline constexpr std::uint64_t default_enumeration_cap = 10'000'000;

/// Throws CapExceeded when |g| > cap.
void check_cap(const ProductGroup& g, std::uint64_t cap);

/// Visits every element exactly once.
void for_each_element(const GroupType& g, const std::function<void(const Element&)>& visit,
                      std::uint64_t cap = default_enumeration_cap);
void for_each_element(const ProductGroup& g,
                      const std::function<void(const ProductElement&)>& visit,
                      std::uint64_t cap = default_enumeration_cap);

std::vector<Element> enumerate(const GroupType& g, std::uint64_t cap = default_enumeration_cap);
std::vector<ProductElement> enumerate(const ProductGroup& g,
                                      std::uint64_t cap = default_enumeration_cap);

struct KeyHash {
    std::size_t operator()(const std::vector<int>& key) const noexcept;
};

/// Elements reached by breadth-first search from the identity through right
/// multiplication by simple reflections, with both multiplication tables.
struct CayleyGraph {
    ProductGroup group;
    std::vector<ProductElement> elements;  // BFS order; elements[0] is the identity
    std::vector<int> length;               // BFS depth = word length
    std::vector<std::vector<int>> right;   // right[s][i] = index of elements[i] * s
    std::vector<std::vector<int>> left;    // left[s][i]  = index of s * elements[i]
    std::unordered_map<std::vector<int>, int, KeyHash> index;

    int size() const noexcept { return static_cast<int>(elements.size()); }
    int index_of(const ProductElement& w) const;
};

CayleyGraph build_cayley_graph(const ProductGroup& g, std::uint64_t cap = default_enumeration_cap);

/// Length and descent sets defined purely from BFS distances:
/// s is a right descent iff l(ws) < l(w), a left descent iff l(sw) < l(w).
struct LengthOracle {
    CayleyGraph graph;
    std::vector<std::uint64_t> right_descents;
    std::vector<std::uint64_t> left_descents;
};

LengthOracle bfs_length_oracle(const ProductGroup& g, std::uint64_t cap = default_enumeration_cap);

}  // namespace coxdes
