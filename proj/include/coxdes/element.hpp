#pragma once

#include "coxdes/group.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace coxdes {

enum class Side { left, right };

/// An element of an irreducible factor.
///
/// * A(n): one-line permutation of {1..n+1}.
/// * B(n): signed window (pi(1),...,pi(n)); |pi| is a permutation of {1..n}.
/// * D(n): as B with an even number of negative entries.
/// * I2(m): {kind, index} with kind 0 = rotation r^index, 1 = reflection r^index s.
///
/// Generator indices are 0-based. For A, index i is the transposition of
/// positions i+1 and i+2. For B and D, index 0 is the special generator
/// (sign change of position 1, resp. the signed swap of positions 1 and 2)
/// and index i >= 1 transposes positions i and i+1. For I2, index 0 is the
/// reflection s and index 1 the reflection r s.
struct Element {
    GroupType type;
    std::vector<int> data;

    bool operator==(const Element&) const = default;
};

enum class DihedralKind : int { rotation = 0, reflection = 1 };

/// Tuple of factor elements of a ProductGroup.
struct ProductElement {
    std::vector<Element> factors;

    bool operator==(const ProductElement&) const = default;
};

Element identity(const GroupType& g);
ProductElement identity(const ProductGroup& g);

/// Throws std::invalid_argument if `data` is not a valid element of `type`.
Element make_element(const GroupType& type, std::vector<int> data);
bool is_valid_element(const GroupType& type, const std::vector<int>& data);

/// Returns s*w (left) or w*s (right). `s` must be below the rank.
Element generator_apply(const Element& w, int s, Side side);
ProductElement generator_apply(const ProductElement& w, int s, Side side);

Element inverse(const Element& w);
ProductElement inverse(const ProductElement& w);

/// Right descents {s : l(ws) < l(w)} via the family combinatorial rules,
/// as a bitmask over generator indices.
std::uint64_t right_descent_mask(const Element& w);
std::uint64_t left_descent_mask(const Element& w);

/// Global masks over the product's generator indices (rank must be <= 64).
std::uint64_t right_descent_mask(const ProductElement& w);
std::uint64_t left_descent_mask(const ProductElement& w);

int des(const Element& w);
int ides(const Element& w);
int t_statistic(const Element& w);

int des(const ProductElement& w);
int ides(const ProductElement& w);
int t_statistic(const ProductElement& w);

/// Longest element w0 of the factor.
Element longest_element(const GroupType& g);

/// Group product u*v (both in the same factor).
Element multiply(const Element& u, const Element& v);

/// Flat integer key, unique per element of a fixed group; used for hashing.
std::vector<int> element_key(const ProductElement& w);

/// "[2,3,1]" for permutations and windows, "r^k" / "r^k s" for I2; product
/// factors are joined with " x ".
std::string format_element(const Element& w);
std::string format_element(const ProductElement& w);

}  // namespace coxdes
