#pragma once

#include "coxdes/enumerate.hpp"
#include "coxdes/io.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace coxdes {

struct ComplexCaps {
    std::uint64_t max_order = 50'000;
    int max_rank = 6;
};

/// Face (I, W_I w W_J, J) of the two-sided complex. The double coset is
/// identified by its unique minimal-length element.
struct Face {
    std::uint64_t left_mask = 0;   // I
    std::uint64_t right_mask = 0;  // J
    int representative = 0;        // index into the Cayley graph
    int dimension = 0;             // (r - |I|) + (r - |J|) - 1
    std::vector<int> facets;       // filled for codimension-1 faces only
};

struct FaceComplex {
    CayleyGraph graph;
    int rank = 0;
    std::vector<Face> faces;

    int dimension() const noexcept { return 2 * rank - 1; }
};

/// Throws CapExceeded above `caps`, ConsistencyError if a double coset has
/// two minimal-length elements.
FaceComplex enumerate_faces(const ProductGroup& g, const ComplexCaps& caps = {});

/// f[k] = f_{k-1}, k = 0..2r.
std::vector<Integer> f_vector(const FaceComplex& c);
/// h_k = sum_{i=0}^{k} (-1)^{k-i} C(d-i, k-i) f_{i-1}, d = f.size() - 1.
std::vector<Integer> h_vector(const std::vector<Integer>& f);
/// sum_{i>=0} (-1)^i f_i.
Integer euler_characteristic(const std::vector<Integer>& f);

/// tally[k] = #{w : t(w) = k}, k = 0..2r, from the combinatorial statistic.
std::vector<Integer> t_tally(const FaceComplex& c);

struct HIdentity {
    bool holds = false;
    std::vector<Integer> h;
    std::vector<Integer> tally;
};

HIdentity h_polynomial_identity_check(const FaceComplex& c);

struct GalleryReport {
    bool adjacency = true;         // ws/sw adjacency == sharing a codim-1 face
    bool thin = true;              // every codim-1 face lies in exactly two facets
    bool distance_is_length = true;
    bool wall_count_is_t = true;
    /// Facets v adjacent to w with l(v) = l(w) - 1 (reported, not asserted).
    int facet_count_mismatches = 0;
    std::optional<std::string> counterexample;
    std::optional<std::string> facet_count_example;
};

GalleryReport gallery_checks(const FaceComplex& c);

struct ComplexReport {
    std::string group;
    Integer order;
    int rank = 0;
    std::vector<Integer> f;
    std::vector<Integer> h;
    std::vector<Integer> tally;
    Integer euler;
    bool f_bounds = false;       // f_{-1} = 1, f_{d-1} = |W|
    bool h_sum = false;          // sum h = |W|
    bool h_identity = false;
    bool euler_zero = false;
    bool h_nonnegative = false;
    bool h_palindromic = false;  // reported; asserted only for A and B
    GalleryReport gallery;

    /// Every asserted check.
    bool all_passed() const;
};

ComplexReport analyze_complex(const ProductGroup& g, const ComplexCaps& caps = {});

Json to_json(const ComplexReport& r);

}  // namespace coxdes
