#pragma once

#include "coxdes/enumerate.hpp"
#include "coxdes/group.hpp"
#include "coxdes/numeric.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace coxdes {

/// c[i][j] = #{w : des(w) = i, des(w^-1) = j}, 0 <= i, j <= n.
struct JointCountMatrix {
    int n = 0;
    std::vector<Integer> counts;  // row-major, (n+1)^2 entries

    JointCountMatrix() = default;
    explicit JointCountMatrix(int rank) : n(rank), counts((rank + 1) * (rank + 1), 0) {}

    Integer& at(int i, int j) { return counts[i * (n + 1) + j]; }
    const Integer& at(int i, int j) const { return counts[i * (n + 1) + j]; }
    Integer total() const;

    bool is_symmetric() const;
    /// c[i][j] == c[n-i][n-j]
    bool is_centrally_symmetric() const;

    bool operator==(const JointCountMatrix&) const = default;
};

/// Joint law of (des, ides): p[i][j] = counts[i][j] / denominator. The
/// denominator is the group order, so integrality of the counts is the
/// count-consistency invariant.
struct JointPMF {
    JointCountMatrix counts;
    Integer denominator = 1;
    bool exact = true;

    int n() const noexcept { return counts.n; }
    Rational probability(int i, int j) const;
};

/// Distribution of an integer-valued statistic, support starting at `offset`.
struct IntegerPMF {
    int offset = 0;
    std::vector<Rational> probabilities;

    static IntegerPMF point_mass(int x);

    int min_value() const noexcept { return offset; }
    int max_value() const noexcept { return offset + static_cast<int>(probabilities.size()) - 1; }
    Rational at(int x) const;
    Rational total() const;
    Rational mean() const;
    Rational raw_moment(int k) const;
    Rational central_moment(int k) const;
    Rational variance() const { return central_moment(2); }
    /// Same law moved by `delta`.
    IntegerPMF shifted(int delta) const;
    /// Drops zero-probability entries at both ends.
    void trim();

    bool operator==(const IntegerPMF&) const = default;
};

IntegerPMF convolve(const IntegerPMF& p, const IntegerPMF& q);

struct TDistribution {
    IntegerPMF pmf;
    bool exact = true;
};

JointCountMatrix joint_counts_bruteforce(const GroupType& g,
                                         std::uint64_t cap = default_enumeration_cap);

/// Rank-1 start {(0,0): 1, (1,1): 1} over 2, shared by the A and B chains.
JointPMF base_joint_pmf();

/// Transition of (D_n, D'_n) to rank n+1. Branch order: stay, (i+1, j),
/// (i, j+1), (i+1, j+1). Numerators are over kernel_denominator_*(n).
std::array<long, 4> kernel_numerators_A(long n, long i, long j);
long kernel_denominator_A(long n);
std::array<long, 4> kernel_numerators_B(long n, long i, long j);
long kernel_denominator_B(long n);

/// Pushforward of a type-A / type-B rank-n law through the transition kernel.
/// Throws ConsistencyError on a negative branch at a positive-mass state or
/// on a non-integral count.
JointPMF kernel_step_A(const JointPMF& p);
JointPMF kernel_step_B(const JointPMF& p);

/// Four-term coefficient recursion for the type-B two-sided Eulerian numbers,
/// starting from B(1). Every division by n is checked to be exact.
JointCountMatrix counts_recursion_B(int n);

struct ExactDistOptions {
    int rank_limit = 300;            // kernel chains for A and B
    int d_bruteforce_max_rank = 8;   // beyond this D(n) uses the B(n) surrogate
    std::uint64_t cap = default_enumeration_cap;
    std::string cache_dir;           // optional on-disk cache of joint laws
};

/// Exact law for A, B (kernels), I2 (closed form), D (enumeration). Large D
/// returns the B(n) law with exact = false.
JointPMF joint_pmf(const GroupType& g, const ExactDistOptions& options = {});

IntegerPMF t_marginal(const JointPMF& p);
IntegerPMF des_marginal(const JointPMF& p);

TDistribution t_pmf(const GroupType& g, const ExactDistOptions& options = {});
/// Convolution of the factor laws; exact iff every factor law is exact.
TDistribution t_pmf(const ProductGroup& g, const ExactDistOptions& options = {});

/// Tally of t over a full enumeration of the product.
IntegerPMF t_pmf_bruteforce(const ProductGroup& g, std::uint64_t cap = default_enumeration_cap);

}  // namespace coxdes
