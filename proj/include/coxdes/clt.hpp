#pragma once

#include "coxdes/moments.hpp"
#include "coxdes/sequence.hpp"

#include <optional>
#include <string>
#include <vector>

namespace coxdes {

struct DihedralSplit {
    ProductGroup non_dihedral;  // G
    ProductGroup dihedral;      // I
};

DihedralSplit decompose_dihedral(const ProductGroup& g);

/// rk(G) + sum over dihedral factors I2(m) of 1/m.
Rational criterion_three(const ProductGroup& g);

struct DeltaSplit {
    ProductGroup sorted;        // factors by non-increasing rank (stable)
    ProductGroup large;         // M: the first m factors
    ProductGroup small;         // the delta-small rest
    int m = 0;
    std::vector<bool> is_small;  // per factor of `sorted`
    bool exact_fallback = false;  // some comparison needed the exact test
};

/// rk <= R^(1 - delta). Decided by an outward-rounded floating interval; when
/// the interval contains rk the exact test rk^q <= R^(q - p), delta = p/q, is
/// used, or the factor is kept non-small if q is too large for that.
bool is_delta_small(int rank, int total_rank, const Rational& delta, bool* used_exact = nullptr);

/// Throws RangeError unless 0 < delta < 1.
DeltaSplit delta_small_split(const ProductGroup& g, const Rational& delta);

/// Centred law X = T - E(T) of one factor type, repeated `multiplicity` times.
struct RowComponent {
    GroupType type;
    std::size_t multiplicity = 1;
    IntegerPMF centred;
    Rational variance;
    bool exact = true;
};

struct TriangularRow {
    std::vector<RowComponent> components;  // distinct factor types, first-seen order
    Rational total_variance;
    bool exact = true;

    std::size_t size() const;  // k_n, counting multiplicity
};

TriangularRow make_row(const ProductGroup& g, const ExactDistOptions& options = {});

/// (1/s^2) sum_i E(X_i^2 1{|X_i| > eps s}). Throws RangeError if s = 0 or eps <= 0.
Rational lindeberg_sum(const TriangularRow& row, const Rational& eps);
/// max_i s_i^2 / s^2.
Rational max_ratio(const TriangularRow& row);

struct KSDistance {
    double plain = 0.0;
    double corrected = 0.0;  // Phi against the midpoint of the CDF jump
};

/// Standard normal CDF via std::erfc (double precision).
double normal_cdf(double z);

/// sup |F - Phi| of the standardized law over its jump points. Throws
/// RangeError on zero variance.
KSDistance ks_distance_exact(const IntegerPMF& p);
/// Same on a law given as doubles over offset, offset+1, ...
KSDistance ks_distance(int offset, const std::vector<double>& probabilities, double mean, double variance);
/// Empirical law of `samples` draws, standardized by the exact mean rk(g) and
/// variance_T(g).
KSDistance ks_distance_mc(const ProductGroup& g, std::uint64_t samples, const SamplingPlan& plan,
                          const VarianceOptions& options = {});

/// Law of T on g as doubles, by floating convolution of the factor laws.
/// Returns nullopt when the support would exceed `max_support`.
struct ApproximateLaw {
    int offset = 0;
    std::vector<double> probabilities;
    bool exact_inputs = true;
};
std::optional<ApproximateLaw> t_law_double(const ProductGroup& g, const ExactDistOptions& options,
                                           std::size_t max_support = 200'001);

struct ProfileEntry {
    int k = 1;
    Rational sup;
    int argsup_n = 0;
    bool exact = true;
};

/// For each k: sup over n of sum_{i=k}^{m_n} V(T_{n,i}) / V(T_{M_n}). Empty
/// tails and empty M contribute 0.
std::vector<ProfileEntry> well_behaved_profile(const SequenceSpec& spec, const Rational& delta,
                                               const std::vector<int>& n_list, const std::vector<int>& k_list,
                                               const VarianceOptions& options = {});

struct TrendOptions {
    Rational delta = make_rational(1, 3);
    std::vector<Rational> eps_grid = {make_rational(1, 10), make_rational(1, 4), make_rational(1, 2),
                                      make_rational(1)};
    std::vector<int> k_list;  // empty: 1 .. max m_n + 1
    VarianceOptions variance;
    std::size_t max_ks_support = 200'001;
};

struct RunLength {
    GroupType type;
    std::size_t count;
    bool small;
};

struct TrendRecord {
    int n = 0;
    bool ok = true;
    std::string error;
    std::vector<std::string> log;
    std::string group;  // run-length rendering of the sorted factors
    int rank = 0;
    std::size_t k_n = 0;
    std::vector<RunLength> factors;
    int m_n = 0;
    int rank_large = 0;
    int rank_small = 0;
    Rational var_total, var_non_dihedral, var_dihedral, var_large, var_small;
    std::vector<Rational> large_variances;  // V(T_{n,i}), i = 1..m_n
    bool variance_exact = true;
    Rational criterion;
    Rational max_ratio;
    std::vector<std::pair<Rational, Rational>> lindeberg;
    bool row_exact = true;
    std::optional<KSDistance> ks;
    bool ks_exact = true;
};

struct TrendReport {
    Rational delta;
    std::vector<TrendRecord> records;
    std::vector<ProfileEntry> profile;
    std::string verdict;
};

/// Per-n diagnostics; failures at one n are recorded and do not stop the run.
TrendReport clt_trend(const SequenceSpec& spec, const std::vector<int>& n_list, const TrendOptions& options = {});

/// Text summary of the criterion trend over the last two successful records.
std::string trend_verdict(const std::vector<TrendRecord>& records);

Json to_json(const TrendReport& report);
/// One row per (n, eps); header is the first line.
std::string to_csv(const TrendReport& report);

}  // namespace coxdes
