#pragma once

#include "coxdes/joint.hpp"
#include "coxdes/sampling.hpp"

#include <array>
#include <string_view>
#include <vector>

namespace coxdes {

/// Moment table entries for types A and B, degree <= 4.
/// U = D - E(D), U' = D' - E(D') where D = des, D' = ides.
enum class MomentKey {
    U1, U2, UU, U3, U2U, U3U, U4, U2U2, T2c, T3c, T4c,
    D1, D2, DD, D3, D2D, D3D, D4, D2D2, T2, T3, T4,
};

enum class MomentKind { mixed_central, mixed_raw, t_central, t_raw };

struct MomentKeyInfo {
    MomentKey key;
    std::string_view name;
    MomentKind kind;
    int k;  // exponent of U (or D); degree for T keys
    int l;  // exponent of U' (or D'); 0 for T keys
};

const std::vector<MomentKeyInfo>& moment_keys();
const MomentKeyInfo& key_info(MomentKey key);
/// Accepts the names in moment_keys() (e.g. "U4", "T4c", "D2D2").
MomentKey parse_moment_key(std::string_view name);

/// n >= 3 for A, n >= 4 for B. Throws RangeError for other families.
int closed_form_threshold(Family family);

/// Rational function of n from the moment tables. Throws RangeError below the
/// threshold.
Rational closed_form(MomentKey key, Family family, int n);

/// The printed type-A E(D^3 D') entry disagrees with enumeration at every n;
/// closed_form() returns the corrected value and this returns the printed one.
bool has_published_erratum(MomentKey key, Family family);
Rational published_table_value(MomentKey key, Family family, int n);

/// E((D - E D)^4): (n+2)(5n+8)/240 for A, (n+1)(5n+3)/240 for B.
Rational fourth_central_D(Family family, int n);

/// Same quantity from the first-order recursion started at a[3] = 23/48 (A)
/// or a[4] = 23/48 (B).
Rational fourth_central_D_recursive(Family family, int n);

/// E((T - E T)^4) in closed form.
Rational fourth_central_T(Family family, int n);

/// Propagates all mixed moments E(X^a X'^b), a + b <= 4, through the
/// transition kernel, one rank at a time, starting at rank 1. With
/// `centred`, X = D - n/2 is recentred at every rank; otherwise X = D.
class MomentRecursion {
public:
    static constexpr int max_degree = 4;

    MomentRecursion(Family family, bool centred);

    int rank() const noexcept { return rank_; }
    void step();
    void advance_to(int n);
    const Rational& moment(int k, int l) const;

private:
    Family family_;
    bool centred_;
    int rank_ = 1;
    std::array<std::array<Rational, max_degree + 1>, max_degree + 1> table_{};
};

Rational mixed_central_moment_recursive(Family family, int n, int k, int l);
Rational mixed_raw_moment_recursive(Family family, int n, int k, int l);
/// Any key, via the recursion (T keys by binomial expansion of U + U').
Rational moment_recursive(MomentKey key, Family family, int n);
/// Any key, directly from an exact joint law.
Rational moment_from_pmf(MomentKey key, const JointPMF& p);

/// sum p(x) (x - mu)^k with mu the exact mean.
Rational central_moment_from_pmf(const IntegerPMF& p, int k);

int mean_T(const GroupType& g);
int mean_T(const ProductGroup& g);

struct VarianceEstimate {
    Rational value;
    bool exact = true;
    double std_error = 0.0;  // Monte Carlo standard error when !exact
};

struct VarianceOptions {
    ExactDistOptions dist;
    std::uint64_t mc_samples = 200'000;
    std::uint64_t seed = default_seed;
};

/// A: (n+2)/6 + n/(n+1); B: (n+4)/6; I2(m): 4/m; D: exact law when it can be
/// enumerated, otherwise a Monte Carlo estimate flagged inexact.
VarianceEstimate variance_T(const GroupType& g, const VarianceOptions& options = {});
/// Sum over factors; inexact iff some factor is.
VarianceEstimate variance_T(const ProductGroup& g, const VarianceOptions& options = {});

}  // namespace coxdes
