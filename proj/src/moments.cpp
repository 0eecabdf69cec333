#include "coxdes/moments.hpp"

#include "coxdes/errors.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace coxdes {

namespace {

Rational q(long num, long den = 1) { return make_rational(num, den); }

void require_ab(Family family) {
    if (family != Family::A && family != Family::B)
        throw RangeError("moment tables exist only for types A and B");
}

}  // namespace

const std::vector<MomentKeyInfo>& moment_keys() {
    using K = MomentKey;
    using M = MomentKind;
    static const std::vector<MomentKeyInfo> keys = {
        {K::U1, "U1", M::mixed_central, 1, 0},   {K::U2, "U2", M::mixed_central, 2, 0},
        {K::UU, "UU", M::mixed_central, 1, 1},   {K::U3, "U3", M::mixed_central, 3, 0},
        {K::U2U, "U2U", M::mixed_central, 2, 1}, {K::U3U, "U3U", M::mixed_central, 3, 1},
        {K::U4, "U4", M::mixed_central, 4, 0},   {K::U2U2, "U2U2", M::mixed_central, 2, 2},
        {K::T2c, "T2c", M::t_central, 2, 0},     {K::T3c, "T3c", M::t_central, 3, 0},
        {K::T4c, "T4c", M::t_central, 4, 0},     {K::D1, "D1", M::mixed_raw, 1, 0},
        {K::D2, "D2", M::mixed_raw, 2, 0},       {K::DD, "DD", M::mixed_raw, 1, 1},
        {K::D3, "D3", M::mixed_raw, 3, 0},       {K::D2D, "D2D", M::mixed_raw, 2, 1},
        {K::D3D, "D3D", M::mixed_raw, 3, 1},     {K::D4, "D4", M::mixed_raw, 4, 0},
        {K::D2D2, "D2D2", M::mixed_raw, 2, 2},   {K::T2, "T2", M::t_raw, 2, 0},
        {K::T3, "T3", M::t_raw, 3, 0},           {K::T4, "T4", M::t_raw, 4, 0},
    };
    return keys;
}

const MomentKeyInfo& key_info(MomentKey key) { return moment_keys()[static_cast<int>(key)]; }

MomentKey parse_moment_key(std::string_view name) {
    for (const auto& k : moment_keys())
        if (k.name == name) return k.key;
    throw ParseError("unknown moment key '" + std::string(name) + "'", 0);
}

int closed_form_threshold(Family family) {
    require_ab(family);
    return family == Family::A ? 3 : 4;
}

namespace {

Rational table_A(MomentKey key, long n) {
    using K = MomentKey;
    const long n2 = n * n, n3 = n2 * n, n4 = n3 * n;
    switch (key) {
        case K::U1: case K::U3: case K::U2U: case K::T3c: return 0;
        case K::U2: return q(n + 2, 12);
        case K::UU: return q(n, 2 * (n + 1));
        case K::U3U: return q(n * (n + 2), 8 * (n + 1));
        case K::U4: return q((n + 2) * (5 * n + 8), 240);
        case K::U2U2: return q(n2 + 4 * n + 76, 144) - q(2 * n + 1, 3 * n * (n + 1));
        case K::T2c: return q(n + 2, 6) + q(n, n + 1);
        case K::T4c: return q(5 * n2 + 79 * n + 258, 60) - q(5 * n + 2, n * (n + 1));
        case K::D1: return q(n, 2);
        case K::D2: return q(n + 2, 12) + q(n2, 4);
        case K::DD: return q(n2, 4) + q(n, 2 * n + 2);
        case K::D3: return q(n * (n2 + n + 2), 8);
        case K::D2D: return q(3 * n3 + n2 + 14 * n - 12, 24) + q(1, 2 * (n + 1));
        case K::D3D: return q(n4 + n3 + 8 * n2 - 4 * n + 8, 16) - q(1, 2 * (n + 1));
        case K::D4: return q(15 * n4 + 30 * n3 + 65 * n2 + 18 * n + 16, 240);
        case K::D2D2:
            return q(9 * n4 + 6 * n3 + 85 * n2 - 68 * n + 148, 144) - q(7 * n + 2, 6 * n * (n + 1));
        case K::T2: return q(n2) + q(n + 2, 6) + q(n, n + 1);
        case K::T3: return q(n3) + q(n2, 2) + q(4 * n - 3) + q(3, n + 1);
        case K::T4:
            return q(n4 + n3) + q(97 * n2, 12) - q(281 * n, 60) + q(103, 10) -
                   q(11 * n + 2, n * (n + 1));
    }
    throw std::logic_error("unreachable");
}

Rational table_B(MomentKey key, long n) {
    using K = MomentKey;
    const long n2 = n * n, n3 = n2 * n, n4 = n3 * n;
    switch (key) {
        case K::U1: case K::U3: case K::U2U: case K::T3c: return 0;
        case K::U2: return q(n + 1, 12);
        case K::UU: return q(1, 4);
        case K::U3U: return q(n + 1, 16);
        case K::U4: return q((n + 1) * (5 * n + 3), 240);
        case K::U2U2: return q(n2 + 2 * n + 19, 144) + q(2 * n - 1, 24 * n * (n - 1));
        case K::T2c: return q(n + 4, 6);
        case K::T4c: return q(5 * n2 + 39 * n + 79, 60) + q(2 * n - 1, 4 * n * (n - 1));
        case K::D1: return q(n, 2);
        case K::D2: return q(n + 1, 12) + q(n2, 4);
        case K::DD: return q(n2 + 1, 4);
        case K::D3: return q(n * (n2 + n + 1), 8);
        case K::D2D: return q(n * (7 + n + 3 * n2), 24);
        case K::D3D: return q(1 + n + 4 * n2 + n3 + n4, 16);
        case K::D4: return q(15 * n4 + 30 * n3 + 35 * n2 + 8 * n + 3, 240);
        case K::D2D2:
            return q(9 * n4 + 6 * n3 + 43 * n2 + 2 * n + 19, 144) + q(2 * n - 1, 24 * n * (n - 1));
        case K::T2: return q(n2) + q(n + 4, 6);
        case K::T3: return q(n) * (q(n2) + q(n, 2) + 2);
        case K::T4:
            return q(n4 + n3) + q(49 * n2, 12) + q(13 * n, 20) + q(79, 60) +
                   q(2 * n - 1, 4 * n * (n - 1));
    }
    throw std::logic_error("unreachable");
}

void require_threshold(Family family, int n) {
    const int t = closed_form_threshold(family);
    if (n < t)
        throw RangeError(std::string("closed forms for type ") + std::string(family_name(family)) +
                         " need n >= " + std::to_string(t));
}

}  // namespace

Rational closed_form(MomentKey key, Family family, int n) {
    require_threshold(family, n);
    return family == Family::A ? table_A(key, n) : table_B(key, n);
}

bool has_published_erratum(MomentKey key, Family family) {
    return family == Family::A && key == MomentKey::D3D;
}

Rational published_table_value(MomentKey key, Family family, int n) {
    require_threshold(family, n);
    if (has_published_erratum(key, family)) {
        const long m = n;
        return q(m * m * m * m - 4 * m * m * m + 15 * m * m - 36 * m + 56, 16) - q(4, m + 1);
    }
    return closed_form(key, family, n);
}

Rational fourth_central_D(Family family, int n) {
    require_threshold(family, n);
    const long m = n;
    return family == Family::A ? q((m + 2) * (5 * m + 8), 240) : q((m + 1) * (5 * m + 3), 240);
}

Rational fourth_central_D_recursive(Family family, int n) {
    require_threshold(family, n);
    long r = closed_form_threshold(family);
    Rational a = q(23, 48);
    for (; r < n; ++r) {
        if (family == Family::A)
            a = q(6 * r + 11, 48) + q(r - 2, r + 2) * a;
        else
            a = q(6 * r + 5, 48) + q(r - 3, r + 1) * a;
    }
    return a;
}

Rational fourth_central_T(Family family, int n) {
    require_threshold(family, n);
    const long m = n;
    if (family == Family::A) return q(5 * m * m + 79 * m + 258, 60) - q(5 * m + 2, m * (m + 1));
    return q(5 * m * m + 39 * m + 79, 60) + q(2 * m - 1, 4 * m * (m - 1));
}

namespace {

/// Polynomial in (X, X') with exponents up to `size - 1` in each variable.
class Poly2 {
public:
    explicit Poly2(int size) : size_(size), c_(size * size, 0) {}

    Rational& at(int a, int b) { return c_[a * size_ + b]; }
    const Rational& at(int a, int b) const { return c_[a * size_ + b]; }
    int size() const { return size_; }

    /// (X + s)^k (X' + t)^l
    static Poly2 shifted_monomial(int size, int k, const Rational& s, int l, const Rational& t) {
        Poly2 p(size);
        for (int a = 0; a <= k; ++a)
            for (int b = 0; b <= l; ++b)
                p.at(a, b) = Rational(binomial(k, a) * binomial(l, b)) * pow(s, k - a) * pow(t, l - b);
        return p;
    }

    Poly2 operator*(const Poly2& o) const {
        Poly2 out(size_);
        for (int a = 0; a < size_; ++a)
            for (int b = 0; b < size_; ++b) {
                if (at(a, b) == 0) continue;
                for (int c = 0; a + c < size_; ++c)
                    for (int d = 0; b + d < size_; ++d)
                        if (o.at(c, d) != 0) out.at(a + c, b + d) += at(a, b) * o.at(c, d);
            }
        return out;
    }

    Poly2& operator+=(const Poly2& o) {
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }

private:
    int size_;
    std::vector<Rational> c_;
};

}  // namespace

MomentRecursion::MomentRecursion(Family family, bool centred) : family_(family), centred_(centred) {
    require_ab(family);
    const JointPMF base = base_joint_pmf();
    const Rational shift = centred ? q(1, 2) : q(0);
    for (int k = 0; k <= max_degree; ++k)
        for (int l = 0; k + l <= max_degree; ++l) {
            Rational m = 0;
            for (int i = 0; i <= 1; ++i)
                for (int j = 0; j <= 1; ++j)
                    m += base.probability(i, j) * pow(Rational(i) - shift, k) * pow(Rational(j) - shift, l);
            table_[k][l] = m;
        }
}

void MomentRecursion::step() {
    const long n = rank_;
    const auto numerators = [&](long i, long j) {
        return family_ == Family::A ? kernel_numerators_A(n, i, j) : kernel_numerators_B(n, i, j);
    };
    const long den = family_ == Family::A ? kernel_denominator_A(n) : kernel_denominator_B(n);
    const Rational centre = centred_ ? q(n, 2) : q(0);
    const Rational drift = centred_ ? q(1, 2) : q(0);  // change of the centre per rank

    // Branch b numerator as a polynomial in X, X' where D = X + centre.
    constexpr int size = 2 * max_degree + 3;
    std::array<Poly2, 4> branch_weight{Poly2(size), Poly2(size), Poly2(size), Poly2(size)};
    {
        const auto f00 = numerators(0, 0), f10 = numerators(1, 0), f01 = numerators(0, 1),
                   f11 = numerators(1, 1);
        for (int b = 0; b < 4; ++b) {
            const Rational alpha = f00[b], beta = f10[b] - f00[b], gamma = f01[b] - f00[b],
                           eps = f11[b] - f10[b] - f01[b] + f00[b];
            Poly2& w = branch_weight[b];
            // alpha + beta D + gamma D' + eps D D'
            w.at(0, 0) = alpha + beta * centre + gamma * centre + eps * centre * centre;
            w.at(1, 0) = beta + eps * centre;
            w.at(0, 1) = gamma + eps * centre;
            w.at(1, 1) = eps;
        }
    }
    static constexpr int di[4] = {0, 1, 0, 1};
    static constexpr int dj[4] = {0, 0, 1, 1};

    decltype(table_) next{};
    for (int k = 0; k <= max_degree; ++k) {
        for (int l = 0; k + l <= max_degree; ++l) {
            Poly2 total(size);
            for (int b = 0; b < 4; ++b)
                total += branch_weight[b] *
                         Poly2::shifted_monomial(size, k, Rational(di[b]) - drift, l, Rational(dj[b]) - drift);
            Rational value = 0;
            for (int a = 0; a < size; ++a)
                for (int c = 0; c < size; ++c) {
                    if (total.at(a, c) == 0) continue;
                    if (a + c > max_degree)
                        throw ConsistencyError("moment recursion did not close at degree " +
                                               std::to_string(a + c));
                    value += total.at(a, c) * table_[a][c];
                }
            next[k][l] = value / Rational(den);
        }
    }
    table_ = next;
    ++rank_;
}

void MomentRecursion::advance_to(int n) {
    if (n < rank_) throw RangeError("moment recursion cannot move backwards");
    while (rank_ < n) step();
}

const Rational& MomentRecursion::moment(int k, int l) const {
    if (k < 0 || l < 0 || k + l > max_degree) throw RangeError("unsupported exponents");
    return table_[k][l];
}

namespace {

Rational recursive(Family family, int n, int k, int l, bool centred) {
    if (k < 0 || l < 0 || k + l > MomentRecursion::max_degree)
        throw RangeError("unsupported exponents (k + l must be <= 4)");
    if (n < 1) throw RangeError("rank must be >= 1");
    static std::mutex mutex;
    static std::map<std::pair<int, bool>, MomentRecursion> chains;
    std::lock_guard lock(mutex);
    auto key = std::make_pair(static_cast<int>(family), centred);
    auto it = chains.find(key);
    if (it == chains.end() || it->second.rank() > n)
        it = chains.insert_or_assign(key, MomentRecursion(family, centred)).first;
    it->second.advance_to(n);
    return it->second.moment(k, l);
}

Rational t_from_mixed(Family family, int n, int degree, bool centred) {
    Rational sum = 0;
    for (int a = 0; a <= degree; ++a)
        sum += Rational(binomial(degree, a)) * recursive(family, n, a, degree - a, centred);
    return sum;
}

}  // namespace

Rational mixed_central_moment_recursive(Family family, int n, int k, int l) {
    return recursive(family, n, k, l, true);
}

Rational mixed_raw_moment_recursive(Family family, int n, int k, int l) {
    return recursive(family, n, k, l, false);
}

Rational moment_recursive(MomentKey key, Family family, int n) {
    const auto& info = key_info(key);
    switch (info.kind) {
        case MomentKind::mixed_central: return mixed_central_moment_recursive(family, n, info.k, info.l);
        case MomentKind::mixed_raw: return mixed_raw_moment_recursive(family, n, info.k, info.l);
        case MomentKind::t_central: return t_from_mixed(family, n, info.k, true);
        case MomentKind::t_raw: return t_from_mixed(family, n, info.k, false);
    }
    throw std::logic_error("unreachable");
}

Rational moment_from_pmf(MomentKey key, const JointPMF& p) {
    const auto& info = key_info(key);
    const int n = p.n();
    Rational mean_d = 0, mean_d2 = 0;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) {
            if (p.counts.at(i, j) == 0) continue;
            const Rational pr = p.probability(i, j);
            mean_d += pr * i;
            mean_d2 += pr * j;
        }
    Rational sum = 0;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) {
            if (p.counts.at(i, j) == 0) continue;
            const Rational pr = p.probability(i, j);
            switch (info.kind) {
                case MomentKind::mixed_central:
                    sum += pr * pow(Rational(i) - mean_d, info.k) * pow(Rational(j) - mean_d2, info.l);
                    break;
                case MomentKind::mixed_raw:
                    sum += pr * pow(Rational(i), info.k) * pow(Rational(j), info.l);
                    break;
                case MomentKind::t_central:
                    sum += pr * pow(Rational(i + j) - mean_d - mean_d2, info.k);
                    break;
                case MomentKind::t_raw: sum += pr * pow(Rational(i + j), info.k); break;
            }
        }
    return sum;
}

Rational central_moment_from_pmf(const IntegerPMF& p, int k) {
    if (k < 1) throw RangeError("moment order must be >= 1");
    return p.central_moment(k);
}

int mean_T(const GroupType& g) { return g.rank(); }

int mean_T(const ProductGroup& g) { return g.rank(); }

VarianceEstimate variance_T(const GroupType& g, const VarianceOptions& options) {
    const long n = g.parameter();
    switch (g.family()) {
        case Family::A: return {q(n + 2, 6) + q(n, n + 1), true, 0.0};
        case Family::B: return {q(n + 4, 6), true, 0.0};
        case Family::I2: return {q(4, n), true, 0.0};
        case Family::D: {
            const JointPMF p = joint_pmf(g, options.dist);
            if (p.exact) return {t_marginal(p).variance(), true, 0.0};
            const auto samples = sample_t_values(ProductGroup{{g}}, options.mc_samples,
                                                 SamplingPlan{options.seed, 65536, 1});
            const double count = static_cast<double>(samples.size());
            double mean = 0.0;
            for (int t : samples) mean += t;
            mean /= count;
            double m2 = 0.0, m4 = 0.0;
            for (int t : samples) {
                const double d = t - mean;
                m2 += d * d;
                m4 += d * d * d * d;
            }
            const double var = m2 / (count - 1.0);
            m4 /= count;
            const double se = std::sqrt(std::max(0.0, m4 - (m2 / count) * (m2 / count)) / count);
            return {Rational(var), false, se};
        }
    }
    throw std::logic_error("unreachable");
}

VarianceEstimate variance_T(const ProductGroup& g, const VarianceOptions& options) {
    VarianceEstimate total{0, true, 0.0};
    double se2 = 0.0;
    std::map<GroupType, VarianceEstimate> memo;
    for (const auto& f : g.factors) {
        auto it = memo.find(f);
        if (it == memo.end()) it = memo.emplace(f, variance_T(f, options)).first;
        total.value += it->second.value;
        total.exact = total.exact && it->second.exact;
        se2 += it->second.std_error * it->second.std_error;
    }
    total.std_error = std::sqrt(se2);
    return total;
}

}  // namespace coxdes
