#include "coxdes/joint.hpp"

#include "coxdes/errors.hpp"
#include "coxdes/io.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>

namespace coxdes {

Integer JointCountMatrix::total() const {
    Integer t = 0;
    for (const auto& c : counts) t += c;
    return t;
}

bool JointCountMatrix::is_symmetric() const {
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j < i; ++j)
            if (at(i, j) != at(j, i)) return false;
    return true;
}

bool JointCountMatrix::is_centrally_symmetric() const {
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j)
            if (at(i, j) != at(n - i, n - j)) return false;
    return true;
}

Rational JointPMF::probability(int i, int j) const {
    return make_rational(counts.at(i, j), denominator);
}

IntegerPMF IntegerPMF::point_mass(int x) { return IntegerPMF{x, {Rational(1)}}; }

Rational IntegerPMF::at(int x) const {
    if (x < min_value() || x > max_value()) return 0;
    return probabilities[x - offset];
}

Rational IntegerPMF::total() const {
    Rational t = 0;
    for (const auto& p : probabilities) t += p;
    return t;
}

Rational IntegerPMF::mean() const { return raw_moment(1); }

Rational IntegerPMF::raw_moment(int k) const {
    Rational m = 0;
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
        if (probabilities[i] == 0) continue;
        m += probabilities[i] * pow(Rational(offset + static_cast<long>(i)), k);
    }
    return m;
}

Rational IntegerPMF::central_moment(int k) const {
    const Rational mu = mean();
    Rational m = 0;
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
        if (probabilities[i] == 0) continue;
        Rational x = Rational(offset + static_cast<long>(i)) - mu;
        m += probabilities[i] * pow(x, k);
    }
    return m;
}

IntegerPMF IntegerPMF::shifted(int delta) const {
    IntegerPMF out = *this;
    out.offset += delta;
    return out;
}

void IntegerPMF::trim() {
    std::size_t lead = 0;
    while (lead + 1 < probabilities.size() && probabilities[lead] == 0) ++lead;
    probabilities.erase(probabilities.begin(), probabilities.begin() + static_cast<long>(lead));
    offset += static_cast<int>(lead);
    while (probabilities.size() > 1 && probabilities.back() == 0) probabilities.pop_back();
}

IntegerPMF convolve(const IntegerPMF& p, const IntegerPMF& q) {
    IntegerPMF out;
    out.offset = p.offset + q.offset;
    out.probabilities.assign(p.probabilities.size() + q.probabilities.size() - 1, 0);
    for (std::size_t i = 0; i < p.probabilities.size(); ++i) {
        if (p.probabilities[i] == 0) continue;
        for (std::size_t j = 0; j < q.probabilities.size(); ++j)
            out.probabilities[i + j] += p.probabilities[i] * q.probabilities[j];
    }
    return out;
}

JointCountMatrix joint_counts_bruteforce(const GroupType& g, std::uint64_t cap) {
    JointCountMatrix c(g.rank());
    for_each_element(g, [&](const Element& w) { ++c.at(des(w), ides(w)); }, cap);
    return c;
}

JointPMF base_joint_pmf() {
    JointPMF p{JointCountMatrix(1), 2, true};
    p.counts.at(0, 0) = 1;
    p.counts.at(1, 1) = 1;
    return p;
}

std::array<long, 4> kernel_numerators_A(long n, long i, long j) {
    return {(i + 1) * (j + 1) + n + 1, (n + 1 - i) * (j + 1) - n - 1,
            (i + 1) * (n + 1 - j) - n - 1, (n + 1 - i) * (n + 1 - j) + n + 1};
}

long kernel_denominator_A(long n) { return (n + 2) * (n + 2); }

std::array<long, 4> kernel_numerators_B(long n, long i, long j) {
    return {n + 1 + i + j + 2 * i * j, -i + (2 * n + 1) * j - 2 * i * j,
            (2 * n + 1) * i - j - 2 * i * j, (2 * n + 1) * (n + 1 - i - j) + 2 * i * j};
}

// The four B numerators add up to 2(n+1)^2.
long kernel_denominator_B(long n) { return 2 * (n + 1) * (n + 1); }

namespace {

template <typename Numerators>
JointPMF kernel_step(const JointPMF& p, Numerators numerators, long denominator, long order_ratio,
                     const char* label) {
    const int n = p.n();
    JointPMF out{JointCountMatrix(n + 1), p.denominator * order_ratio, p.exact};
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= n; ++j) {
            const Integer& mass = p.counts.at(i, j);
            if (mass == 0) continue;
            const auto num = numerators(n, i, j);
            static constexpr int di[4] = {0, 1, 0, 1};
            static constexpr int dj[4] = {0, 0, 1, 1};
            for (int b = 0; b < 4; ++b) {
                if (num[b] < 0)
                    throw ConsistencyError(std::string(label) + " kernel: negative branch at rank " +
                                           std::to_string(n) + " state (" + std::to_string(i) +
                                           "," + std::to_string(j) + ")");
                if (num[b] == 0) continue;
                mpz_addmul_ui(out.counts.at(i + di[b], j + dj[b]).get_mpz_t(), mass.get_mpz_t(),
                              static_cast<unsigned long>(num[b]));
            }
        }
    }
    // p_{n+1} = sum p_n * num / denominator, counts scale by order_ratio.
    const long divisor = denominator / order_ratio;
    for (auto& c : out.counts.counts) {
        if (!mpz_divisible_ui_p(c.get_mpz_t(), static_cast<unsigned long>(divisor)))
            throw ConsistencyError(std::string(label) + " kernel: non-integral count at rank " +
                                   std::to_string(n + 1));
        mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(divisor));
    }
    if (out.counts.total() != out.denominator)
        throw ConsistencyError(std::string(label) + " kernel: mass not preserved at rank " +
                               std::to_string(n + 1));
    return out;
}

}  // namespace

JointPMF kernel_step_A(const JointPMF& p) {
    const long n = p.n();
    return kernel_step(p, kernel_numerators_A, kernel_denominator_A(n), n + 2, "type A");
}

JointPMF kernel_step_B(const JointPMF& p) {
    const long n = p.n();
    return kernel_step(p, kernel_numerators_B, kernel_denominator_B(n), 2 * (n + 1), "type B");
}

JointCountMatrix counts_recursion_B(int n) {
    if (n < 1) throw RangeError("counts_recursion_B requires n >= 1");
    JointCountMatrix prev = base_joint_pmf().counts;
    for (long r = 2; r <= n; ++r) {
        JointCountMatrix next(static_cast<int>(r));
        auto old = [&](long i, long j) -> Integer {
            if (i < 0 || j < 0 || i > r - 1 || j > r - 1) return 0;
            return prev.at(static_cast<int>(i), static_cast<int>(j));
        };
        for (long i = 0; i <= r; ++i) {
            for (long j = 0; j <= r; ++j) {
                Integer acc = (r + i + j + 2 * i * j) * old(i, j);
                acc += (1 - i + (2 * r + 1) * j - 2 * i * j) * old(i - 1, j);
                acc += (1 - j + (2 * r + 1) * i - 2 * i * j) * old(i, j - 1);
                acc += (r * (2 * r + 3) - (2 * r + 1) * i - (2 * r + 1) * j + 2 * i * j) *
                       old(i - 1, j - 1);
                if (!mpz_divisible_ui_p(acc.get_mpz_t(), static_cast<unsigned long>(r)))
                    throw ConsistencyError("B recursion: inexact division at n = " +
                                           std::to_string(r));
                mpz_divexact_ui(acc.get_mpz_t(), acc.get_mpz_t(), static_cast<unsigned long>(r));
                if (acc < 0)
                    throw ConsistencyError("B recursion: negative coefficient at n = " +
                                           std::to_string(r));
                next.at(static_cast<int>(i), static_cast<int>(j)) = acc;
            }
        }
        prev = std::move(next);
    }
    return prev;
}

namespace {

JointPMF dihedral_joint(int m) {
    JointPMF p{JointCountMatrix(2), Integer(2 * m), true};
    p.counts.at(0, 0) = 1;
    p.counts.at(1, 1) = 2 * m - 2;
    p.counts.at(2, 2) = 1;
    return p;
}

/// Kernel chains are extended from the largest cached rank below the request.
class JointCache {
public:
    static JointCache& instance() {
        static JointCache cache;
        return cache;
    }

    JointPMF chain(Family family, int rank) {
        std::lock_guard lock(mutex_);
        auto& store = family == Family::A ? a_chain_ : b_chain_;
        if (store.empty()) store.emplace(1, base_joint_pmf());
        auto it = store.upper_bound(rank);
        --it;
        JointPMF p = it->second;
        for (int r = it->first; r < rank; ++r)
            p = family == Family::A ? kernel_step_A(p) : kernel_step_B(p);
        if (it->first != rank) store.emplace(rank, p);
        return p;
    }

    bool find(const GroupType& g, JointPMF& out) {
        std::lock_guard lock(mutex_);
        auto it = other_.find(g);
        if (it == other_.end()) return false;
        out = it->second;
        return true;
    }

    void put(const GroupType& g, const JointPMF& p) {
        std::lock_guard lock(mutex_);
        other_.emplace(g, p);
    }

private:
    std::mutex mutex_;
    std::map<int, JointPMF> a_chain_, b_chain_;
    std::map<GroupType, JointPMF> other_;
};

JointPMF compute_joint(const GroupType& g, const ExactDistOptions& options) {
    const int n = g.parameter();
    switch (g.family()) {
        case Family::I2: return dihedral_joint(n);
        case Family::A:
        case Family::B:
            if (n > options.rank_limit)
                throw CapExceeded("exact law of " + g.name() + " exceeds the rank limit " +
                                  std::to_string(options.rank_limit));
            return JointCache::instance().chain(g.family(), n);
        case Family::D: {
            JointPMF cached;
            if (JointCache::instance().find(g, cached)) return cached;
            const bool enumerable = n <= options.d_bruteforce_max_rank &&
                                    g.order() <= Integer(std::to_string(options.cap));
            if (enumerable) {
                JointPMF p{joint_counts_bruteforce(g, options.cap), g.order(), true};
                JointCache::instance().put(g, p);
                return p;
            }
            if (n > options.rank_limit)
                throw CapExceeded("surrogate law of " + g.name() + " exceeds the rank limit " +
                                  std::to_string(options.rank_limit));
            JointPMF p = JointCache::instance().chain(Family::B, n);
            p.exact = false;
            return p;
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace

JointPMF joint_pmf(const GroupType& g, const ExactDistOptions& options) {
    std::filesystem::path file;
    if (!options.cache_dir.empty()) {
        file = std::filesystem::path(options.cache_dir) / joint_cache_filename(g);
        std::ifstream in(file);
        if (in) {
            try {
                return joint_pmf_from_json(Json::parse(in));
            } catch (const std::exception&) {
                // unreadable entries are recomputed and overwritten
            }
        }
    }
    JointPMF p = compute_joint(g, options);
    if (!file.empty() && p.exact) {
        std::error_code ec;
        std::filesystem::create_directories(file.parent_path(), ec);
        std::ofstream out(file);
        if (out) out << to_json(p).dump() << '\n';
    }
    return p;
}

IntegerPMF t_marginal(const JointPMF& p) {
    const int n = p.n();
    std::vector<Integer> tally(2 * n + 1, 0);
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) tally[i + j] += p.counts.at(i, j);
    IntegerPMF out{0, {}};
    out.probabilities.reserve(tally.size());
    for (const auto& c : tally) out.probabilities.push_back(make_rational(c, p.denominator));
    return out;
}

IntegerPMF des_marginal(const JointPMF& p) {
    const int n = p.n();
    IntegerPMF out{0, {}};
    for (int i = 0; i <= n; ++i) {
        Integer row = 0;
        for (int j = 0; j <= n; ++j) row += p.counts.at(i, j);
        out.probabilities.push_back(make_rational(row, p.denominator));
    }
    return out;
}

TDistribution t_pmf(const GroupType& g, const ExactDistOptions& options) {
    JointPMF p = joint_pmf(g, options);
    return {t_marginal(p), p.exact};
}

TDistribution t_pmf(const ProductGroup& g, const ExactDistOptions& options) {
    TDistribution out{IntegerPMF::point_mass(0), true};
    std::map<GroupType, TDistribution> memo;
    for (const auto& f : g.factors) {
        auto it = memo.find(f);
        if (it == memo.end()) it = memo.emplace(f, t_pmf(f, options)).first;
        out.pmf = convolve(out.pmf, it->second.pmf);
        out.exact = out.exact && it->second.exact;
    }
    return out;
}

IntegerPMF t_pmf_bruteforce(const ProductGroup& g, std::uint64_t cap) {
    std::vector<Integer> tally(2 * g.rank() + 1, 0);
    for_each_element(g, [&](const ProductElement& w) { ++tally[t_statistic(w)]; }, cap);
    const Integer order = g.order();
    IntegerPMF out{0, {}};
    for (const auto& c : tally) out.probabilities.push_back(make_rational(c, order));
    return out;
}

}  // namespace coxdes
