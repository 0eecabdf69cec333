#include "coxdes/clt.hpp"

#include "coxdes/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace coxdes {

DihedralSplit decompose_dihedral(const ProductGroup& g) {
    DihedralSplit out;
    for (const auto& f : g.factors) (f.is_dihedral() ? out.dihedral : out.non_dihedral).factors.push_back(f);
    return out;
}

Rational criterion_three(const ProductGroup& g) {
    Rational c = 0;
    for (const auto& f : g.factors) c += f.is_dihedral() ? make_rational(1, f.parameter()) : Rational(f.rank());
    return c;
}

bool is_delta_small(int rank, int total_rank, const Rational& delta, bool* used_exact) {
    if (delta <= 0 || delta >= 1) throw RangeError("delta must lie strictly between 0 and 1");
    if (used_exact) *used_exact = false;
    const long double exponent = 1.0L - static_cast<long double>(delta.get_d());
    const long double x = std::exp(exponent * std::log(static_cast<long double>(total_rank)));
    const long double lo = x * (1.0L - 1e-12L), hi = x * (1.0L + 1e-12L);
    if (rank <= lo) return true;
    if (rank > hi) return false;
    if (used_exact) *used_exact = true;
    // rank <= R^((q-p)/q)  <=>  rank^q <= R^(q-p)
    const Integer& p = delta.get_num();
    const Integer& q = delta.get_den();
    if (q > 4096) return false;
    Integer lhs, rhs;
    mpz_ui_pow_ui(lhs.get_mpz_t(), static_cast<unsigned long>(rank), q.get_ui());
    mpz_ui_pow_ui(rhs.get_mpz_t(), static_cast<unsigned long>(total_rank), Integer(q - p).get_ui());
    return lhs <= rhs;
}

DeltaSplit delta_small_split(const ProductGroup& g, const Rational& delta) {
    if (delta <= 0 || delta >= 1) throw RangeError("delta must lie strictly between 0 and 1");
    DeltaSplit out;
    out.sorted = g;
    std::stable_sort(out.sorted.factors.begin(), out.sorted.factors.end(),
                     [](const GroupType& a, const GroupType& b) { return a.rank() > b.rank(); });
    const int total = g.rank();
    std::map<int, bool> by_rank;
    for (const auto& f : out.sorted.factors) {
        auto it = by_rank.find(f.rank());
        if (it == by_rank.end()) {
            bool exact = false;
            it = by_rank.emplace(f.rank(), is_delta_small(f.rank(), total, delta, &exact)).first;
            out.exact_fallback = out.exact_fallback || exact;
        }
        out.is_small.push_back(it->second);
    }
    // m_n = min{i : W_{n,i+1} is delta-small}; sorted ranks make this a prefix.
    while (out.m < static_cast<int>(out.is_small.size()) && !out.is_small[out.m]) ++out.m;
    for (std::size_t i = 0; i < out.sorted.factors.size(); ++i)
        (static_cast<int>(i) < out.m ? out.large : out.small).factors.push_back(out.sorted.factors[i]);
    return out;
}

std::size_t TriangularRow::size() const {
    std::size_t k = 0;
    for (const auto& c : components) k += c.multiplicity;
    return k;
}

TriangularRow make_row(const ProductGroup& g, const ExactDistOptions& options) {
    TriangularRow row;
    std::map<GroupType, std::size_t> slot;
    for (const auto& f : g.factors) {
        auto it = slot.find(f);
        if (it != slot.end()) {
            ++row.components[it->second].multiplicity;
            continue;
        }
        const TDistribution t = t_pmf(f, options);
        const Rational mean = t.pmf.mean();
        if (mean.get_den() != 1) throw ConsistencyError("non-integral mean of T on " + f.name());
        RowComponent c{f, 1, t.pmf.shifted(-static_cast<int>(mean.get_num().get_si())), 0, t.exact};
        c.variance = c.centred.variance();
        slot.emplace(f, row.components.size());
        row.components.push_back(std::move(c));
    }
    row.total_variance = 0;
    for (const auto& c : row.components) {
        row.total_variance += c.variance * static_cast<unsigned long>(c.multiplicity);
        row.exact = row.exact && c.exact;
    }
    return row;
}

Rational lindeberg_sum(const TriangularRow& row, const Rational& eps) {
    if (eps <= 0) throw RangeError("eps must be positive");
    if (row.total_variance == 0) throw RangeError("degenerate row: zero variance");
    const Rational bound = eps * eps * row.total_variance;  // |x| > eps s  <=>  x^2 > eps^2 s^2
    Rational sum = 0;
    for (const auto& c : row.components) {
        Rational part = 0;
        for (std::size_t k = 0; k < c.centred.probabilities.size(); ++k) {
            const long x = c.centred.offset + static_cast<long>(k);
            const Rational x2(x * x);
            if (x2 > bound) part += x2 * c.centred.probabilities[k];
        }
        sum += part * static_cast<unsigned long>(c.multiplicity);
    }
    return sum / row.total_variance;
}

Rational max_ratio(const TriangularRow& row) {
    if (row.total_variance == 0) throw RangeError("degenerate row: zero variance");
    Rational best = 0;
    for (const auto& c : row.components) best = std::max(best, c.variance);
    return best / row.total_variance;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

KSDistance ks_distance(int offset, const std::vector<double>& probabilities, double mean, double variance) {
    if (!(variance > 0.0)) throw RangeError("KS distance needs positive variance");
    const double sd = std::sqrt(variance);
    KSDistance d;
    long double cdf = 0.0L;
    for (std::size_t k = 0; k < probabilities.size(); ++k) {
        const double p = probabilities[k];
        if (p <= 0.0) continue;
        const double phi = normal_cdf((offset + static_cast<double>(k) - mean) / sd);
        const double left = static_cast<double>(cdf);
        cdf += p;
        const double right = static_cast<double>(cdf);
        d.plain = std::max({d.plain, std::fabs(left - phi), std::fabs(right - phi)});
        d.corrected = std::max(d.corrected, std::fabs(0.5 * (left + right) - phi));
    }
    return d;
}

KSDistance ks_distance_exact(const IntegerPMF& p) {
    const Rational var = p.variance();
    if (var == 0) throw RangeError("KS distance needs positive variance");
    std::vector<double> probs;
    probs.reserve(p.probabilities.size());
    for (const auto& q : p.probabilities) probs.push_back(q.get_d());
    return ks_distance(p.offset, probs, p.mean().get_d(), var.get_d());
}

KSDistance ks_distance_mc(const ProductGroup& g, std::uint64_t samples, const SamplingPlan& plan,
                          const VarianceOptions& options) {
    if (samples == 0) throw RangeError("need at least one sample");
    const auto values = sample_t_values(g, samples, plan);
    std::vector<std::uint64_t> tally(2 * static_cast<std::size_t>(g.rank()) + 1, 0);
    for (int t : values) ++tally.at(static_cast<std::size_t>(t));
    std::vector<double> probs;
    probs.reserve(tally.size());
    for (auto c : tally) probs.push_back(static_cast<double>(c) / static_cast<double>(samples));
    const VarianceEstimate v = variance_T(g, options);
    return ks_distance(0, probs, static_cast<double>(mean_T(g)), v.value.get_d());
}

std::optional<ApproximateLaw> t_law_double(const ProductGroup& g, const ExactDistOptions& options,
                                           std::size_t max_support) {
    if (2 * static_cast<std::size_t>(g.rank()) + 1 > max_support) return std::nullopt;
    ApproximateLaw law{0, {1.0}, true};
    std::map<GroupType, std::pair<IntegerPMF, bool>> memo;
    for (const auto& f : g.factors) {
        auto it = memo.find(f);
        if (it == memo.end()) {
            TDistribution t = t_pmf(f, options);
            it = memo.emplace(f, std::make_pair(std::move(t.pmf), t.exact)).first;
        }
        const IntegerPMF& p = it->second.first;
        law.exact_inputs = law.exact_inputs && it->second.second;
        std::vector<double> q;
        q.reserve(p.probabilities.size());
        for (const auto& r : p.probabilities) q.push_back(r.get_d());
        std::vector<double> next(law.probabilities.size() + q.size() - 1, 0.0);
        for (std::size_t a = 0; a < law.probabilities.size(); ++a)
            for (std::size_t b = 0; b < q.size(); ++b) next[a + b] += law.probabilities[a] * q[b];
        law.probabilities = std::move(next);
        law.offset += p.offset;
    }
    return law;
}

namespace {

/// V(T) per factor type, memoized across a run.
class VarianceCache {
public:
    explicit VarianceCache(const VarianceOptions& options) : options_(options) {}

    const VarianceEstimate& get(const GroupType& g) {
        auto it = memo_.find(g);
        if (it == memo_.end()) it = memo_.emplace(g, variance_T(g, options_)).first;
        return it->second;
    }

private:
    const VarianceOptions& options_;
    std::map<GroupType, VarianceEstimate> memo_;
};

std::vector<ProfileEntry> profile_from(const std::vector<std::pair<int, std::vector<Rational>>>& per_n,
                                       const std::vector<bool>& exact, std::vector<int> k_list) {
    if (k_list.empty()) {
        std::size_t max_m = 0;
        for (const auto& [n, v] : per_n) max_m = std::max(max_m, v.size());
        for (std::size_t k = 1; k <= std::min<std::size_t>(max_m + 1, 64); ++k) k_list.push_back(static_cast<int>(k));
    }
    std::vector<ProfileEntry> out;
    for (int k : k_list) {
        if (k < 1) throw RangeError("k must be >= 1");
        ProfileEntry e{k, 0, 0, true};
        for (std::size_t r = 0; r < per_n.size(); ++r) {
            const auto& [n, vars] = per_n[r];
            Rational total = 0;
            for (const auto& v : vars) total += v;
            Rational tail = 0;
            for (std::size_t i = static_cast<std::size_t>(k); i <= vars.size(); ++i) tail += vars[i - 1];
            const Rational ratio = total == 0 ? Rational(0) : Rational(tail / total);
            if (e.argsup_n == 0 || ratio > e.sup) {
                e.sup = ratio;
                e.argsup_n = n;
            }
            e.exact = e.exact && exact[r];
        }
        out.push_back(e);
    }
    return out;
}

std::vector<Rational> large_variances(const DeltaSplit& split, VarianceCache& cache, bool& exact) {
    std::vector<Rational> v;
    for (const auto& f : split.large.factors) {
        const auto& e = cache.get(f);
        exact = exact && e.exact;
        v.push_back(e.value);
    }
    return v;
}

}  // namespace

std::vector<ProfileEntry> well_behaved_profile(const SequenceSpec& spec, const Rational& delta,
                                               const std::vector<int>& n_list, const std::vector<int>& k_list,
                                               const VarianceOptions& options) {
    VarianceCache cache(options);
    std::vector<std::pair<int, std::vector<Rational>>> per_n;
    std::vector<bool> exact;
    for (int n : n_list) {
        const Instantiation inst = instantiate(spec, n);
        const DeltaSplit split = delta_small_split(inst.group, delta);
        bool ex = true;
        per_n.emplace_back(n, large_variances(split, cache, ex));
        exact.push_back(ex);
    }
    return profile_from(per_n, exact, k_list);
}

std::string trend_verdict(const std::vector<TrendRecord>& records) {
    std::vector<const TrendRecord*> ok;
    for (const auto& r : records)
        if (r.ok) ok.push_back(&r);
    if (ok.size() < 2) return "insufficient data (finite-n diagnostic only)";
    const Rational& a = ok[ok.size() - 2]->criterion;
    const Rational& b = ok.back()->criterion;
    bool growing = a > 0 && b > a * make_rational(105, 100);
    // A convergent series still rises, but its slope in log n collapses.
    if (growing && ok.size() >= 3 && ok[ok.size() - 3]->n > 0 && ok[ok.size() - 3]->n < ok[ok.size() - 2]->n &&
        ok[ok.size() - 2]->n < ok.back()->n) {
        const TrendRecord& r0 = *ok[ok.size() - 3];
        const TrendRecord& r1 = *ok[ok.size() - 2];
        const TrendRecord& r2 = *ok.back();
        const double before = Rational(r1.criterion - r0.criterion).get_d() / std::log(double(r1.n) / r0.n);
        const double last = Rational(r2.criterion - r1.criterion).get_d() / std::log(double(r2.n) / r1.n);
        growing = 2 * last >= before;
    }
    if (growing) return "criterion growing: CLT expected (finite-n diagnostic only)";
    return "criterion bounded: no CLT expected (finite-n diagnostic only)";
}

TrendReport clt_trend(const SequenceSpec& spec, const std::vector<int>& n_list, const TrendOptions& options) {
    if (options.delta <= 0 || options.delta >= 1) throw RangeError("delta must lie strictly between 0 and 1");
    TrendReport report;
    report.delta = options.delta;
    VarianceCache cache(options.variance);
    std::vector<std::pair<int, std::vector<Rational>>> per_n;
    std::vector<bool> per_n_exact;
    for (int n : n_list) {
        TrendRecord r;
        r.n = n;
        try {
            Instantiation inst = instantiate(spec, n);
            r.log = std::move(inst.log);
            const ProductGroup& g = inst.group;
            r.rank = g.rank();
            r.k_n = g.factors.size();
            const DeltaSplit split = delta_small_split(g, options.delta);
            if (split.exact_fallback) r.log.push_back("delta threshold decided by exact comparison");
            for (std::size_t i = 0; i < split.sorted.factors.size(); ++i) {
                const auto& f = split.sorted.factors[i];
                if (!r.factors.empty() && r.factors.back().type == f && r.factors.back().small == split.is_small[i])
                    ++r.factors.back().count;
                else
                    r.factors.push_back({f, 1, split.is_small[i]});
            }
            for (const auto& run : r.factors) {
                if (!r.group.empty()) r.group += " x ";
                r.group += run.type.name();
                if (run.count > 1) r.group += "^" + std::to_string(run.count);
            }
            r.m_n = split.m;
            r.rank_large = split.large.rank();
            r.rank_small = split.small.rank();
            r.criterion = criterion_three(g);
            r.var_total = r.var_non_dihedral = r.var_dihedral = r.var_large = r.var_small = 0;
            for (std::size_t i = 0; i < split.sorted.factors.size(); ++i) {
                const auto& f = split.sorted.factors[i];
                const auto& v = cache.get(f);
                r.variance_exact = r.variance_exact && v.exact;
                r.var_total += v.value;
                (f.is_dihedral() ? r.var_dihedral : r.var_non_dihedral) += v.value;
                (split.is_small[i] ? r.var_small : r.var_large) += v.value;
            }
            bool ex = true;
            r.large_variances = large_variances(split, cache, ex);
            per_n.emplace_back(n, r.large_variances);
            per_n_exact.push_back(ex);

            try {
                const TriangularRow row = make_row(g, options.variance.dist);
                r.row_exact = row.exact;
                r.max_ratio = max_ratio(row);
                for (const auto& eps : options.eps_grid) r.lindeberg.emplace_back(eps, lindeberg_sum(row, eps));
            } catch (const std::exception& e) {
                r.log.push_back(std::string("lindeberg skipped: ") + e.what());
            }
            try {
                if (auto law = t_law_double(g, options.variance.dist, options.max_ks_support)) {
                    double mean = 0.0, m2 = 0.0;
                    for (std::size_t k = 0; k < law->probabilities.size(); ++k)
                        mean += (law->offset + static_cast<double>(k)) * law->probabilities[k];
                    for (std::size_t k = 0; k < law->probabilities.size(); ++k) {
                        const double d = law->offset + static_cast<double>(k) - mean;
                        m2 += d * d * law->probabilities[k];
                    }
                    r.ks = ks_distance(law->offset, law->probabilities, mean, m2);
                    r.ks_exact = law->exact_inputs;
                } else {
                    r.log.push_back("ks skipped: support too large");
                }
            } catch (const std::exception& e) {
                r.log.push_back(std::string("ks skipped: ") + e.what());
            }
        } catch (const std::exception& e) {
            r.ok = false;
            r.error = e.what();
        }
        report.records.push_back(std::move(r));
    }
    report.profile = profile_from(per_n, per_n_exact, options.k_list);
    report.verdict = trend_verdict(report.records);
    return report;
}

namespace {

Json rational_json(const Rational& q) { return to_string(q); }

}  // namespace

Json to_json(const TrendReport& report) {
    Json records = Json::array();
    for (const auto& r : report.records) {
        Json j;
        j["n"] = r.n;
        j["ok"] = r.ok;
        if (!r.ok) {
            j["error"] = r.error;
            j["log"] = r.log;
            records.push_back(std::move(j));
            continue;
        }
        j["group"] = r.group;
        j["rank"] = r.rank;
        j["k_n"] = r.k_n;
        Json factors = Json::array();
        for (const auto& f : r.factors)
            factors.push_back({{"group", f.type.name()}, {"rank", f.type.rank()}, {"count", f.count}, {"delta_small", f.small}});
        j["factors"] = std::move(factors);
        j["m_n"] = r.m_n;
        j["rank_large"] = r.rank_large;
        j["rank_small"] = r.rank_small;
        j["variance"] = {{"total", rational_json(r.var_total)},
                         {"non_dihedral", rational_json(r.var_non_dihedral)},
                         {"dihedral", rational_json(r.var_dihedral)},
                         {"large", rational_json(r.var_large)},
                         {"small", rational_json(r.var_small)},
                         {"exact", r.variance_exact}};
        j["criterion"] = rational_json(r.criterion);
        j["criterion_value"] = r.criterion.get_d();
        if (r.lindeberg.empty()) {
            j["max_ratio"] = nullptr;
            j["lindeberg"] = Json::array();
        } else {
            j["max_ratio"] = rational_json(r.max_ratio);
            Json lind = Json::array();
            for (const auto& [eps, v] : r.lindeberg)
                lind.push_back({{"eps", rational_json(eps)}, {"value", rational_json(v)}, {"value_float", v.get_d()}});
            j["lindeberg"] = std::move(lind);
        }
        j["row_exact"] = r.row_exact;
        if (r.ks)
            j["ks"] = {{"plain", r.ks->plain}, {"corrected", r.ks->corrected}, {"exact_inputs", r.ks_exact}};
        else
            j["ks"] = nullptr;
        j["log"] = r.log;
        records.push_back(std::move(j));
    }
    Json profile = Json::array();
    for (const auto& p : report.profile)
        profile.push_back({{"k", p.k}, {"sup", rational_json(p.sup)}, {"sup_float", p.sup.get_d()},
                           {"argsup_n", p.argsup_n}, {"exact", p.exact}});
    return Json{{"delta", rational_json(report.delta)},
                {"records", std::move(records)},
                {"well_behaved_profile", std::move(profile)},
                {"verdict", report.verdict}};
}

std::string to_csv(const TrendReport& report) {
    std::ostringstream out;
    out.precision(17);
    out << "n,ok,rank,k_n,m_n,criterion,criterion_value,var_total,variance_exact,max_ratio,eps,lindeberg,"
           "ks_plain,ks_corrected\n";
    for (const auto& r : report.records) {
        const auto prefix = [&] {
            out << r.n << ',' << (r.ok ? "true" : "false") << ',' << r.rank << ',' << r.k_n << ',' << r.m_n << ','
                << to_string(r.criterion) << ',' << r.criterion.get_d() << ',' << to_string(r.var_total) << ','
                << (r.variance_exact ? "true" : "false") << ','
                << (r.lindeberg.empty() ? std::string() : to_string(r.max_ratio)) << ',';
        };
        const auto suffix = [&] {
            if (r.ks) out << ',' << r.ks->plain << ',' << r.ks->corrected << '\n';
            else out << ",,\n";
        };
        if (r.lindeberg.empty()) {
            prefix();
            out << ',';
            suffix();
        }
        for (const auto& [eps, v] : r.lindeberg) {
            prefix();
            out << to_string(eps) << ',' << to_string(v);
            suffix();
        }
    }
    return out.str();
}

}  // namespace coxdes
