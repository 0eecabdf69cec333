#include "commands.hpp"

#include "coxdes/clt.hpp"
#include "coxdes/complex.hpp"
#include "coxdes/errors.hpp"
#include "coxdes/io.hpp"
#include "coxdes/moments.hpp"
#include "coxdes/sequence.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace coxdes::cli {

std::vector<int> parse_int_list(const std::string& text) {
    std::set<int> values;
    std::stringstream parts(text);
    std::string part;
    const auto number = [&](const std::string& s) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(s, &used);
        } catch (const std::exception&) {
            throw ParseError("bad integer '" + s + "' in list '" + text + "'", 0);
        }
        if (used != s.size()) throw ParseError("bad integer '" + s + "' in list '" + text + "'", 0);
        return v;
    };
    while (std::getline(parts, part, ',')) {
        if (part.empty()) throw ParseError("empty entry in list '" + text + "'", 0);
        const auto dots = part.find("..");
        if (dots == std::string::npos) {
            values.insert(number(part));
            continue;
        }
        const int a = number(part.substr(0, dots)), b = number(part.substr(dots + 2));
        if (b < a) throw ParseError("empty range '" + part + "'", 0);
        if (b - a > 1'000'000) throw RangeError("range '" + part + "' is too long");
        for (int v = a; v <= b; ++v) values.insert(v);
    }
    if (values.empty()) throw ParseError("empty list", 0);
    return {values.begin(), values.end()};
}

namespace {

enum class Format { json, csv, table };

const std::map<std::string, Format> format_names{{"json", Format::json}, {"csv", Format::csv}, {"table", Format::table}};

std::vector<Rational> parse_rational_list(const std::string& text) {
    std::vector<Rational> out;
    std::stringstream parts(text);
    std::string part;
    while (std::getline(parts, part, ',')) out.push_back(parse_rational(part));
    if (out.empty()) throw ParseError("empty list", 0);
    return out;
}

void print_table(std::ostream& out, const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
    for (const auto& r : rows)
        for (std::size_t c = 0; c < r.size() && c < width.size(); ++c) width[c] = std::max(width[c], r[c].size());
    const auto line = [&](const std::vector<std::string>& r) {
        for (std::size_t c = 0; c < header.size(); ++c) {
            const std::string& cell = c < r.size() ? r[c] : std::string();
            out << std::left << std::setw(static_cast<int>(width[c])) << cell << (c + 1 < header.size() ? "  " : "");
        }
        out << '\n';
    };
    line(header);
    std::vector<std::string> rule;
    for (auto w : width) rule.emplace_back(w, '-');
    line(rule);
    for (const auto& r : rows) line(r);
}

void print_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    const auto line = [&](const std::vector<std::string>& r) {
        for (std::size_t c = 0; c < r.size(); ++c) out << (c ? "," : "") << csv_field(r[c]);
        out << '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
}

std::string fixed(double x) {
    std::ostringstream s;
    s << std::setprecision(10) << x;
    return s.str();
}

struct Common {
    std::string format = "json";
    std::uint64_t cap = default_enumeration_cap;
    int rank_limit = 300;
    int d_max_rank = 8;
    std::string cache_dir;

    Format fmt() const { return format_names.at(format); }

    ExactDistOptions dist() const {
        ExactDistOptions o;
        o.cap = cap;
        o.rank_limit = rank_limit;
        o.d_bruteforce_max_rank = d_max_rank;
        o.cache_dir = cache_dir;
        if (o.cache_dir.empty())
            if (const char* env = std::getenv("COXDES_CACHE_DIR")) o.cache_dir = env;
        return o;
    }
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--format", c.format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "table"}))
        ->capture_default_str();
    cmd->add_option("--cap", c.cap, "Enumeration cap (elements)")->capture_default_str();
    cmd->add_option("--rank-limit", c.rank_limit, "Largest rank for exact A/B laws")->capture_default_str();
    cmd->add_option("--d-max-rank", c.d_max_rank, "Largest D rank enumerated exactly")->capture_default_str();
    cmd->add_option("--cache-dir", c.cache_dir, "Cache directory for joint laws (default: $COXDES_CACHE_DIR)");
}

// ---------------------------------------------------------------- dist

struct DistArgs {
    Common common;
    std::string group;
    std::string what = "joint";
};

int cmd_dist(const DistArgs& a, std::ostream& out) {
    const ProductGroup g = parse_group_spec(a.group);
    const ExactDistOptions opts = a.common.dist();
    std::vector<std::pair<GroupType, std::size_t>> distinct;
    for (const auto& f : g.factors) {
        auto it = std::find_if(distinct.begin(), distinct.end(), [&](const auto& p) { return p.first == f; });
        if (it == distinct.end()) distinct.emplace_back(f, 1);
        else ++it->second;
    }
    std::vector<JointPMF> joints;
    for (const auto& [f, k] : distinct) joints.push_back(joint_pmf(f, opts));
    const TDistribution t = t_pmf(g, opts);

    switch (a.common.fmt()) {
        case Format::json: {
            Json factors = Json::array();
            for (std::size_t i = 0; i < distinct.size(); ++i)
                factors.push_back({{"group", distinct[i].first.name()},
                                   {"multiplicity", distinct[i].second},
                                   {"exact", joints[i].exact},
                                   {"joint", to_json(joints[i])}});
            Json tj = to_json(t.pmf);
            tj["mean"] = to_string(t.pmf.mean());
            tj["variance"] = to_string(t.pmf.variance());
            out << Json{{"group", g.name()},
                        {"order", g.order().get_str()},
                        {"rank", g.rank()},
                        {"exact", t.exact},
                        {"factors", std::move(factors)},
                        {"t_pmf", std::move(tj)}}
                       .dump(2)
                << '\n';
            break;
        }
        case Format::csv:
        case Format::table: {
            std::vector<std::string> header;
            std::vector<std::vector<std::string>> rows;
            if (a.what == "joint") {
                header = {"factor", "i", "j", "count", "denominator", "exact"};
                for (std::size_t f = 0; f < distinct.size(); ++f) {
                    const JointPMF& p = joints[f];
                    for (int i = 0; i <= p.n(); ++i)
                        for (int j = 0; j <= p.n(); ++j)
                            if (p.counts.at(i, j) != 0)
                                rows.push_back({distinct[f].first.name(), std::to_string(i), std::to_string(j),
                                                p.counts.at(i, j).get_str(), p.denominator.get_str(),
                                                p.exact ? "true" : "false"});
                }
            } else {
                header = {"t", "numerator", "denominator", "exact"};
                for (std::size_t k = 0; k < t.pmf.probabilities.size(); ++k) {
                    const Rational& q = t.pmf.probabilities[k];
                    if (q == 0) continue;
                    rows.push_back({std::to_string(t.pmf.offset + static_cast<int>(k)), q.get_num().get_str(),
                                    q.get_den().get_str(), t.exact ? "true" : "false"});
                }
            }
            if (a.common.fmt() == Format::csv) {
                print_csv(out, header, rows);
            } else {
                out << g.name() << "  order " << g.order().get_str() << (t.exact ? "" : "  (approximate)") << '\n';
                print_table(out, header, rows);
            }
            break;
        }
    }
    return ok;
}

// ---------------------------------------------------------------- moments

struct MomentsArgs {
    Common common;
    std::string family;
    std::string n_list = "3..10";
    std::string group;
    std::vector<std::string> keys;
};

const std::vector<std::string> group_keys{"meanT", "varT", "T3c", "T4c"};

struct MomentRow {
    std::string family;
    int n = 0;
    std::string key;
    std::vector<std::pair<std::string, Rational>> values;  // source -> value
    std::optional<Rational> published;
    bool exact = true;

    bool equal() const {
        for (const auto& v : values)
            if (v.second != values.front().second) return false;
        return true;
    }
};

MomentRow group_moment(const ProductGroup& g, const std::string& label, int n, const std::string& key,
                       const Common& common) {
    MomentRow row{label, n, key, {}, std::nullopt, true};
    const TDistribution t = t_pmf(g, common.dist());
    row.exact = t.exact;
    if (key == "meanT") {
        row.values.emplace_back("closed_form", Rational(mean_T(g)));
        row.values.emplace_back("pmf", t.pmf.mean());
    } else if (key == "varT") {
        VarianceOptions vo;
        vo.dist = common.dist();
        const VarianceEstimate v = variance_T(g, vo);
        row.exact = row.exact && v.exact;
        row.values.emplace_back("closed_form", v.value);
        row.values.emplace_back("pmf", t.pmf.variance());
    } else {
        row.values.emplace_back("pmf", central_moment_from_pmf(t.pmf, key == "T3c" ? 3 : 4));
    }
    return row;
}

int cmd_moments(const MomentsArgs& a, std::ostream& out) {
    std::vector<MomentRow> rows;
    std::vector<std::string> keys = a.keys;
    if (!a.group.empty()) {
        const ProductGroup g = parse_group_spec(a.group);
        if (keys.empty()) keys = group_keys;
        for (const auto& k : keys) {
            if (std::find(group_keys.begin(), group_keys.end(), k) == group_keys.end())
                throw ParseError("key '" + k + "' needs --family (group keys: meanT, varT, T3c, T4c)", 0);
            rows.push_back(group_moment(g, g.name(), g.rank(), k, a.common));
        }
    } else {
        if (a.family.empty()) throw ParseError("either --group or --family is required", 0);
        const Family family = parse_family(a.family);
        if (keys.empty())
            for (const auto& info : moment_keys()) keys.emplace_back(info.name);
        const auto ns = parse_int_list(a.n_list);
        for (int n : ns) {
            for (const auto& k : keys) {
                if (k == "meanT" || k == "varT") {
                    const ProductGroup g{{GroupType(family, n)}};
                    rows.push_back(group_moment(g, std::string(family_name(family)), n, k, a.common));
                    continue;
                }
                const MomentKey key = parse_moment_key(k);
                if (family != Family::A && family != Family::B)
                    throw RangeError("table moments exist only for families A and B");
                if (n < 1) throw RangeError("n must be >= 1");
                MomentRow row{std::string(family_name(family)), n, k, {}, std::nullopt, true};
                if (n >= closed_form_threshold(family)) {
                    row.values.emplace_back("closed_form", closed_form(key, family, n));
                    if (has_published_erratum(key, family)) row.published = published_table_value(key, family, n);
                }
                row.values.emplace_back("recursion", moment_recursive(key, family, n));
                if (is_valid_parameter(family, n) && n <= a.common.rank_limit)
                    row.values.emplace_back("pmf", moment_from_pmf(key, joint_pmf(GroupType(family, n), a.common.dist())));
                rows.push_back(std::move(row));
            }
        }
    }

    bool all_equal = true;
    for (const auto& r : rows) all_equal = all_equal && r.equal();

    switch (a.common.fmt()) {
        case Format::json: {
            Json arr = Json::array();
            for (const auto& r : rows) {
                Json j{{"family", r.family}, {"n", r.n}, {"key", r.key}};
                for (const char* src : {"closed_form", "recursion", "pmf"}) {
                    auto it = std::find_if(r.values.begin(), r.values.end(), [&](const auto& v) { return v.first == src; });
                    j[src] = it == r.values.end() ? Json(nullptr) : Json(to_string(it->second));
                }
                j["equal"] = r.equal();
                j["exact"] = r.exact;
                if (r.published) j["published_table_value"] = to_string(*r.published);
                arr.push_back(std::move(j));
            }
            out << arr.dump(2) << '\n';
            break;
        }
        case Format::csv: {
            std::vector<std::vector<std::string>> lines;
            for (const auto& r : rows)
                for (const auto& [src, v] : r.values)
                    lines.push_back({r.family, std::to_string(r.n), r.key, v.get_num().get_str(), v.get_den().get_str(), src});
            print_csv(out, {"family", "n", "key", "exact_value_numerator", "exact_value_denominator", "source"}, lines);
            break;
        }
        case Format::table: {
            std::vector<std::vector<std::string>> lines;
            for (const auto& r : rows) {
                std::vector<std::string> line{r.family, std::to_string(r.n), r.key};
                for (const char* src : {"closed_form", "recursion", "pmf"}) {
                    auto it = std::find_if(r.values.begin(), r.values.end(), [&](const auto& v) { return v.first == src; });
                    line.push_back(it == r.values.end() ? "-" : to_string(it->second));
                }
                line.push_back(r.equal() ? "yes" : "NO");
                lines.push_back(std::move(line));
            }
            print_table(out, {"family", "n", "key", "closed_form", "recursion", "pmf", "equal"}, lines);
            break;
        }
    }
    return all_equal ? ok : consistency_failure;
}

// ---------------------------------------------------------------- sequence

struct SequenceArgs {
    Common common;
    std::string spec_path;
    std::string n_list = "8,16,32,64,128";
    std::string delta = "1/3";
    std::string eps = "1/10,1/4,1/2,1";
    std::string k_list;
    std::uint64_t mc_samples = 200'000;
    std::uint64_t seed = default_seed;
};

int cmd_sequence(const SequenceArgs& a, std::ostream& out) {
    std::ifstream in(a.spec_path);
    if (!in) throw ParseError("cannot read spec file '" + a.spec_path + "'", 0);
    std::stringstream buffer;
    buffer << in.rdbuf();
    const SequenceSpec spec = parse_sequence_spec_text(buffer.str());
    TrendOptions opts;
    opts.delta = parse_rational(a.delta);
    if (opts.delta <= 0 || opts.delta >= 1) throw RangeError("--delta must lie strictly between 0 and 1");
    opts.eps_grid = parse_rational_list(a.eps);
    for (const auto& e : opts.eps_grid)
        if (e <= 0) throw RangeError("--eps values must be positive");
    if (!a.k_list.empty()) opts.k_list = parse_int_list(a.k_list);
    opts.variance.dist = a.common.dist();
    opts.variance.mc_samples = a.mc_samples;
    opts.variance.seed = a.seed;
    const TrendReport report = clt_trend(spec, parse_int_list(a.n_list), opts);

    switch (a.common.fmt()) {
        case Format::json: {
            Json j = to_json(report);
            j["spec"] = to_json(spec);
            out << j.dump(2) << '\n';
            break;
        }
        case Format::csv: out << to_csv(report); break;
        case Format::table: {
            std::vector<std::vector<std::string>> rows;
            for (const auto& r : report.records) {
                if (!r.ok) {
                    rows.push_back({std::to_string(r.n), "error: " + r.error});
                    continue;
                }
                rows.push_back({std::to_string(r.n), std::to_string(r.rank), std::to_string(r.k_n),
                                std::to_string(r.m_n), fixed(r.criterion.get_d()),
                                fixed(r.var_total.get_d()) + (r.variance_exact ? "" : "~"),
                                r.lindeberg.empty() ? "-" : fixed(r.max_ratio.get_d()),
                                r.ks ? fixed(r.ks->corrected) : "-"});
            }
            print_table(out, {"n", "rank", "k_n", "m_n", "criterion", "variance", "max_ratio", "ks_corrected"}, rows);
            out << "verdict: " << report.verdict << '\n';
            break;
        }
    }
    return ok;
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
    Common common;
    std::string group;
    std::uint64_t samples = 100'000;
    std::uint64_t seed = default_seed;
    unsigned workers = 1;
    std::uint64_t chunk = 65536;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
    const ProductGroup g = parse_group_spec(a.group);
    if (a.samples < 2) throw RangeError("--samples must be at least 2");
    if (a.chunk == 0) throw RangeError("--chunk must be positive");
    const SamplingPlan plan{a.seed, a.chunk, std::max(1u, a.workers)};
    const auto values = sample_t_values(g, a.samples, plan);
    std::vector<std::uint64_t> tally(2 * static_cast<std::size_t>(g.rank()) + 1, 0);
    for (int t : values) ++tally[static_cast<std::size_t>(t)];
    std::vector<double> probs;
    long double sum = 0.0L;
    for (std::size_t k = 0; k < tally.size(); ++k) {
        probs.push_back(static_cast<double>(tally[k]) / static_cast<double>(a.samples));
        sum += static_cast<long double>(k) * tally[k];
    }
    const double mean = static_cast<double>(sum / a.samples);
    long double m2 = 0.0L;
    for (std::size_t k = 0; k < tally.size(); ++k) m2 += (k - mean) * (k - mean) * tally[k];
    const double sample_var = static_cast<double>(m2 / (a.samples - 1));

    VarianceOptions vo;
    vo.dist = a.common.dist();
    vo.seed = a.seed;
    const VarianceEstimate v = variance_T(g, vo);
    const KSDistance ks_mc = ks_distance(0, probs, static_cast<double>(mean_T(g)), v.value.get_d());

    std::optional<KSDistance> ks_exact;
    bool law_exact = false;
    std::string note;
    try {
        if (auto law = t_law_double(g, vo.dist)) {
            ks_exact = ks_distance(law->offset, law->probabilities, static_cast<double>(mean_T(g)), v.value.get_d());
            law_exact = law->exact_inputs;
        }
    } catch (const CapExceeded& e) {
        note = e.what();
    }

    switch (a.common.fmt()) {
        case Format::json: {
            Json j{{"group", g.name()},
                   {"samples", a.samples},
                   {"seed", a.seed},
                   {"chunk_size", a.chunk},
                   {"mean", mean_T(g)},
                   {"variance", to_string(v.value)},
                   {"variance_exact", v.exact},
                   {"sample_mean", mean},
                   {"sample_variance", sample_var},
                   {"ks_mc", {{"plain", ks_mc.plain}, {"corrected", ks_mc.corrected}}}};
            if (ks_exact)
                j["ks_exact"] = {{"plain", ks_exact->plain}, {"corrected", ks_exact->corrected}, {"exact_inputs", law_exact}};
            else
                j["ks_exact"] = nullptr;
            if (!note.empty()) j["note"] = note;
            out << j.dump(2) << '\n';
            break;
        }
        case Format::csv:
        case Format::table: {
            std::vector<std::vector<std::string>> rows{
                {"group", g.name()},
                {"samples", std::to_string(a.samples)},
                {"seed", std::to_string(a.seed)},
                {"mean", std::to_string(mean_T(g))},
                {"variance", to_string(v.value)},
                {"sample_mean", fixed(mean)},
                {"sample_variance", fixed(sample_var)},
                {"ks_mc_plain", fixed(ks_mc.plain)},
                {"ks_mc_corrected", fixed(ks_mc.corrected)},
                {"ks_exact_plain", ks_exact ? fixed(ks_exact->plain) : ""},
                {"ks_exact_corrected", ks_exact ? fixed(ks_exact->corrected) : ""}};
            if (a.common.fmt() == Format::csv) print_csv(out, {"quantity", "value"}, rows);
            else print_table(out, {"quantity", "value"}, rows);
            break;
        }
    }
    return ok;
}

// ---------------------------------------------------------------- complex

struct ComplexArgs {
    Common common;
    std::string group;
    std::vector<std::string> checks{"all"};
    std::uint64_t max_order = 50'000;
    int max_rank = 6;
};

int cmd_complex(const ComplexArgs& a, std::ostream& out) {
    const ProductGroup g = parse_group_spec(a.group);
    const ComplexReport r = analyze_complex(g, {a.max_order, a.max_rank});
    const std::set<std::string> sel(a.checks.begin(), a.checks.end());
    const bool all = sel.count("all") > 0;
    bool passed = true;
    if (all || sel.count("h")) passed = passed && r.h_identity && r.h_sum && r.h_nonnegative && r.f_bounds;
    if (all || sel.count("euler")) passed = passed && r.euler_zero;
    if (all || sel.count("gallery"))
        passed = passed && r.gallery.adjacency && r.gallery.thin && r.gallery.distance_is_length &&
                 r.gallery.wall_count_is_t;

    const auto join = [](const std::vector<Integer>& v) {
        std::string s;
        for (const auto& x : v) s += (s.empty() ? "" : " ") + x.get_str();
        return s;
    };
    switch (a.common.fmt()) {
        case Format::json: out << to_json(r).dump(2) << '\n'; break;
        case Format::csv:
        case Format::table: {
            const Json j = to_json(r);
            std::vector<std::vector<std::string>> rows{{"group", r.group},
                                                       {"order", r.order.get_str()},
                                                       {"f_vector", join(r.f)},
                                                       {"h_vector", join(r.h)},
                                                       {"t_tally", join(r.tally)},
                                                       {"euler_characteristic", r.euler.get_str()}};
            for (auto it = j["checks"].begin(); it != j["checks"].end(); ++it)
                rows.push_back({it.key(), it.value().get<bool>() ? "true" : "false"});
            rows.push_back({"lower_facet_count_mismatches", std::to_string(r.gallery.facet_count_mismatches)});
            if (r.gallery.counterexample) rows.push_back({"counterexample", *r.gallery.counterexample});
            if (a.common.fmt() == Format::csv) print_csv(out, {"quantity", "value"}, rows);
            else print_table(out, {"quantity", "value"}, rows);
            break;
        }
    }
    return passed ? ok : consistency_failure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact distributions, moments and CLT diagnostics for the two-sided descent statistic "
                 "t(w) = des(w) + des(w^-1) on finite Coxeter groups."};
    app.name("coxdes");
    app.set_version_flag("--version", std::string(COXDES_VERSION));
    app.require_subcommand(1);

    DistArgs dist;
    auto* c_dist = app.add_subcommand("dist", "Joint law of (des, ides) and the law of t");
    add_common(c_dist, dist.common);
    c_dist->add_option("--group", dist.group, "Group, e.g. \"B:4 x I2:5^2\"")->required();
    c_dist->add_option("--what", dist.what, "Section for csv/table output")
        ->check(CLI::IsMember({"joint", "t"}))
        ->capture_default_str();

    MomentsArgs mom;
    auto* c_mom = app.add_subcommand("moments", "Moment tables: closed form, recursion and exact law side by side");
    add_common(c_mom, mom.common);
    c_mom->add_option("--family", mom.family, "A or B (any family for meanT/varT/T3c/T4c)");
    c_mom->add_option("--n", mom.n_list, "Ranks, e.g. 3..10 or 4,8")->capture_default_str();
    c_mom->add_option("--group", mom.group, "Product group for meanT, varT, T3c, T4c");
    c_mom->add_option("--key", mom.keys, "Moment keys (repeatable); default all");

    SequenceArgs seq;
    auto* c_seq = app.add_subcommand("sequence", "CLT diagnostics along a sequence of groups");
    add_common(c_seq, seq.common);
    c_seq->add_option("--spec", seq.spec_path, "Sequence spec (JSON)")->required();
    c_seq->add_option("--n", seq.n_list, "Values of n")->capture_default_str();
    c_seq->add_option("--delta", seq.delta, "delta in (0,1)")->capture_default_str();
    c_seq->add_option("--eps", seq.eps, "Lindeberg eps grid")->capture_default_str();
    c_seq->add_option("--k", seq.k_list, "k values for the well-behaved profile (default 1..max m_n+1)");
    c_seq->add_option("--mc-samples", seq.mc_samples, "Monte Carlo draws for large type-D variances")
        ->capture_default_str();
    c_seq->add_option("--seed", seq.seed, "Random seed")->capture_default_str();

    SimulateArgs sim;
    auto* c_sim = app.add_subcommand("simulate", "Monte Carlo law of t and its normal distance");
    add_common(c_sim, sim.common);
    c_sim->add_option("--group", sim.group, "Group")->required();
    c_sim->add_option("--samples", sim.samples, "Number of draws")->capture_default_str();
    c_sim->add_option("--seed", sim.seed, "Random seed")->capture_default_str();
    c_sim->add_option("--workers", sim.workers, "Threads (output does not depend on it)")->capture_default_str();
    c_sim->add_option("--chunk", sim.chunk, "Draws per seeded chunk")->capture_default_str();

    ComplexArgs cx;
    auto* c_cx = app.add_subcommand("complex", "Face counts and identities of the two-sided complex");
    add_common(c_cx, cx.common);
    c_cx->add_option("--group", cx.group, "Group")->required();
    c_cx->add_option("--check", cx.checks, "all, h, euler, gallery (repeatable)")
        ->check(CLI::IsMember({"all", "h", "euler", "gallery"}))
        ->capture_default_str();
    c_cx->add_option("--max-order", cx.max_order, "Largest group order")->capture_default_str();
    c_cx->add_option("--max-rank", cx.max_rank, "Largest rank")->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::CallForVersion&) {
        out << COXDES_VERSION << '\n';
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return parse_error;
    }

    std::ostringstream buffer;
    try {
        int code = ok;
        if (*c_dist) code = cmd_dist(dist, buffer);
        else if (*c_mom) code = cmd_moments(mom, buffer);
        else if (*c_seq) code = cmd_sequence(seq, buffer);
        else if (*c_sim) code = cmd_simulate(sim, buffer);
        else if (*c_cx) code = cmd_complex(cx, buffer);
        out << buffer.str();
        if (code == consistency_failure) err << "error: a checked identity failed\n";
        return code;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return parse_error;
    } catch (const RangeError& e) {
        err << "range error: " << e.what() << '\n';
        return parse_error;
    } catch (const CapExceeded& e) {
        err << "cap exceeded: " << e.what() << '\n';
        return cap_exceeded;
    } catch (const ConsistencyError& e) {
        err << "consistency failure: " << e.what() << '\n';
        return consistency_failure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return failure;
    }
}

}  // namespace coxdes::cli
