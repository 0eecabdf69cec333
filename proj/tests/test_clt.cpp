#include "coxdes/clt.hpp"
#include "coxdes/errors.hpp"

#include <doctest.h>

#include <cmath>

using namespace coxdes;

namespace {

SequenceSpec spec(const char* text) { return parse_sequence_spec_text(text); }

Rational harmonic(int from, int to) {
    Rational s = 0;
    for (int i = from; i <= to; ++i) s += make_rational(1, i);
    return s;
}

}  // namespace

TEST_SUITE("clt") {

TEST_CASE("dihedral decomposition and criterion") {
    const auto g = parse_group_spec("A:3 x I2:4 x B:2");
    const auto split = decompose_dihedral(g);
    CHECK(split.non_dihedral == parse_group_spec("A:3 x B:2"));
    CHECK(split.dihedral == parse_group_spec("I2:4"));
    CHECK(split.non_dihedral.rank() + split.dihedral.rank() == g.rank());
    CHECK(decompose_dihedral(parse_group_spec("I2:3 x I2:5")).non_dihedral.empty());

    CHECK(criterion_three(parse_group_spec("A:10")) == 10);
    ProductGroup dihedral;
    for (int i = 3; i <= 10; ++i) dihedral.factors.emplace_back(Family::I2, i);
    CHECK(criterion_three(dihedral) == make_rational(3601, 2520));
    CHECK(criterion_three(dihedral) == harmonic(3, 10));
    CHECK(criterion_three(parse_group_spec("I2:7^5")) == make_rational(5, 7));
    const auto a = parse_group_spec("A:3 x I2:5"), b = parse_group_spec("D:4 x I2:9^2");
    CHECK(criterion_three(a * b) == criterion_three(a) + criterion_three(b));
}

TEST_CASE("delta-small split") {
    ProductGroup g{{GroupType(Family::B, 100)}};
    for (int i = 0; i < 20; ++i) g.factors.emplace_back(Family::A, 3);
    const auto s = delta_small_split(g, make_rational(1, 2));
    CHECK(s.m == 1);
    CHECK(s.large == parse_group_spec("B:100"));
    CHECK(s.small.factors.size() == 20);
    CHECK(s.large.rank() + s.small.rank() == g.rank());

    const auto single = delta_small_split(parse_group_spec("A:50"), make_rational(1, 3));
    CHECK(single.m == 1);
    const auto tiny = delta_small_split(parse_group_spec("A:50 x A:40 x A:3"), make_rational(1, 1000));
    CHECK(tiny.m == 0);
    const auto unsorted = delta_small_split(parse_group_spec("A:2 x B:30 x A:29"), make_rational(1, 2));
    CHECK(unsorted.sorted == parse_group_spec("B:30 x A:29 x A:2"));
    CHECK(unsorted.m == 2);

    // 4 = 16^(1/2) exactly: the tie is decided by the exact comparison.
    bool exact = false;
    CHECK(is_delta_small(4, 16, make_rational(1, 2), &exact));
    CHECK(exact);
    CHECK_FALSE(is_delta_small(5, 16, make_rational(1, 2), &exact));
    CHECK(is_delta_small(8, 64, make_rational(1, 2)));
    CHECK(is_delta_small(16, 64, make_rational(1, 3)));
    CHECK_FALSE(is_delta_small(17, 64, make_rational(1, 3)));

    for (const char* text : {"A:12 x A:4", "B:9 x I2:3^4 x A:2", "D:40 x A:7^3 x B:6"}) {
        const auto h = parse_group_spec(text);
        for (const auto& delta : {make_rational(1, 3), make_rational(1, 2), make_rational(9, 10)}) {
            const auto sp = delta_small_split(h, delta);
            CHECK(sp.large.rank() + sp.small.rank() == h.rank());
            for (const auto& f : sp.small.factors) CHECK(std::pow(f.rank(), 1.0) <= std::pow(h.rank(), 1 - delta.get_d()) + 1e-9);
            for (const auto& f : sp.large.factors) CHECK(f.rank() > std::pow(h.rank(), 1 - delta.get_d()) - 1e-9);
        }
    }
    CHECK_THROWS_AS(delta_small_split(g, 0), RangeError);
    CHECK_THROWS_AS(delta_small_split(g, 1), RangeError);
}

TEST_CASE("lindeberg and maximum conditions") {
    for (const auto& eps : {make_rational(1, 2), make_rational(1)}) {
        // s^2 = 4k/3 must exceed (4/eps)^2
        const int k = static_cast<int>(std::ceil(Rational(Rational(16) / (eps * eps) * make_rational(3, 4)).get_d())) + 1;
        ProductGroup g;
        for (int i = 0; i < k; ++i) g.factors.emplace_back(Family::I2, 3);
        const auto row = make_row(g);
        CHECK(row.total_variance > Rational(16) / (eps * eps));
        CHECK(lindeberg_sum(row, eps) == 0);
        CHECK(max_ratio(row) == make_rational(1, k));
    }
    for (int k = 1; k <= 6; ++k) {
        ProductGroup g;
        for (int i = 0; i < k; ++i) g.factors.emplace_back(Family::A, 7);
        const auto row = make_row(g);
        CHECK(row.size() == static_cast<std::size_t>(k));
        CHECK(max_ratio(row) == make_rational(1, k));
    }
    const auto row = make_row(parse_group_spec("A:6 x B:4 x I2:5 x D:4"));
    CHECK(row.exact);
    Rational previous = 2;
    for (int e = 1; e <= 40; ++e) {
        const Rational v = lindeberg_sum(row, make_rational(e, 10));
        CHECK(v <= previous);
        CHECK(v <= 1);
        CHECK(v >= 0);
        previous = v;
    }
    CHECK(lindeberg_sum(row, 100) == 0);
    CHECK(lindeberg_sum(make_row(parse_group_spec("A:5")), make_rational(1, 1000)) == 1);
    CHECK(max_ratio(make_row(parse_group_spec("B:9"))) == 1);
    CHECK_THROWS_AS(lindeberg_sum(row, 0), RangeError);
    TriangularRow empty;
    empty.total_variance = 0;
    CHECK_THROWS_AS(lindeberg_sum(empty, 1), RangeError);
    CHECK_FALSE(make_row(parse_group_spec("D:20")).exact);
}

TEST_CASE("normal distance") {
    CHECK(std::abs(normal_cdf(0) - 0.5) < 1e-15);
    CHECK(std::abs(normal_cdf(1.959963984540054) - 0.975) < 1e-12);
    CHECK_THROWS_AS(ks_distance_exact(IntegerPMF::point_mass(3)), RangeError);

    std::vector<double> ks;
    for (int n : {10, 25, 50, 100, 200}) ks.push_back(ks_distance_exact(t_pmf(GroupType(Family::A, n)).pmf).corrected);
    for (std::size_t i = 1; i < ks.size(); ++i) CHECK(ks[i] <= 1.1 * ks[i - 1]);
    CHECK(ks.back() <= 0.03);

    const auto a50 = parse_group_spec("A:50");
    const auto exact = ks_distance_exact(t_pmf(a50).pmf);
    const auto mc = ks_distance_mc(a50, 1'000'000, {7, 65536, 1});
    CHECK(std::abs(mc.plain - exact.plain) <= 0.005);
    CHECK(std::abs(mc.corrected - exact.corrected) <= 0.005);

    const auto law = t_law_double(parse_group_spec("A:4 x I2:5"), {});
    REQUIRE(law.has_value());
    const auto ex = t_pmf(parse_group_spec("A:4 x I2:5")).pmf;
    for (std::size_t k = 0; k < law->probabilities.size(); ++k)
        CHECK(std::abs(law->probabilities[k] - ex.at(law->offset + static_cast<int>(k)).get_d()) < 1e-14);
    CHECK_FALSE(t_law_double(parse_group_spec("A:4^100"), {}, 100).has_value());
}

TEST_CASE("well-behaved profile") {
    const auto a = spec(R"j({"terms":[{"family":"A","rank":"n","multiplicity":"1"}]})j");
    const auto pa = well_behaved_profile(a, make_rational(1, 3), {5, 10, 50}, {1, 2, 3});
    CHECK(pa[0].sup == 1);
    CHECK(pa[1].sup == 0);
    CHECK(pa[2].sup == 0);

    const auto halving = spec(
        R"j({"terms":[{"family":"A","rank":"n/2^i","multiplicity":"1","index":{"var":"i","from":"1","to":"log2(n)"}}]})j");
    std::vector<int> ns;
    for (int e = 6; e <= 12; ++e) ns.push_back(1 << e);
    int max_m = 0;
    for (int n : ns) max_m = std::max(max_m, delta_small_split(instantiate(halving, n).group, make_rational(1, 3)).m);
    std::vector<int> ks;
    for (int k = 1; k <= max_m + 1; ++k) ks.push_back(k);
    const auto ph = well_behaved_profile(halving, make_rational(1, 3), ns, ks);
    CHECK(ph.front().sup == 1);
    for (std::size_t k = 1; k + 1 < ph.size(); ++k) {
        CHECK(ph[k].sup < ph[k - 1].sup);
        // roughly halves with each step
        CHECK(ph[k].sup.get_d() <= 0.6 * ph[k - 1].sup.get_d() + 1e-12);
    }
    CHECK(ph.back().sup == 0);

    const auto dihedral = spec(R"j({"terms":[{"family":"I2","rank":"5","multiplicity":"n"}]})j");
    for (const auto& e : well_behaved_profile(dihedral, make_rational(1, 2), {4, 9}, {1, 2})) CHECK(e.sup == 0);
}

TEST_CASE("trend reports") {
    const auto a = spec(R"j({"terms":[{"family":"A","rank":"n","multiplicity":"1"}]})j");
    const auto ra = clt_trend(a, {10, 20, 50, 100, 200});
    REQUIRE(ra.records.size() == 5);
    for (const auto& r : ra.records) {
        CHECK(r.ok);
        CHECK(r.criterion == r.n);
        REQUIRE(r.ks.has_value());
    }
    for (std::size_t i = 1; i < ra.records.size(); ++i)
        CHECK(ra.records[i].ks->corrected <= ra.records[i - 1].ks->corrected);
    CHECK(ra.verdict.find("growing") != std::string::npos);

    const auto squares = spec(
        R"j({"terms":[{"family":"I2","rank":"i^2","multiplicity":"1","index":{"var":"i","from":"1","to":"n"}}]})j");
    const auto rs = clt_trend(squares, {4, 16, 64, 256, 1024});
    const double pi2_6 = M_PI * M_PI / 6;
    for (const auto& r : rs.records) CHECK(r.criterion.get_d() < pi2_6);
    CHECK(rs.verdict.find("bounded") != std::string::npos);
    CHECK(rs.records.back().ks->corrected > 0.01);

    const auto harmonic_spec = spec(
        R"j({"terms":[{"family":"I2","rank":"i","multiplicity":"1","index":{"var":"i","from":"1","to":"n"}}]})j");
    const auto rh = clt_trend(harmonic_spec, {10, 100, 1000, 3000});
    CHECK(rh.records[0].criterion == harmonic(3, 10));
    CHECK(rh.records.back().criterion.get_d() > 7.0);
    CHECK(rh.verdict.find("growing") != std::string::npos);

    const auto shifted = spec(R"j({"terms":[{"family":"A","rank":"n-5","multiplicity":"1"}]})j");
    const auto rsh = clt_trend(shifted, {3, 8});
    CHECK_FALSE(rsh.records[0].ok);
    CHECK(rsh.records[1].ok);
    CHECK(to_json(rsh)["records"][0]["ok"] == false);
    const std::string csv = to_csv(rsh);
    CHECK(csv.rfind("n,ok,rank", 0) == 0);
}

}
