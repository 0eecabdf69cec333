#include "oracle.hpp"

#include "coxdes/complex.hpp"
#include "coxdes/errors.hpp"

#include <doctest.h>

#include <algorithm>

using namespace coxdes;

namespace {

std::vector<Integer> ints(std::initializer_list<long> v) {
    std::vector<Integer> out;
    for (long x : v) out.emplace_back(x);
    return out;
}

}  // namespace

TEST_SUITE("complex") {

TEST_CASE("faces of A1") {
    const auto c = enumerate_faces(parse_group_spec("A:1"));
    CHECK(c.faces.size() == 5);
    const auto f = f_vector(c);
    CHECK(f == ints({1, 2, 2}));
    CHECK(h_vector(f) == ints({1, 0, 1}));
    CHECK(euler_characteristic(f) == 0);
    const auto id = h_polynomial_identity_check(c);
    CHECK(id.holds);
    CHECK(id.tally == ints({1, 0, 1}));
    // the minimal face (S, W, S)
    const auto minimal = std::count_if(c.faces.begin(), c.faces.end(), [](const Face& x) { return x.dimension == -1; });
    CHECK(minimal == 1);

    const auto g = gallery_checks(c);
    CHECK(g.adjacency);
    CHECK(g.distance_is_length);
    CHECK(g.wall_count_is_t);
    // s has both walls towards e but only one lower neighbour
    CHECK(g.facet_count_mismatches == 1);
}

TEST_CASE("facets are the group elements") {
    for (const char* spec : {"A:2", "B:2", "I2:5"}) {
        const auto g = parse_group_spec(spec);
        const auto c = enumerate_faces(g);
        const auto f = f_vector(c);
        CHECK(f.front() == 1);
        CHECK(f.back() == g.order());
        int facets = 0;
        for (const auto& face : c.faces)
            if (face.left_mask == 0 && face.right_mask == 0) ++facets;
        CHECK(facets == g.order());
    }
}

TEST_CASE("h-vector identities") {
    for (const char* spec : {"A:1", "A:2", "A:3", "B:2", "B:3", "I2:3", "I2:4", "I2:5", "I2:6", "A:1 x I2:3", "D:4"}) {
        CAPTURE(spec);
        const auto g = parse_group_spec(spec);
        const auto r = analyze_complex(g);
        CHECK(r.all_passed());
        CHECK(r.euler == 0);
        CHECK(r.h == r.tally);
        Integer sum = 0;
        for (const auto& x : r.h) sum += x;
        CHECK(sum == g.order());
        // t tally from the geometric representation
        std::vector<oracle::Matrix> blocks;
        for (const auto& f : g.factors)
            blocks.push_back(oracle::coxeter_matrix(std::string(family_name(f.family())), f.parameter()));
        const auto geo = oracle::t_tally(oracle::build(oracle::block_diagonal(blocks)));
        for (std::size_t k = 0; k < geo.size(); ++k) CHECK(r.h[k] == geo[k]);
        if (g.factors.size() == 1 && (g.factors[0].family() == Family::A || g.factors[0].family() == Family::B))
            CHECK(r.h_palindromic);
    }
    for (int m = 3; m <= 8; ++m) {
        const auto r = analyze_complex({{GroupType(Family::I2, m)}});
        CHECK(r.tally == ints({1, 0, 2 * m - 2, 0, 1}));
        CHECK(r.h == r.tally);
    }
}

TEST_CASE("galleries") {
    const auto a2 = enumerate_faces(parse_group_spec("A:2"));
    std::vector<int> lengths = a2.graph.length;
    std::sort(lengths.begin(), lengths.end());
    CHECK(lengths == std::vector<int>{0, 1, 1, 2, 2, 3});
    const auto ga2 = gallery_checks(a2);
    CHECK(ga2.distance_is_length);
    CHECK(ga2.adjacency);
    CHECK(ga2.thin);

    const auto b2 = gallery_checks(enumerate_faces(parse_group_spec("B:2")));
    CHECK(b2.wall_count_is_t);
    CHECK_FALSE(b2.counterexample.has_value());
}

TEST_CASE("caps") {
    CHECK_THROWS_AS(enumerate_faces(parse_group_spec("A:7")), CapExceeded);
    CHECK_THROWS_AS(enumerate_faces(parse_group_spec("A:5"), {100, 6}), CapExceeded);
    CHECK_NOTHROW(enumerate_faces(parse_group_spec("A:4")));
}

TEST_CASE("report json") {
    const Json j = to_json(analyze_complex(parse_group_spec("A:1")));
    CHECK(j["f_vector"] == Json::array({"1", "2", "2"}));
    CHECK(j["h_vector"] == Json::array({"1", "0", "1"}));
    CHECK(j["all_passed"] == true);
    CHECK(j["observations"]["lower_facet_count_mismatches"] == 1);
    CHECK(j["counterexample"].is_null());
}

}
