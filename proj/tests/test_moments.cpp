#include "oracle.hpp"

#include "coxdes/errors.hpp"
#include "coxdes/moments.hpp"

#include <doctest.h>

#include <cmath>

using namespace coxdes;

namespace {

std::vector<mpz_class> geometric_t(const std::string& fam, int p) {
    return oracle::t_tally(oracle::build(oracle::coxeter_matrix(fam, p)));
}

}  // namespace

TEST_SUITE("moments") {

TEST_CASE("table entries") {
    for (int n = 3; n <= 12; ++n) CHECK(closed_form(MomentKey::U2, Family::A, n) == make_rational(n + 2, 12));
    for (int n = 4; n <= 12; ++n) {
        CHECK(closed_form(MomentKey::UU, Family::B, n) == make_rational(1, 4));
        CHECK(closed_form(MomentKey::U3U, Family::B, n) == make_rational(n + 1, 16));
    }
    CHECK_THROWS_AS(closed_form(MomentKey::U2, Family::A, 2), RangeError);
    CHECK_THROWS_AS(closed_form(MomentKey::U2, Family::B, 3), RangeError);
    CHECK_THROWS_AS(closed_form(MomentKey::U2, Family::D, 5), RangeError);
    CHECK(parse_moment_key("D2D2") == MomentKey::D2D2);
    CHECK_THROWS_AS(parse_moment_key("U5"), ParseError);
    CHECK(moment_keys().size() == 22);
}

TEST_CASE("fourth central moment of des") {
    CHECK(fourth_central_D(Family::A, 3) == make_rational(23, 48));
    CHECK(fourth_central_D(Family::B, 4) == make_rational(23, 48));
    CHECK(fourth_central_D(Family::A, 5) == make_rational(231, 240));
    for (int n = 3; n <= 30; ++n) {
        CHECK(fourth_central_D_recursive(Family::A, n) == fourth_central_D(Family::A, n));
        CHECK(fourth_central_D(Family::A, n) == des_marginal(joint_pmf(GroupType(Family::A, n))).central_moment(4));
    }
    for (int n = 4; n <= 30; ++n) {
        CHECK(fourth_central_D_recursive(Family::B, n) == fourth_central_D(Family::B, n));
        CHECK(fourth_central_D(Family::B, n) == des_marginal(joint_pmf(GroupType(Family::B, n))).central_moment(4));
    }
    // small ranks from the geometric representation
    for (int n = 3; n <= 6; ++n) {
        const auto g = oracle::build(oracle::coxeter_matrix("A", n));
        std::vector<mpz_class> des_tally(n + 1, 0);
        for (int i = 0; i < g.size; ++i) ++des_tally[__builtin_popcountll(g.right_descents[i])];
        CHECK(oracle::central_moment(des_tally, 4) == fourth_central_D(Family::A, n));
    }
}

TEST_CASE("fourth central moment of t") {
    CHECK(fourth_central_T(Family::A, 3) == make_rational(91, 12));
    CHECK(fourth_central_T(Family::B, 4) == make_rational(259, 48));
    CHECK(oracle::central_moment(geometric_t("A", 3), 4) == make_rational(91, 12));
    CHECK(oracle::central_moment(geometric_t("B", 4), 4) == make_rational(259, 48));
    for (int n = 3; n <= 30; ++n)
        CHECK(fourth_central_T(Family::A, n) == central_moment_from_pmf(t_pmf(GroupType(Family::A, n)).pmf, 4));
    for (int n = 4; n <= 30; ++n)
        CHECK(fourth_central_T(Family::B, n) == central_moment_from_pmf(t_pmf(GroupType(Family::B, n)).pmf, 4));
}

TEST_CASE("recursion, closed form and exact law agree") {
    for (Family f : {Family::A, Family::B}) {
        for (int n = closed_form_threshold(f); n <= 30; ++n) {
            const JointPMF p = joint_pmf(GroupType(f, n));
            for (const auto& info : moment_keys()) {
                CAPTURE(info.name);
                CAPTURE(n);
                const Rational c = closed_form(info.key, f, n);
                CHECK(moment_recursive(info.key, f, n) == c);
                CHECK(moment_from_pmf(info.key, p) == c);
            }
        }
    }
    for (int n = 1; n <= 12; ++n) CHECK(mixed_central_moment_recursive(Family::A, n, 1, 0) == 0);
    for (int n = 1; n <= 12; ++n)
        CHECK(mixed_central_moment_recursive(Family::A, n, 1, 1) == make_rational(n, 2 * (n + 1)));
    for (int n = 4; n <= 12; ++n)
        CHECK(mixed_central_moment_recursive(Family::B, n, 2, 2) ==
              make_rational(n * n + 2 * n + 19, 144) + make_rational(2 * n - 1, 24 * n * (n - 1)));
    CHECK_THROWS_AS(mixed_central_moment_recursive(Family::A, 5, 3, 2), RangeError);
    // a chain can be reused after a larger rank was requested
    CHECK(mixed_raw_moment_recursive(Family::B, 20, 1, 0) == 10);
    CHECK(mixed_raw_moment_recursive(Family::B, 6, 1, 0) == 3);
}

TEST_CASE("published D^3 D' entry of type A") {
    CHECK(has_published_erratum(MomentKey::D3D, Family::A));
    CHECK_FALSE(has_published_erratum(MomentKey::D3D, Family::B));
    for (int n = 3; n <= 30; ++n) {
        const Rational exact = moment_from_pmf(MomentKey::D3D, joint_pmf(GroupType(Family::A, n)));
        CHECK(published_table_value(MomentKey::D3D, Family::A, n) != exact);
        CHECK(closed_form(MomentKey::D3D, Family::A, n) == exact);
    }
    CHECK(published_table_value(MomentKey::U4, Family::A, 7) == closed_form(MomentKey::U4, Family::A, 7));
}

TEST_CASE("third central moment of t vanishes") {
    for (int n = 1; n <= 40; ++n) {
        CHECK(central_moment_from_pmf(t_pmf(GroupType(Family::A, n)).pmf, 3) == 0);
        if (n >= 2) CHECK(central_moment_from_pmf(t_pmf(GroupType(Family::B, n)).pmf, 3) == 0);
    }
}

TEST_CASE("central moments of simple laws") {
    for (int k = 1; k <= 5; ++k) CHECK(central_moment_from_pmf(IntegerPMF::point_mass(7), k) == 0);
    CHECK_THROWS_AS(central_moment_from_pmf(IntegerPMF::point_mass(0), 0), RangeError);
    CHECK(central_moment_from_pmf(t_pmf(GroupType(Family::A, 3)).pmf, 2) == make_rational(19, 12));
    for (int m = 3; m <= 12; ++m) {
        CHECK(central_moment_from_pmf(t_pmf(GroupType(Family::I2, m)).pmf, 2) == make_rational(4, m));
        CHECK(oracle::central_moment(geometric_t("I2", m), 2) == make_rational(4, m));
        CHECK(oracle::mean(geometric_t("I2", m)) == 2);
    }
}

TEST_CASE("mean and variance of t on products") {
    CHECK(variance_T(parse_group_spec("I2:3")).value == make_rational(4, 3));
    const auto g = parse_group_spec("A:3 x I2:4");
    const auto v = variance_T(g);
    CHECK(v.exact);
    CHECK(v.value == make_rational(31, 12));
    CHECK(v.value == t_pmf(g).pmf.variance());
    CHECK(mean_T(parse_group_spec("B:4 x I2:5")) == 6);
    for (const char* spec : {"A:1", "A:2", "A:9", "B:2", "B:3", "B:8", "D:4", "D:6", "I2:3 x A:4 x D:5"}) {
        const auto h = parse_group_spec(spec);
        const auto est = variance_T(h);
        CHECK(est.exact);
        CHECK(est.value == t_pmf(h).pmf.variance());
    }
    VarianceOptions mc;
    mc.mc_samples = 20000;
    const auto d12 = variance_T(GroupType(Family::D, 12), mc);
    CHECK_FALSE(d12.exact);
    CHECK(d12.std_error > 0);
    CHECK(std::abs(d12.value.get_d() - 16.0 / 6.0) < 1.0);
    CHECK_FALSE(variance_T(parse_group_spec("A:3 x D:12"), mc).exact);
}

TEST_CASE("type D fourth moment stays near type B") {
    // C is calibrated at n = 4 and only reported.
    const auto mu4 = [](Family f, int n) { return central_moment_from_pmf(t_pmf(GroupType(f, n)).pmf, 4); };
    const double c = std::abs(Rational(mu4(Family::D, 4) - mu4(Family::B, 4)).get_d()) / std::pow(4.0, 1.5);
    MESSAGE("calibrated C = " << c);
    CHECK(oracle::central_moment(geometric_t("D", 4), 4) == mu4(Family::D, 4));
    CHECK(oracle::central_moment(geometric_t("D", 5), 4) == mu4(Family::D, 5));
    for (int n = 4; n <= 7; ++n) {
        const double diff = std::abs(Rational(mu4(Family::D, n) - mu4(Family::B, n)).get_d());
        CHECK(diff <= c * std::pow(n, 1.5) + 1e-12);
        const Rational ratio = t_pmf(GroupType(Family::D, n)).pmf.variance() / Rational(n);
        CHECK(ratio >= make_rational(1, 12));
        CHECK(ratio <= make_rational(1, 2));
    }
}

}
