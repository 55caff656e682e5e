#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "supergluing/errors.hpp"
#include "supergluing/expr.hpp"
#include "supergluing/family.hpp"
#include "supergluing/obstruction.hpp"

using namespace sg;

namespace {

SuperGluingData first(const std::string& file) { return oracle::golden(file).gluings.at(0); }

SuperGluingData p1_deviation(int k, const std::string& c) {
    const std::string text = "format-version 1\n[gluing dev]\nchart U0 even x odd 2\nchart U1 even y odd 2\n"
                             "transition U0 U1\n  y = x^-1 + " + c + "*x^" + std::to_string(k) +
                             "*theta_1*theta_2\n  theta_1 = x^-2*theta_1\n  theta_2 = x^-2*theta_2\nend\n";
    return parse_model(text).gluings.at(0);
}

const char* kTwoParameter = R"(format-version 1
[gluing two_param]
chart U0 even x base t1,t2 odd 2
chart U1 even y base t1,t2 odd 2
transition U0 U1
  y = x^-1 + (t1 + t2^2)*x^-3*theta_1*theta_2
  theta_1 = x^-2*theta_1
  theta_2 = x^-2*theta_2
end
)";

int exponent_of(const LaurentPoly& p) {
    REQUIRE(p.is_monomial());
    return p.terms().begin()->first.at(0);
}

}  // namespace

TEST_SUITE("obstruction") {
    TEST_CASE("split model has zero obstruction at every level") {
        const auto g = first("split_p1.sg");
        const auto w = obstruction_cocycle(g, 2);
        CHECK(w.representative.is_zero());
        CHECK(w.trivial());
    }

    TEST_CASE("exponent sweep finds a unique non-removable deviation") {
        std::vector<int> nontrivial;
        for (int k = -8; k <= 4; ++k) {
            CAPTURE(k);
            const auto g = p1_deviation(k, "5/2");
            const auto w = obstruction_cocycle(g, 2);
            CHECK(is_cocycle(w.representative));
            REQUIRE(w.sheaf->rank == 1);
            const LaurentPoly& m = w.sheaf->matrix(1, 0)(0, 0);
            const auto o = oracle::line_bundle_cohomology(-exponent_of(m), 12);
            const LaurentPoly v = w.representative.at({0, 1}).at(0);
            CHECK(v.terms().begin()->second == Q(-5, 2));
            CHECK(w.trivial() == (o.gap.count(exponent_of(v)) == 0));
            if (!w.trivial()) nontrivial.push_back(k);
        }
        REQUIRE(nontrivial.size() == 1);
        CHECK(nontrivial[0] == -3);
    }

    TEST_CASE("precondition violations raise level errors") {
        CHECK_THROWS_AS(obstruction_cocycle(first("nonsplit_p1.sg"), 1), LevelError);
        CHECK_THROWS_AS(obstruction_cocycle(first("nonsplit_p1.sg"), 3), LevelError);
        CHECK_THROWS_AS(obstruction_cocycle(first("gtm_c01.sg"), 3), LevelError);
        CHECK(obstruction_cocycle(first("odd3_p1.sg"), 2).representative.is_zero());
    }

    TEST_CASE("scaling laws by parity") {
        CHECK(scale_factor(2, 3) == 9);
        CHECK(scale_factor(3, 3) == 9);
        CHECK(scale_factor(4, Q(1, 2)) == Q(1, 16));
        CHECK(scale_factor(5, -1) == 1);
        for (const auto& [file, j] : std::vector<std::pair<std::string, int>>{{"nonsplit_p1.sg", 2}, {"odd3_p1.sg", 3}}) {
            const auto g = first(file);
            const auto w = obstruction_cocycle(g, j);
            CHECK_FALSE(w.trivial());
            for (const Q lambda : {Q(2), Q(-1), Q(1, 2), Q(1)}) {
                const auto lhs = obstruction_cocycle(scaling_action(g, lambda), j);
                CHECK(lhs.canonical() == scale_class(w, lambda).canonical());
                CHECK(lhs.representative == scale_factor(j, lambda) * w.representative);
            }
        }
    }

    TEST_CASE("attempt_split undoes a hidden coordinate change") {
        std::mt19937 rng(19);
        const auto g = first("split_p1.sg");
        std::uniform_int_distribution<int> co(1, 4);
        for (int i = 0; i < 5; ++i) {
            ChartMaps phi;
            for (int a = 0; a < 2; ++a) {
                const Chart& c = g.cover.charts[static_cast<std::size_t>(a)];
                SuperTransition t = identity_transition(c, a);
                t.even[0] += parse_element(std::to_string(co(rng)) + "*" + c.fiber[0] + "^" + std::to_string(i % 3) +
                                               "*theta_1*theta_2",
                                           c.names(), 2);
                phi[a] = t;
            }
            const auto h = conjugate(g, phi);
            CHECK(presentation_splitting_type(h) == 2);
            const auto a = attempt_split(h);
            REQUIRE(a.split);
            CHECK(a.cleared_levels == std::vector<int>{2});
            CHECK(presentation_splitting_type(conjugate(h, a.witness)) == kInfinity);
        }
    }

    TEST_CASE("attempt_split on split and nonsplit inputs") {
        const auto s = attempt_split(first("split_p1.sg"));
        CHECK(s.split);
        CHECK(s.cleared_levels.empty());
        for (const auto& [a, t] : s.witness) CHECK(t == identity_transition(first("split_p1.sg").cover.charts[static_cast<std::size_t>(a)], a));
        const auto n = attempt_split(first("nonsplit_p1.sg"));
        CHECK_FALSE(n.split);
        REQUIRE(n.fatal.has_value());
        CHECK(n.fatal->level == 2);
        CHECK_FALSE(n.fatal->trivial());
    }

    TEST_CASE("splitting type differential of a two-parameter family") {
        const auto fam = parse_model(kTwoParameter).gluings.at(0);
        const auto d = splitting_type_differential(fam);
        CHECK(d.level == 2);
        const auto w = obstruction_cocycle(p1_deviation(-3, "1"), 2);
        for (const auto& [a, b] : std::vector<std::pair<Q, Q>>{{1, 0}, {0, 2}, {Q(1, 3), -1}, {-4, 2}}) {
            const Cochain at = d.evaluate({a, b});
            CHECK(at == (a + b * b) * w.canonical());
        }
        const auto f = characteristic_factorization(fam);
        CHECK(f.rank_one);
        CHECK(f.residual_certified);
        CHECK(f.s == parse_laurent("t1 + t2^2", {"t1", "t2"}));
    }

    TEST_CASE("characteristic section of a Rothstein family by parity") {
        const auto even = characteristic_factorization(rothstein_family(first("nonsplit_p1.sg")));
        CHECK(even.s == parse_laurent("t^2", {"t"}));
        const auto odd = characteristic_factorization(rothstein_family(first("odd3_p1.sg")));
        CHECK(odd.s == parse_laurent("t^2", {"t"}));
        CHECK(odd.residual_certified);
        const auto split = characteristic_factorization(split_family(first("split_p1.sg")));
        CHECK(split.s.is_zero());
        CHECK_FALSE(split.omega.has_value());
    }

    TEST_CASE("family classes never target base directions") {
        for (const char* f : {"family_one_plus_t.sg", "nonsplit_p1_rothstein.sg"}) {
            const auto w = obstruction_cocycle(first(f), 2);
            CHECK(w.base_components_zero);
        }
    }

    TEST_CASE("coordinate change from a witness clears the level") {
        const auto g = p1_deviation(1, "2");
        const auto w = obstruction_cocycle(g, 2);
        REQUIRE(w.trivial());
        const auto h = conjugate(g, coordinate_change(g, w.reduced.witness, 2));
        CHECK(presentation_splitting_type(h) > 2);
    }
}
