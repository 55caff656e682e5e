#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "supergluing/cech.hpp"
#include "supergluing/errors.hpp"
#include "supergluing/expr.hpp"

using namespace sg;

namespace {

const char* kTwoChart = R"(format-version 1
[atlas]
chart U0 even x
chart U1 even y
map U0 U1
  y = x^-1
end
)";

const char* kThreeChart = R"(format-version 1
[atlas]
chart U0 even x
chart U1 even y
chart U2 even z
map U0 U1
  y = x^-1
end
map U0 U2
  z = 2*x
end
map U1 U2
  z = 2*y^-1
end
triple U0 U1 U2
)";

SheafPtr line_bundle(int n) {
    std::string text = kTwoChart;
    text += "[sheaf L]\nrank 1\nmatrix U0 U1\n  x^" + std::to_string(-n) + "\nend\n";
    return parse_model(text).sheaves.at("L");
}

SheafPtr rank_three() {
    std::string text = kTwoChart;
    text += "[sheaf E]\nrank 3\nmatrix U0 U1\n  x^-1, x, 0\n  0, x^2, 0\n  3, x^-2, x^-1\nend\n";
    return parse_model(text).sheaves.at("E");
}

SheafPtr three_chart_bundle() {
    std::string text = kThreeChart;
    text += "[sheaf E]\nrank 2\nmatrix U0 U1\n  x^-2, 0\n  x^-1, x^-2\nend\n";
    text += "matrix U0 U2\n  1, 0\n  2*x, 1\nend\nmatrix U1 U2\n  y^-2, 0\n  y^-3, y^-2\nend\n";
    return parse_model(text).sheaves.at("E");
}

Cochain random_cochain(const SheafPtr& s, int degree, std::mt19937& rng) {
    std::uniform_int_distribution<int> ex(-3, 3), co(-2, 2);
    Cochain c = Cochain::zero(s, degree);
    for (const auto& simplex : s->cover().simplices(degree)) {
        std::vector<LaurentPoly> v;
        for (int i = 0; i < s->rank; ++i) {
            LaurentPoly p(1);
            for (int k = 0; k < 3; ++k) p.add_term({ex(rng)}, co(rng));
            v.push_back(p);
        }
        c.set(simplex, v);
    }
    return c;
}

int transport_exponent(const SheafPtr& s) {
    // U1 -> U0 matrix written in x: y^k becomes x^-k
    const LaurentPoly& m = s->matrix(1, 0)(0, 0);
    REQUIRE(m.is_monomial());
    return -m.terms().begin()->first.at(0);
}

}  // namespace

TEST_SUITE("cech") {
    TEST_CASE("line bundle cohomology matches the window oracle") {
        for (int n = -6; n <= 6; ++n) {
            CAPTURE(n);
            const SheafPtr L = line_bundle(n);
            const auto o = oracle::line_bundle_cohomology(transport_exponent(L), 12);
            CHECK(cohomology_basis(L, 0).size() == o.h0);
            CHECK(cohomology_basis(L, 1).size() == o.h1);
        }
    }

    TEST_CASE("H^1 basis elements sit in the oracle gap") {
        const SheafPtr L = line_bundle(-5);
        const auto o = oracle::line_bundle_cohomology(transport_exponent(L), 12);
        for (const auto& c : cohomology_basis(L, 1)) {
            const LaurentPoly v = c.at({0, 1}).at(0);
            REQUIRE(v.is_monomial());
            CHECK(o.gap.count(v.terms().begin()->first[0]) == 1);
        }
    }

    TEST_CASE("coboundary decisions with witnesses") {
        const SheafPtr L = line_bundle(-3);
        const auto o = oracle::line_bundle_cohomology(transport_exponent(L), 12);
        for (int m = -8; m <= 8; ++m) {
            Cochain c = Cochain::zero(L, 1);
            c.set({0, 1}, {LaurentPoly::variable(1, 0, m)});
            const ClassResult r = reduce_class(c);
            CAPTURE(m);
            CHECK(r.trivial == (o.gap.count(m) == 0));
            CHECK(cech_delta(r.witness) == c - r.residue);
        }
    }

    TEST_CASE("delta squared vanishes on a three-chart cover") {
        std::mt19937 rng(41);
        const SheafPtr E = three_chart_bundle();
        for (int i = 0; i < 10; ++i) {
            const Cochain c = random_cochain(E, 0, rng);
            CHECK(cech_delta(cech_delta(c)).is_zero());
            CHECK(is_cocycle(cech_delta(c)));
        }
    }

    TEST_CASE("cup product satisfies the Leibniz rule") {
        std::mt19937 rng(43);
        const SheafPtr E = three_chart_bundle();
        for (int i = 0; i < 6; ++i) {
            const Cochain u = random_cochain(E, 0, rng), v = random_cochain(E, 1, rng);
            const SheafPtr T = sheaf_tensor(E, E);
            const Cochain lhs = cech_delta(cup_product(u, v, T));
            const Cochain rhs = cup_product(cech_delta(u), v, T) + cup_product(u, cech_delta(v), T);
            CHECK(lhs == rhs);
        }
    }

    TEST_CASE("exterior powers are compound matrices") {
        const SheafPtr E = rank_three();
        for (int k = 0; k <= 3; ++k) {
            const SheafPtr W = sheaf_exterior_power(E, k);
            for (const auto& [key, M] : E->matrices) CHECK(W->matrix(key.first, key.second) == oracle::compound(M, k));
        }
        CHECK(oracle::det_laplace(E->matrix(0, 1)) == E->matrix(0, 1).determinant());
    }

    TEST_CASE("hom and dual sheaves") {
        const SheafPtr a = line_bundle(-2), b = line_bundle(-4);
        const SheafPtr h = sheaf_hom(a, b);
        CHECK(h->matrix(0, 1)(0, 0) == parse_laurent("x^2", {"x"}));
        CHECK(cohomology_basis(h, 1).size() == 1);
        CHECK(sheaf_dual(sheaf_dual(a))->matrix(0, 1) == a->matrix(0, 1));
        CHECK_NOTHROW(verify_sheaf(*sheaf_direct_sum(a, b)));
    }

    TEST_CASE("extension filtrations") {
        const SheafPtr tb = trivial_sheaf(line_bundle(0)->atlas, 1), tx = line_bundle(3);
        RawCochain theta;
        theta[{0, 1}] = {parse_laurent("x^-1", {"x"})};
        const SheafPtr ext = extension_sheaf(tb, tx, theta);
        for (int j = 1; j <= 2; ++j) CHECK(check_filtration(filtration(ext, j)).empty());
    }

    TEST_CASE("non-invertible transitions are rejected") {
        std::string text = kTwoChart;
        text += "[sheaf B]\nrank 1\nmatrix U0 U1\n  1 + x\nend\n";
        CHECK_THROWS_AS(parse_model(text), Error);
    }
}
