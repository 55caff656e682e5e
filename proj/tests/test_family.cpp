#include <fstream>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "supergluing/errors.hpp"
#include "supergluing/expr.hpp"
#include "supergluing/family.hpp"
#include "supergluing/obstruction.hpp"

using namespace sg;

namespace {

SuperGluingData first(const std::string& file) { return oracle::golden(file).gluings.at(0); }

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_SUITE("family") {
    TEST_CASE("Rothstein family interpolates between the split model and the input") {
        const auto g = first("nonsplit_p1.sg");
        const auto fam = rothstein_family(g);
        CHECK(fam.name == "nonsplit_p1_rothstein");
        CHECK(verify_cocycle(fam).ok);
        CHECK(first_difference(restrict_fiber(fam, {1}), g).empty());
        CHECK(first_difference(restrict_fiber(fam, {0}), split_model(g)).empty());
        CHECK(first_difference(restrict_fiber(fam, {3}), scaling_action(g, 3)).empty());
    }

    TEST_CASE("Rothstein family of a split model is the split family") {
        const auto fam = rothstein_family(first("split_p1.sg"));
        CHECK(fam.name == "split_p1_split_family");
        CHECK(presentation_splitting_type(fam) == kInfinity);
    }

    TEST_CASE("isotriviality away from the origin") {
        const auto fam = rothstein_family(first("nonsplit_p1.sg"));
        for (const auto& [a, b] : std::vector<std::pair<Q, Q>>{{1, 2}, {Q(-1, 3), 5}, {7, Q(2, 9)}}) {
            const auto w = isotriviality_witness(fam, a, b);
            CHECK(w.check.ok);
            CHECK(w.lambda == b / a);
        }
        CHECK_THROWS_AS(isotriviality_witness(fam, 0, 1), Error);
    }

    TEST_CASE("gluing over the projective line") {
        const auto f = glue_over_p1(first("nonsplit_p1.sg"));
        CHECK(f.pieces.size() == 2);
        CHECK(verify_glued(f).ok);
        CHECK(write_glued(f) == slurp(oracle::golden_path("nonsplit_p1_glued.sg")));
        auto wrong = f;
        wrong.scale = parse_laurent("t^-1", {"t"});
        const auto bad = verify_glued(wrong);
        CHECK_FALSE(bad.ok);
        CHECK(bad.location.rfind("(U0,U1)", 0) == 0);
    }

    TEST_CASE("glued files reload with a working witness") {
        const auto f = glued_from_model(oracle::golden("nonsplit_p1_glued.sg"));
        CHECK(verify_glued(f).ok);
        CHECK(write_glued(f) == slurp(oracle::golden_path("nonsplit_p1_glued.sg")));
    }

    TEST_CASE("split family classes vanish everywhere") {
        const auto fam = split_family(first("split_p1.sg"));
        const auto d = splitting_type_differential(fam);
        CHECK(d.level == kInfinity);
        CHECK(d.evaluate({5}).is_zero());
    }
}
