#include <fstream>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "supergluing/errors.hpp"
#include "supergluing/model_file.hpp"

using namespace sg;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int error_line(const std::string& text) {
    try {
        parse_model(text);
    } catch (const ParseError& e) {
        return e.line;
    }
    return -1;
}

}  // namespace

TEST_SUITE("model_file") {
    TEST_CASE("writer output parses back to the same gluing") {
        for (const char* f : {"split_p1.sg", "nonsplit_p1.sg", "odd3_p1.sg", "family_one_plus_t.sg", "gtm_c01.sg",
                              "split_p1_three_chart.sg"}) {
            CAPTURE(f);
            const auto g = oracle::golden(f).gluings.at(0);
            const std::string text = "format-version 1\n\n" + write_gluing(g);
            const auto h = parse_model(text).gluings.at(0);
            CHECK(first_difference(g, h).empty());
            CHECK(first_difference(h, g).empty());
            CHECK(h.base_odd == g.base_odd);
            CHECK(h.declared_splitting_type == g.declared_splitting_type);
        }
    }

    TEST_CASE("generated golden files are fixed points of parse and write") {
        const std::string text = slurp(oracle::golden_path("nonsplit_p1_rothstein.sg"));
        CHECK("format-version 1\n\n" + write_gluing(parse_model(text).gluings.at(0)) == text);
    }

    TEST_CASE("missing reverse transitions and identities are completed") {
        const auto g = oracle::golden("nonsplit_p1.sg").gluings.at(0);
        CHECK(g.transitions.size() == 2);
        CHECK(g.transitions.count({1, 0}) == 1);
    }

    TEST_CASE("comments and blank lines are ignored") {
        const auto m = parse_model("# leading\nformat-version 1\n\n[gluing a] # trailing\nchart U0 even x odd 1\n");
        CHECK(m.gluings.size() == 1);
        CHECK(m.gluings[0].name == "a");
    }

    TEST_CASE("errors carry line numbers") {
        CHECK(error_line("format-version 2\n") == 1);
        CHECK(error_line("format-version 1\n[mystery]\n") == 2);
        CHECK(error_line("format-version 1\n[gluing g]\nchart U0 even x odd 1\nchart U0 even y odd 1\n") == 4);
        CHECK(error_line("format-version 1\n[gluing g]\nchart U0 even x odd 1\nchart U1 even y odd 1\n"
                         "transition U0 U1\n  y = x^-1\n  theta_1 = x^-1*theta_1\n") > 0);
        CHECK(error_line("format-version 1\n[gluing g]\nchart U0 even x odd 1\nchart U1 even y odd 1\n"
                         "transition U0 U1\n  y = x^-1 +\nend\n") == 6);
        CHECK(error_line("format-version 1\n[gluing g]\nchart U0 even x odd 1\nchart U1 even y odd 1\n"
                         "transition U0 U2\nend\n") == 5);
        CHECK(error_line("format-version 1\n[gluing g]\nchart U0 even x odd 1\nchart U1 even y odd 1\n"
                         "transition U0 U1\n  y = x^-1\n  theta_2 = theta_1\nend\n") == 7);
    }

    TEST_CASE("gt-model sections") {
        const auto m = oracle::golden("gt_model_p1_rank2.sg");
        REQUIRE(m.gt_model.has_value());
        CHECK(m.gt_model->base_rank == 2);
        CHECK(m.sheaves.at("TX")->rank == 2);
        CHECK(m.gt_model->theta.at({0, 1}).size() == 4);
    }

    TEST_CASE("glued family sections") {
        const auto m = oracle::golden("nonsplit_p1_glued.sg");
        CHECK(m.gluings.size() == 2);
        REQUIRE(m.base_atlas.has_value());
        REQUIRE(m.witnesses.size() == 1);
        CHECK(m.witnesses[0].from == "B0");
        CHECK(m.witnesses[0].to == "B1");
    }

    TEST_CASE("unreadable files") { CHECK_THROWS_AS(load_model("/nonexistent/file.sg"), Error); }
}
