#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "supergluing/report.hpp"

using namespace sg;

namespace {

struct Outcome {
    int code;
    std::string out, err;
};

Outcome run_cmd(const std::string& cmd, const std::string& file, bool structured = false) {
    RunConfig cfg;
    cfg.command = cmd;
    cfg.input = file.empty() ? std::string("/nonexistent") : oracle::golden_path(file);
    cfg.structured = structured;
    std::ostringstream out, err;
    const int code = run(cfg, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("report") {
    TEST_CASE("command table") {
        CHECK(command_names().size() == 10);
        CHECK(is_command("a1-check"));
        CHECK_FALSE(is_command("A1-check"));
    }

    TEST_CASE("unknown commands fail before touching the input") {
        const auto r = run_cmd("nope", "");
        CHECK(r.code == 2);
        CHECK(r.err.find("unknown command") != std::string::npos);
        CHECK(r.err.find("nonexistent") == std::string::npos);
    }

    TEST_CASE("exit codes") {
        CHECK(run_cmd("verify", "split_p1.sg").code == 0);
        CHECK(run_cmd("verify", "corrupted_split_p1.sg").code == 1);
        CHECK(run_cmd("verify", "").code == 2);
        CHECK(run_cmd("a1-check", "gt_model_p1.sg").code == 0);
        CHECK(run_cmd("obstruction", "nonsplit_p1.sg").code == 0);
    }

    TEST_CASE("failures name a location") {
        const auto r = run_cmd("verify", "corrupted_split_p1.sg");
        CHECK(r.out.find("(U0,U1)") != std::string::npos);
    }

    TEST_CASE("structured output is exact") {
        const auto r = run_cmd("report-all", "family_one_plus_t.sg", true);
        CHECK(r.code == 0);
        CHECK(r.out.find('.') != std::string::npos);  // keys are dotted
        std::istringstream in(r.out);
        for (std::string line; std::getline(in, line);) {
            const auto eq = line.find('=');
            REQUIRE(eq != std::string::npos);
            const std::string value = line.substr(eq + 1);
            CHECK(value.find('.') == std::string::npos);
        }
        CHECK(r.out.find("characteristic-section=1/1 + 1/1*t") != std::string::npos);
    }

    TEST_CASE("reports are deterministic") {
        CHECK(run_cmd("report-all", "nonsplit_p1_rothstein.sg").out == run_cmd("report-all", "nonsplit_p1_rothstein.sg").out);
    }

    TEST_CASE("report formatting") {
        Report t(false), s(true);
        t.add("k", Q(-3) / 6);
        s.add("k", Q(-3) / 6);
        t.add("flag", true);
        CHECK(t.str() == "k: -1/2\nflag: yes\n");
        CHECK(s.str() == "k=-1/2\n");
        Report whole(true);
        whole.add("n", Q(4));
        CHECK(whole.str() == "n=4/1\n");
    }
}
