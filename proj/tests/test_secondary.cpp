#include <algorithm>

#include "doctest.h"
#include "oracles.hpp"
#include "supergluing/errors.hpp"
#include "supergluing/obstruction.hpp"
#include "supergluing/secondary.hpp"

using namespace sg;

namespace {

GtModel gt(const std::string& file) { return gt_model_from_file(oracle::golden(file)); }

// theta_l (x) theta_K -> theta_l ^ theta_K on lexicographic bases, via the oracle sign.
QMatrix wedge_oracle(int m, int a) {
    const auto src = subsets(m, a - 1);
    const auto dst = subsets(m, a);
    QMatrix out(dst.size(), static_cast<std::size_t>(m) * src.size());
    for (int l = 0; l < m; ++l)
        for (std::size_t k = 0; k < src.size(); ++k) {
            const int s = oracle::concat_sign({l}, src[k]);
            if (s == 0) continue;
            std::vector<int> merged = src[k];
            merged.push_back(l);
            std::sort(merged.begin(), merged.end());
            const auto row = static_cast<std::size_t>(std::find(dst.begin(), dst.end(), merged) - dst.begin());
            out(row, static_cast<std::size_t>(l) * src.size() + k) = s;
        }
    return out;
}

}  // namespace

TEST_SUITE("secondary") {
    TEST_CASE("model class is nontrivial and matches the connecting map") {
        for (const char* f : {"gt_model_p1.sg", "gt_model_p1_rank2.sg", "gt_model_p1_three_chart.sg"}) {
            CAPTURE(f);
            const auto mc = model_class(gt(f));
            CHECK_FALSE(mc.cls.trivial);
            CHECK(mc.cross_check);
        }
    }

    TEST_CASE("filtrations on the gt-model corpus") {
        const auto m = gt("gt_model_p1_rank2.sg");
        CHECK(m.rank() == 4);
        for (int J = 1; J <= m.rank(); ++J) CHECK(check_filtration(m.filtrations.at(J)).empty());
    }

    TEST_CASE("contraction followed by wedge is a scalar") {
        for (int m = 1; m <= 4; ++m)
            for (int a = 1; a <= m; ++a) {
                const QMatrix prod = wedge_oracle(m, a) * contraction_map(m, a);
                Q f = 1;
                for (int i = 2; i < a; ++i) f /= i;
                QMatrix expect = QMatrix::identity(prod.rows());
                for (std::size_t i = 0; i < prod.rows(); ++i) expect(i, i) = f;
                CHECK(prod == expect);
            }
        CHECK_THROWS_AS(contraction_map(3, 0), InvalidInput);
    }

    TEST_CASE("spaces beyond the rank vanish") {
        const auto m = gt("gt_model_p1.sg");
        CHECK(m.space_sheaf(2, 1) == nullptr);
        const auto s = secondary_space(m, 3, 0, 0);
        CHECK(s.zero_by_rank);
        CHECK(s.basis.empty());
    }

    TEST_CASE("degree-zero classes are global sections") {
        const auto m = gt("gt_model_p1_three_chart.sg");
        for (int b = 0; b <= 1; ++b)
            for (const auto& nu : secondary_space(m, 1, b, 0).basis) CHECK(cech_delta(nu).is_zero());
    }

    TEST_CASE("three constructions of the degree-one map agree") {
        for (const char* f : {"gt_model_p1.sg", "gt_model_p1_rank2.sg"}) {
            const auto m = gt(f);
            for (int b = 0; b < m.rank(); ++b) {
                const auto r = verify_a1_containment(m, b);
                CHECK(r.decided);
                CHECK(r.ok);
            }
        }
    }

    TEST_CASE("differentials on a cover with a triple") {
        const auto m = gt("gt_model_p1_three_chart.sg");
        for (const auto& nu : secondary_space(m, 1, 0, 1).basis) {
            const auto d = secondary_differential(m, 1, 0, 1, nu);
            CHECK(d.p == 2);
            CHECK(d.decided);
        }
        for (const auto& nu : secondary_space(m, 2, 0, 0).basis) {
            const auto d = secondary_differential(m, 2, 0, 0, nu);
            if (!d.spec) continue;
            CHECK(secondary_differential(m, 1, 1, 1, d.representative).is_zero());
        }
    }

    TEST_CASE("selection quotients need an invariant complement") {
        const auto m = gt("gt_model_p1.sg");
        CHECK_NOTHROW(quotient_by_selection(m.total, {1}));
        CHECK_THROWS_AS(quotient_by_selection(m.total, {0}), InvalidInput);
    }

    TEST_CASE("compatibility over an odd base") {
        const auto g = oracle::golden("gtm_c01.sg").gluings.at(0);
        const auto u = underlying_gluing(g);
        CHECK(u.odd_rank() == 2);
        CHECK(verify_cocycle(u).ok);
        const auto c = compatibility_check(g);
        CHECK(c.ok);
        CHECK(c.same_spec);
        CHECK(c.underlying == c.projected);
        CHECK_FALSE(c.underlying.is_zero());
        const auto t = refined_splitting_type(g);
        CHECK(t.level == 2);
        CHECK(t.b == 0);
    }
}
