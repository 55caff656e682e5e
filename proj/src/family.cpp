#include "supergluing/family.hpp"

#include <functional>

#include "supergluing/errors.hpp"

namespace sg {

namespace {

const Chart& chart_of(const Cover& c, int i) { return c.charts.at(static_cast<std::size_t>(i)); }

// Scale-star witness maps for every chart, with lambda given in the base
// variable slots of the chart context.
ChartMaps star_maps(const SuperGluingData& g, const std::function<LaurentPoly(const Chart&)>& lambda) {
    ChartMaps m;
    for (int a = 0; a < static_cast<int>(g.cover.charts.size()); ++a)
        m[a] = odd_scaling(chart_of(g.cover, a), a, lambda(chart_of(g.cover, a)));
    return m;
}

ConjugationCheck compare(const SuperGluingData& a, const SuperGluingData& b) {
    ConjugationCheck c;
    c.location = first_difference(a, b);
    c.ok = c.location.empty();
    return c;
}

}  // namespace

SuperGluingData split_model(const SuperGluingData& g) {
    SuperGluingData r = g;
    for (auto& [key, t] : r.transitions) {
        for (auto& e : t.even) e = GrassmannElement::scalar(e.reduced(), e.odd_rank());
        for (auto& e : t.odd) e = e.component(1);
    }
    r.declared_splitting_type = kInfinity;
    return r;
}

SuperGluingData split_family(const SuperGluingData& g, const std::vector<std::string>& base) {
    SuperGluingData r = append_base(split_model(g), base);
    r.name = g.name.empty() ? "split_family" : g.name + "_split_family";
    return r;
}

SuperGluingData rothstein_family(const SuperGluingData& g, const std::string& base) {
    if (g.is_family()) throw InvalidInput("Rothstein family needs a gluing without base coordinates");
    const int j = splitting_type(g);
    if (j == kInfinity) return split_family(g, {base});
    const SuperGluingData ext = append_base(g, {base});
    const std::size_t nf = g.fiber_vars();
    std::vector<LaurentPoly> lambda;
    for (const auto& c : ext.cover.charts) lambda.push_back(LaurentPoly::variable(c.nvars(), nf));
    SuperGluingData r = scaling_action(ext, lambda);
    r.name = g.name.empty() ? "rothstein" : g.name + "_rothstein";
    r.declared_splitting_type = j;
    const CocycleReport rep = verify_cocycle(r);
    if (!rep.ok) throw InvalidInput("Rothstein family fails the cocycle check at " + rep.location + ": " + rep.detail);
    return r;
}

IsotrivialityWitness isotriviality_witness(const SuperGluingData& family, const Q& t0, const Q& t1) {
    if (t0 == 0 || t1 == 0) throw InvalidInput("isotriviality witness needs nonzero base points");
    if (family.base_vars() != 1) throw InvalidInput("isotriviality witness needs a one-parameter family");
    IsotrivialityWitness w;
    w.lambda = t1 / t0;
    const SuperGluingData f0 = restrict_fiber(family, {t0});
    const SuperGluingData f1 = restrict_fiber(family, {t1});
    w.maps = star_maps(f0, [&](const Chart& c) { return LaurentPoly::constant(c.nvars(), w.lambda); });
    w.check = compare(conjugate(f0, w.maps), f1);
    return w;
}

GluedFamily glue_over_p1(const SuperGluingData& g) {
    GluedFamily f;
    f.pieces.push_back(rothstein_family(g, "t"));
    f.pieces.push_back(rothstein_family(g, "s"));
    f.pieces[0].name = (g.name.empty() ? std::string("glued") : g.name) + "_over_B0";
    f.pieces[1].name = (g.name.empty() ? std::string("glued") : g.name) + "_over_B1";
    f.base.cover.charts.push_back(Chart{"B0", {"t"}, {}, 0});
    f.base.cover.charts.push_back(Chart{"B1", {"s"}, {}, 0});
    f.base.cover.add_overlap(0, 1);
    f.base.maps[{0, 1}] = {LaurentPoly::variable(1, 0, -1)};
    f.base.maps[{1, 0}] = {LaurentPoly::variable(1, 0, -1)};
    f.scale = LaurentPoly::variable(1, 0, -2);
    return f;
}

ConjugationCheck verify_glued(const GluedFamily& f) {
    if (f.pieces.size() < 2) throw InvalidInput("glued family needs two pieces");
    const SuperGluingData& src = f.pieces.at(static_cast<std::size_t>(f.from));
    const SuperGluingData& dst = f.pieces.at(static_cast<std::size_t>(f.to));
    if (src.base_vars() != 1 || dst.base_vars() != 1) throw InvalidInput("glued pieces must have one base coordinate");
    if (src.cover.charts.size() != dst.cover.charts.size()) throw InvalidInput("glued pieces have different covers");
    const std::size_t nf = src.fiber_vars();
    // base coordinate of `to` written in the `from` base chart, lifted into chart contexts
    const LaurentPoly& bmap = f.base.map(f.from, f.to).at(0);
    auto lift = [&](const LaurentPoly& p, std::size_t nvars) {
        std::vector<int> slot{static_cast<int>(nf)};
        return p.remap(slot, nvars);
    };
    const ChartMaps star = star_maps(src, [&](const Chart& c) { return lift(f.scale, c.nvars()); });
    const SuperGluingData lhs = conjugate(src, star);
    SuperGluingData rhs = dst;
    for (auto& [key, t] : rhs.transitions) {
        const std::size_t nv = chart_of(rhs.cover, key.first).nvars();
        std::vector<LaurentPoly> images;
        for (std::size_t i = 0; i < nf; ++i) images.push_back(LaurentPoly::variable(nv, i));
        images.push_back(lift(bmap, nv));
        auto sub = [&](const LaurentPoly& p) { return p.substitute(images); };
        for (auto& e : t.even) e = e.map_coefficients(sub, nv);
        for (auto& e : t.odd) e = e.map_coefficients(sub, nv);
        for (std::size_t k = nf; k < t.even.size(); ++k)
            t.even[k] = GrassmannElement::even_coordinate(nv, t.even[k].odd_rank(), k);
    }
    for (auto& c : rhs.cover.charts) c.base = src.cover.charts.front().base;
    return compare(lhs, rhs);
}

GluedFamily glued_from_model(const ModelFile& m) {
    if (!m.base_atlas) throw InvalidInput("model file has no base-atlas section");
    if (m.witnesses.size() != 1) throw InvalidInput("model file needs exactly one witness section");
    if (m.gluings.size() != m.base_atlas->atlas.cover.charts.size())
        throw InvalidInput("one gluing section per base chart is required");
    GluedFamily f;
    f.pieces = m.gluings;
    f.base = m.base_atlas->atlas;
    const WitnessDecl& w = m.witnesses.front();
    f.from = f.base.cover.index(w.from);
    f.to = f.base.cover.index(w.to);
    f.scale = w.scale;
    return f;
}

std::string write_glued(const GluedFamily& f) {
    std::string out = "format-version 1\n";
    for (const auto& p : f.pieces) out += "\n" + write_gluing(p);
    out += "\n[base-atlas]\n";
    for (const auto& c : f.base.cover.charts) out += "chart " + c.name + " base " + c.fiber.at(0) + "\n";
    for (const auto& [key, m] : f.base.maps) {
        if (key.first > key.second) continue;
        const Chart& a = chart_of(f.base.cover, key.first);
        const Chart& b = chart_of(f.base.cover, key.second);
        out += "map " + a.name + " " + b.name + "\n  " + b.fiber.at(0) + " = " + m.at(0).to_string(a.names()) + "\nend\n";
    }
    const Chart& from = chart_of(f.base.cover, f.from);
    out += "\n[witness " + from.name + " " + chart_of(f.base.cover, f.to).name + "]\n";
    out += "scale " + f.scale.to_string(from.names()) + "\n";
    return out;
}

}  // namespace sg
