#include "supergluing/secondary.hpp"

#include <algorithm>

#include "supergluing/errors.hpp"

namespace sg {

namespace {

const Chart& chart_of(const Cover& c, int i) { return c.charts.at(static_cast<std::size_t>(i)); }

std::size_t subset_index(const std::vector<std::vector<int>>& all, const std::vector<int>& s) {
    const auto it = std::find(all.begin(), all.end(), s);
    if (it == all.end()) throw RangeError("subset not in basis");
    return static_cast<std::size_t>(it - all.begin());
}

Q factorial(int a) {
    Q r = 1;
    for (int i = 2; i <= a; ++i) r *= i;
    return r;
}

QMatrix selection(std::size_t rows, std::size_t cols, const std::vector<std::size_t>& pick) {
    QMatrix m(rows, cols);
    for (std::size_t i = 0; i < pick.size(); ++i) m(i, pick[i]) = 1;
    return m;
}

Cochain select_components(const Cochain& c, const std::vector<std::size_t>& keep, const SheafPtr& target) {
    Cochain out = Cochain::zero(target, c.degree);
    for (const auto& [s, v] : c.s) {
        std::vector<LaurentPoly> w;
        for (std::size_t i : keep) w.push_back(v[i]);
        out.set(s, std::move(w));
    }
    return out;
}

SecondaryImage empty_target(int a, int b, int p, const std::string& why) {
    SecondaryImage r;
    r.a = a;
    r.b = b;
    r.p = p;
    r.cls.trivial = true;
    r.certificate = why;
    return r;
}

bool has_top_simplices(const Cover& c, int p) { return !c.simplices(p).empty(); }

}  // namespace

SheafPtr GtModel::space_sheaf(int a, int b) const {
    auto it = spaces_.find({a, b});
    if (it == spaces_.end() || it->second->rank == 0) return nullptr;
    return it->second;
}

GtModel make_gt_model(const SheafPtr& tx, int base_rank, const RawCochain& theta) {
    if (base_rank < 1) throw InvalidInput("gt-model base rank must be positive");
    GtModel m;
    m.atlas = tx->atlas;
    m.tx = tx;
    m.base_rank = base_rank;
    m.tb = trivial_sheaf(m.atlas, base_rank);
    m.theta_sheaf = sheaf_hom(tx, m.tb);
    m.theta = Cochain::zero(m.theta_sheaf, 1);
    for (const auto& [s, v] : theta) {
        if (s.size() != 2 || s[0] >= s[1]) throw InvalidInput("theta must be given on increasing overlaps");
        m.theta.set(s, v);
    }
    if (!is_cocycle(m.theta)) throw InvalidInput("theta is not a cocycle");
    m.total = extension_sheaf(m.tb, tx, theta);
    m.cotangent = cotangent_sheaf(m.atlas);
    for (int J = 1; J <= m.total->rank; ++J) {
        FilteredSheaf f = filtration(m.total, J);
        for (int b = 0; b <= J; ++b)
            m.spaces_[{J - b, b}] = sheaf_hom(m.source(J), f.quotients.at(static_cast<std::size_t>(b)));
        m.filtrations.emplace(J, std::move(f));
    }
    return m;
}

GtModel gt_model_from_file(const ModelFile& mf) {
    if (!mf.gt_model) throw InvalidInput("model file has no gt-model section");
    return make_gt_model(mf.sheaves.at(mf.gt_model->fiber), mf.gt_model->base_rank, mf.gt_model->theta);
}

ModelClass model_class(const GtModel& m) {
    ModelClass r;
    r.cls = reduce_class(m.theta);
    const auto n = static_cast<std::size_t>(m.base_rank);
    const auto q = static_cast<std::size_t>(m.fiber_rank());
    ShortExactSequence ses;
    ses.sub = m.tb;
    ses.mid = m.total;
    ses.quot = m.tx;
    std::vector<std::size_t> subi, quoti;
    for (std::size_t i = 0; i < n; ++i) subi.push_back(i);
    for (std::size_t i = 0; i < q; ++i) quoti.push_back(n + i);
    ses.retract = selection(n, n + q, subi);
    ses.proj = selection(q, n + q, quoti);
    ses.incl = ses.retract.transpose();
    ses.lift = ses.proj.transpose();
    const ShortExactSequence tw = hom_twist(m.tx, ses);
    Cochain id = Cochain::zero(tw.quot, 0);
    for (const auto& s : m.atlas->cover.simplices(0)) {
        const std::size_t nv = chart_of(m.atlas->cover, s[0]).nvars();
        std::vector<LaurentPoly> v(q * q, LaurentPoly(nv));
        for (std::size_t i = 0; i < q; ++i) v[i * q + i] = LaurentPoly::constant(nv, 1);
        id.set(s, std::move(v));
    }
    r.connecting = reinterpret(connecting_map(tw, id), m.theta_sheaf);
    r.cross_check = reduce_class(r.connecting - m.theta).trivial;
    return r;
}

SecondarySpace secondary_space(const GtModel& m, int a, int b, int p, std::optional<Window> window) {
    SecondarySpace s;
    s.a = a;
    s.b = b;
    s.p = p;
    if (a < 0 || b < 0) throw InvalidInput("secondary space indices must be nonnegative");
    s.zero_by_rank = a + b > m.rank();
    s.spec = m.space_sheaf(a, b);
    if (s.spec) s.basis = cohomology_basis(s.spec, p, window);
    return s;
}

SecondaryImage secondary_differential(const GtModel& m, int a, int b, int p, const Cochain& nu) {
    const SheafPtr src = m.space_sheaf(a, b);
    if (!src) throw InvalidInput("source secondary space is zero");
    const SheafPtr tgt = m.space_sheaf(a - 1, b + 1);
    if (!tgt) return empty_target(a - 1, b + 1, p + 1, "target space is zero");
    if (!has_top_simplices(m.atlas->cover, p + 1))
        return empty_target(a - 1, b + 1, p + 1, "no " + std::to_string(p + 1) + "-simplices in the cover");
    const int J = a + b;
    const FilteredSheaf& f = m.filtrations.at(J);
    const auto bi = static_cast<std::size_t>(b);
    ShortExactSequence ses;
    ses.sub = f.pieces.at(bi + 1);
    ses.mid = f.pieces.at(bi);
    ses.quot = f.quotients.at(bi);
    ses.incl = f.piece_map(b + 1, b);
    ses.retract = f.piece_map(b, b + 1);
    ses.proj = f.projection(b);
    ses.lift = f.lift(b);
    const SheafPtr t = m.source(J);
    const ShortExactSequence tw = hom_twist(t, ses);
    const Cochain up = connecting_map(tw, reinterpret(nu, tw.quot));
    const QMatrix pr = kron(QMatrix::identity(static_cast<std::size_t>(t->rank)), f.projection(b + 1));
    SecondaryImage r;
    r.a = a - 1;
    r.b = b + 1;
    r.p = p + 1;
    r.spec = tgt;
    r.representative = apply_map(pr, up, tgt);
    r.cls = reduce_class(r.representative);
    return r;
}

QMatrix contraction_map(int m, int a) {
    if (a < 1) throw InvalidInput("contraction needs a >= 1");
    const auto src = subsets(m, a);
    const auto dst = subsets(m, a - 1);
    const Q w = Q(1) / factorial(a);
    QMatrix out(static_cast<std::size_t>(m) * dst.size(), src.size());
    for (std::size_t c = 0; c < src.size(); ++c) {
        const auto& L = src[c];
        for (std::size_t pos = 0; pos < L.size(); ++pos) {
            std::vector<int> rest = L;
            rest.erase(rest.begin() + static_cast<long>(pos));
            const std::size_t row = static_cast<std::size_t>(L[pos]) * dst.size() + subset_index(dst, rest);
            out(row, c) += pos % 2 == 0 ? w : Q(-w);
        }
    }
    return out;
}

SecondaryImage model_class_map(const GtModel& m, int a, int b, int p, const Cochain& nu) {
    const SheafPtr src = m.space_sheaf(a, b);
    if (!src) throw InvalidInput("source secondary space is zero");
    if (a < 1) throw InvalidInput("model class map needs a >= 1");
    const SheafPtr tgt = m.space_sheaf(a - 1, b + 1);
    if (!tgt) return empty_target(a - 1, b + 1, p + 1, "target space is zero");
    if (!has_top_simplices(m.atlas->cover, p + 1))
        return empty_target(a - 1, b + 1, p + 1, "no " + std::to_string(p + 1) + "-simplices in the cover");
    const int n = m.base_rank, q = m.fiber_rank();
    const int J = a + b;
    const auto rT = static_cast<std::size_t>(m.source(J)->rank);
    const auto Bsrc = subsets(n, b), Bdst = subsets(n, b + 1);
    const auto Asrc = subsets(q, a), Adst = subsets(q, a - 1);
    const std::size_t rQ = Bsrc.size() * Asrc.size(), rQ2 = Bdst.size() * Adst.size();
    const std::size_t rV = rT * rQ;
    const QMatrix contr = contraction_map(q, a);
    QMatrix big(rT * rQ2, static_cast<std::size_t>(q * n) * rV);
    for (std::size_t t = 0; t < rT; ++t)
        for (std::size_t Bi = 0; Bi < Bsrc.size(); ++Bi)
            for (std::size_t Ai = 0; Ai < Asrc.size(); ++Ai) {
                const std::size_t vi = t * rQ + Bi * Asrc.size() + Ai;
                for (int l = 0; l < q; ++l)
                    for (std::size_t Ki = 0; Ki < Adst.size(); ++Ki) {
                        const Q c = contr(static_cast<std::size_t>(l) * Adst.size() + Ki, Ai);
                        if (c == 0) continue;
                        for (int s = 0; s < n; ++s) {
                            const auto& B = Bsrc[Bi];
                            if (std::find(B.begin(), B.end(), s) != B.end()) continue;
                            const long after = std::count_if(B.begin(), B.end(), [&](int v) { return v > s; });
                            std::vector<int> B2 = B;
                            B2.insert(std::upper_bound(B2.begin(), B2.end(), s), s);
                            const std::size_t row = t * rQ2 + subset_index(Bdst, B2) * Adst.size() + Ki;
                            const std::size_t col = static_cast<std::size_t>(l * n + s) * rV + vi;
                            big(row, col) += after % 2 == 0 ? c : Q(-c);
                        }
                    }
            }
    SecondaryImage r;
    r.a = a - 1;
    r.b = b + 1;
    r.p = p + 1;
    r.spec = tgt;
    r.representative = apply_map(big, cup_product(m.theta, reinterpret(nu, src)), tgt);
    r.cls = reduce_class(r.representative);
    return r;
}

SecondaryImage tau_theta(const GtModel& m, int a, int b, int p, const Cochain& nu) {
    const SheafPtr src = m.space_sheaf(a, b);
    if (!src) throw InvalidInput("source secondary space is zero");
    const SheafPtr tgt = m.space_sheaf(a - 1, b + 1);
    if (!tgt) return empty_target(a - 1, b + 1, p + 1, "target space is zero");
    const Cover& cov = m.atlas->cover;
    if (!has_top_simplices(cov, p + 1))
        return empty_target(a - 1, b + 1, p + 1, "no " + std::to_string(p + 1) + "-simplices in the cover");
    const int n = m.base_rank, q = m.fiber_rank(), R = n + q;
    const int J = a + b;
    const auto rT = static_cast<std::size_t>(m.source(J)->rank);
    const auto Bsrc = subsets(n, b), Bdst = subsets(n, b + 1);
    const auto Asrc = subsets(q, a), Adst = subsets(q, a - 1);
    const std::size_t rQ = Bsrc.size() * Asrc.size(), rQ2 = Bdst.size() * Adst.size();
    auto total_index = [&](const std::vector<int>& B, const std::vector<int>& A) {
        std::vector<int> g;
        for (int v : B) g.push_back(v + 1);
        for (int v : A) g.push_back(n + v + 1);
        return MultiIndex::from_indices(g, R);
    };
    SecondaryImage r;
    r.a = a - 1;
    r.b = b + 1;
    r.p = p + 1;
    r.spec = tgt;
    r.representative = Cochain::zero(tgt, p + 1);
    for (const auto& sx : cov.simplices(p + 1)) {
        const int i0 = sx[0], i1 = sx[1];
        const std::size_t nv = chart_of(cov, i0).nvars();
        const auto th = m.theta.at({i0, i1});
        const std::vector<int> tail(sx.begin() + 1, sx.end());
        const auto v = src->transport(reinterpret(nu, src).at(tail), i0, i1);
        std::vector<LaurentPoly> out(rT * rQ2, LaurentPoly(nv));
        for (std::size_t t = 0; t < rT; ++t) {
            GrassmannElement g(nv, R);
            for (std::size_t Bi = 0; Bi < Bsrc.size(); ++Bi)
                for (std::size_t Ai = 0; Ai < Asrc.size(); ++Ai)
                    g.add_term(total_index(Bsrc[Bi], Asrc[Ai]), v[t * rQ + Bi * Asrc.size() + Ai]);
            GrassmannElement d(nv, R);
            for (int i = 0; i < q; ++i) {
                const GrassmannElement dg = g.odd_derivative(n + i + 1);
                if (dg.is_zero()) continue;
                for (int s = 0; s < n; ++s) {
                    const LaurentPoly& c = th[static_cast<std::size_t>(i * n + s)];
                    if (c.is_zero()) continue;
                    d += (GrassmannElement::generator(nv, R, s + 1) * dg).times(c);
                }
            }
            for (std::size_t Bi = 0; Bi < Bdst.size(); ++Bi)
                for (std::size_t Ai = 0; Ai < Adst.size(); ++Ai)
                    out[t * rQ2 + Bi * Adst.size() + Ai] = d.coefficient(total_index(Bdst[Bi], Adst[Ai]));
        }
        r.representative.set(sx, std::move(out));
    }
    r.cls = reduce_class(r.representative);
    return r;
}

Cochain unit_cup(const Cochain& nu) {
    const SheafPtr one_sheaf = trivial_sheaf(nu.sheaf->atlas, 1);
    Cochain one = Cochain::zero(one_sheaf, 0);
    for (const auto& s : nu.sheaf->cover().simplices(0))
        one.set(s, {LaurentPoly::constant(chart_of(nu.sheaf->cover(), s[0]).nvars(), 1)});
    return reinterpret(cup_product(one, nu), nu.sheaf);
}

A1Report verify_a1_containment(const GtModel& m, int b, std::optional<Window> window) {
    A1Report rep;
    rep.b = b;
    const SecondarySpace space = secondary_space(m, 1, b, 0, window);
    if (!space.spec) {
        rep.status = "source space is zero";
        return rep;
    }
    if (space.basis.empty()) {
        rep.status = "source space has no sections in the window";
        return rep;
    }
    for (const Cochain& nu : space.basis) {
        A1Entry e;
        e.nu = nu;
        e.nu_prime = unit_cup(nu);
        e.model_map = model_class_map(m, 1, b, 0, nu);
        e.tau = tau_theta(m, 1, b, 0, nu);
        e.differential = secondary_differential(m, 1, b, 0, e.nu_prime);
        if (e.model_map.is_zero() || e.tau.is_zero() || e.differential.is_zero()) {
            e.equal = e.model_map.is_zero() && e.tau.is_zero() && e.differential.is_zero();
        } else {
            // compare classes, not only residues, so differing windows cannot matter
            e.equal = reduce_class(e.model_map.representative - e.tau.representative).trivial &&
                      reduce_class(e.tau.representative - e.differential.representative).trivial &&
                      e.model_map.cls.residue == e.tau.cls.residue && e.tau.cls.residue == e.differential.cls.residue;
        }
        rep.ok = rep.ok && e.equal;
        rep.entries.push_back(std::move(e));
    }
    rep.status = rep.ok ? "containment verified" : "containment failed";
    return rep;
}

SheafPtr quotient_by_selection(const SheafPtr& s, const std::vector<std::size_t>& keep) {
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < static_cast<std::size_t>(s->rank); ++i)
        if (std::find(keep.begin(), keep.end(), i) == keep.end()) rest.push_back(i);
    std::map<Pair, LMatrix> mats;
    for (const auto& [key, M] : s->matrices) {
        if (!rest.empty() && !M.select(keep, rest).is_zero())
            throw InvalidInput("dropped coordinates do not span a subsheaf on " + s->cover().simplex_name({key.first, key.second}));
        mats[key] = M.select(keep, keep);
    }
    return make_sheaf(s->atlas, static_cast<int>(keep.size()), std::move(mats));
}

SuperGluingData underlying_gluing(const SuperGluingData& g) {
    const int bo = g.base_odd, q = g.odd_rank();
    if (bo <= 0) return g;
    const int nq = q - bo;
    std::vector<int> idx(static_cast<std::size_t>(q), 0);
    for (int k = bo; k < q; ++k) idx[static_cast<std::size_t>(k)] = k - bo + 1;
    SuperGluingData r = g;
    r.name = g.name + "_underlying";
    r.base_odd = 0;
    r.declared_splitting_type.reset();
    for (auto& c : r.cover.charts) c.odd_rank = nq;
    for (auto& [key, t] : r.transitions) {
        for (auto& e : t.even) e = e.remap_generators(idx, nq);
        std::vector<GrassmannElement> odd;
        for (int k = bo; k < q; ++k) odd.push_back(t.odd[static_cast<std::size_t>(k)].remap_generators(idx, nq));
        t.odd = std::move(odd);
    }
    return r;
}

namespace {

// Coordinates of hom(A, wedge^j odd) whose wedge factor avoids the first
// `limit` generators in fewer than `count` places.
std::vector<std::size_t> components_below(std::size_t src_rank, int q, int j, int bo, int count) {
    const auto sets = subsets(q, j);
    std::vector<std::size_t> keep;
    for (std::size_t l = 0; l < src_rank; ++l)
        for (std::size_t i = 0; i < sets.size(); ++i) {
            const long k = std::count_if(sets[i].begin(), sets[i].end(), [&](int v) { return v < bo; });
            if (k < count) keep.push_back(l * sets.size() + i);
        }
    return keep;
}

}  // namespace

Compatibility compatibility_check(const SuperGluingData& g) {
    Compatibility r;
    if (g.base_odd <= 0) throw InvalidInput("compatibility check needs odd base directions");
    const int j = presentation_splitting_type(g);
    if (j == kInfinity) {
        r.ok = r.same_spec = true;
        r.detail = "total space is split";
        return r;
    }
    const SuperGluingData u = underlying_gluing(g);
    const ObstructionClass wt = obstruction_cocycle(g, j);
    const ObstructionClass wu = obstruction_cocycle(u, j);
    const int q = g.odd_rank(), bo = g.base_odd;
    const std::size_t src_rank = j % 2 == 0 ? g.fiber_vars() + g.base_vars() : static_cast<std::size_t>(q);
    const auto keep = components_below(src_rank, q, j, bo, 1);
    const SheafPtr sq = quotient_by_selection(wt.sheaf, keep);
    // iota: underlying hom(A_u, wedge^j) -> hom(A, F_0/F_1); identity for even j,
    // precomposition with total -> quotient for odd j
    const auto ur = static_cast<std::size_t>(wu.sheaf->rank);
    const std::size_t C = subsets(q - bo, j).size();
    QMatrix iota(static_cast<std::size_t>(sq->rank), ur);
    for (std::size_t i = 0; i < ur; ++i) {
        const std::size_t l = i / C, k = i % C;
        const std::size_t row = j % 2 == 0 ? i : (l + static_cast<std::size_t>(bo)) * C + k;
        iota(row, i) = 1;
    }
    r.same_spec = true;
    for (const auto& [key, M] : wu.sheaf->matrices) {
        const LMatrix lhs = sq->matrix(key.first, key.second) * LMatrix::from_q(iota, M.nvars());
        const LMatrix rhs = LMatrix::from_q(iota, M.nvars()) * M;
        if (lhs != rhs) {
            r.same_spec = false;
            r.detail = "inclusion is not a sheaf map on " + g.cover.simplex_name({key.first, key.second});
        }
    }
    const Cochain projected = select_components(wt.representative, keep, sq);
    const Cochain included = apply_map(iota, wu.representative, sq);
    const ClassResult diff = reduce_class(projected - included);
    int support = std::max(projected.max_abs_exponent(), included.max_abs_exponent());
    const int bound = solve_bound(sq, support);
    r.projected = reduce_class(projected, bound).residue;
    r.underlying = reduce_class(included, bound).residue;
    r.ok = r.same_spec && diff.trivial && r.projected == r.underlying;
    if (!r.ok && r.detail.empty()) r.detail = "projected class differs from the underlying class";
    return r;
}

RefinedType refined_splitting_type(const SuperGluingData& g) {
    RefinedType r;
    r.level = presentation_splitting_type(g);
    if (r.level == kInfinity) return r;
    const ObstructionClass w = obstruction_cocycle(g, r.level);
    const int q = g.odd_rank(), bo = g.base_odd, j = r.level;
    const std::size_t src_rank = j % 2 == 0 ? g.fiber_vars() + g.base_vars() : static_cast<std::size_t>(q);
    r.b = 0;
    for (int b = 1; b <= std::min(j, bo); ++b) {
        const auto keep = components_below(src_rank, q, j, bo, b);
        const SheafPtr sq = quotient_by_selection(w.sheaf, keep);
        if (!reduce_class(select_components(w.representative, keep, sq)).trivial) break;
        r.b = b;
    }
    if (w.trivial()) r.b = std::min(j, bo);
    r.a = j - r.b;
    return r;
}

}  // namespace sg
