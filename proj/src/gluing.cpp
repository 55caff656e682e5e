#include "supergluing/gluing.hpp"

#include <algorithm>

#include "supergluing/errors.hpp"

namespace sg {

namespace {

const Chart& chart_of(const Cover& c, int i) { return c.charts.at(static_cast<std::size_t>(i)); }

// Inverse of a square rational matrix by Gauss-Jordan; throws when singular.
QMatrix q_inverse(QMatrix a) {
    const std::size_t n = a.rows();
    QMatrix inv = QMatrix::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a(piv, col) == 0) ++piv;
        if (piv == n) throw UnsupportedSubstitution("reduced coordinate change is not invertible");
        for (std::size_t j = 0; j < n; ++j) {
            std::swap(a(col, j), a(piv, j));
            std::swap(inv(col, j), inv(piv, j));
        }
        const Q f = Q(1) / a(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            a(col, j) *= f;
            inv(col, j) *= f;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a(r, col) == 0) continue;
            const Q g = a(r, col);
            for (std::size_t j = 0; j < n; ++j) {
                a(r, j) -= g * a(col, j);
                inv(r, j) -= g * inv(col, j);
            }
        }
    }
    return inv;
}

LMatrix zeta_of(const SuperTransition& t, std::size_t nvars, int q) {
    LMatrix z(static_cast<std::size_t>(q), static_cast<std::size_t>(q), nvars);
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b) z(static_cast<std::size_t>(a), static_cast<std::size_t>(b)) = t.odd[static_cast<std::size_t>(a)].coefficient(MultiIndex::single(b + 1));
    return z;
}

int deviation_degree(const SuperTransition& t) {
    int j = kInfinity;
    auto scan = [&](const GrassmannElement& e) {
        for (const auto& [I, c] : e.terms())
            if (I.degree() >= 2) j = std::min(j, I.degree());
    };
    for (const auto& e : t.even) scan(e);
    for (const auto& e : t.odd) scan(e);
    return j;
}

}  // namespace

SuperTransition identity_transition(const Chart& c, int index) {
    SuperTransition t;
    t.source = t.target = index;
    const std::size_t n = c.nvars();
    for (std::size_t k = 0; k < n; ++k) t.even.push_back(GrassmannElement::even_coordinate(n, c.odd_rank, k));
    for (int a = 1; a <= c.odd_rank; ++a) t.odd.push_back(GrassmannElement::generator(n, c.odd_rank, a));
    return t;
}

SuperTransition compose_transitions(const SuperTransition& a, const SuperTransition& b) {
    if (a.target != b.source) throw ContextError("composition of transitions with mismatched charts");
    SuperTransition r;
    r.source = a.source;
    r.target = b.target;
    for (const auto& e : b.even) r.even.push_back(e.substitute(a.even, a.odd));
    for (const auto& e : b.odd) r.odd.push_back(e.substitute(a.even, a.odd));
    return r;
}

SuperTransition invert_transition(const SuperTransition& t, const Chart& source, const Chart& target) {
    const std::size_t n = source.nvars();
    const int q = source.odd_rank;
    if (target.nvars() != n || target.odd_rank != q) throw InvalidInput("charts " + source.name + " and " + target.name + " have different dimensions");
    // reduced part: y_k = c_k prod x^{A_k}
    QMatrix A(n, n);
    std::vector<Q> coef(n);
    for (std::size_t k = 0; k < n; ++k) {
        const LaurentPoly r = t.even[k].reduced();
        if (!r.is_monomial())
            throw UnsupportedSubstitution("reduced part of " + target.names()[k] + " on (" + source.name + "," + target.name +
                                          ") is not an invertible Laurent monomial");
        const auto& [e, c] = *r.terms().begin();
        coef[k] = c;
        for (std::size_t i = 0; i < n; ++i) A(k, i) = e[i];
    }
    const QMatrix B = q_inverse(A);
    std::vector<LaurentPoly> xr;
    for (std::size_t i = 0; i < n; ++i) {
        Exponent e(n);
        Q c = 1;
        for (std::size_t k = 0; k < n; ++k) {
            if (B(i, k).get_den() != 1) throw UnsupportedSubstitution("reduced coordinate change is not unimodular");
            const int p = static_cast<int>(B(i, k).get_num().get_si());
            e[k] = p;
            c *= q_pow(coef[k], -p);
        }
        xr.push_back(LaurentPoly::monomial(e, c));
    }
    SuperTransition s0;
    s0.source = t.target;
    s0.target = t.source;
    for (const auto& p : xr) s0.even.push_back(GrassmannElement::scalar(p, q));
    if (q > 0) {
        const LMatrix zinv = zeta_of(t, n, q).inverse().substitute(xr);
        for (int b = 0; b < q; ++b) {
            GrassmannElement e(n, q);
            for (int a = 0; a < q; ++a)
                e += GrassmannElement::generator(n, q, a + 1).times(zinv(static_cast<std::size_t>(b), static_cast<std::size_t>(a)));
            s0.odd.push_back(e);
        }
    }
    const SuperTransition id = identity_transition(source, t.source);
    const SuperTransition e = compose_transitions(t, s0);
    SuperTransition eps = e;
    for (std::size_t k = 0; k < n; ++k) eps.even[k] -= id.even[k];
    for (int a = 0; a < q; ++a) eps.odd[static_cast<std::size_t>(a)] -= id.odd[static_cast<std::size_t>(a)];
    // psi = id - eps o psi converges since eps raises odd degree
    SuperTransition psi = id;
    for (int it = 0; it < q + 3; ++it) {
        SuperTransition next = id;
        for (std::size_t k = 0; k < n; ++k) next.even[k] -= eps.even[k].substitute(psi.even, psi.odd);
        for (int a = 0; a < q; ++a)
            next.odd[static_cast<std::size_t>(a)] -= eps.odd[static_cast<std::size_t>(a)].substitute(psi.even, psi.odd);
        if (next == psi) break;
        psi = std::move(next);
    }
    SuperTransition s = compose_transitions(s0, psi);
    s.source = t.target;
    s.target = t.source;
    if (compose_transitions(t, s) != id) throw InvalidInput("could not invert transition (" + source.name + "," + target.name + ")");
    return s;
}

const SuperTransition& SuperGluingData::transition(int a, int b) const {
    auto it = transitions.find({a, b});
    if (it == transitions.end()) throw ContextError("no transition on " + cover.simplex_name({a, b}));
    return it->second;
}

bool SuperGluingData::is_family() const { return base_vars() > 0; }
std::size_t SuperGluingData::fiber_vars() const { return cover.charts.empty() ? 0 : cover.charts.front().fiber.size(); }
std::size_t SuperGluingData::base_vars() const { return cover.charts.empty() ? 0 : cover.charts.front().base.size(); }
int SuperGluingData::odd_rank() const { return cover.charts.empty() ? 0 : cover.charts.front().odd_rank; }

void complete_inverses(SuperGluingData& g) {
    for (const auto& [a, b] : g.cover.overlaps()) {
        if (g.transitions.count({a, b})) continue;
        auto it = g.transitions.find({b, a});
        if (it == g.transitions.end()) throw InvalidInput("no transition declared on " + g.cover.simplex_name({a, b}));
        g.transitions[{a, b}] = invert_transition(it->second, chart_of(g.cover, b), chart_of(g.cover, a));
    }
}

CocycleReport verify_cocycle(const SuperGluingData& g) {
    CocycleReport rep;
    auto fail = [&](std::string kind, std::string loc, std::string detail) {
        rep.ok = false;
        rep.kind = std::move(kind);
        rep.location = std::move(loc);
        rep.detail = std::move(detail);
        return rep;
    };
    const Cover& cov = g.cover;
    for (const auto& [a, b] : cov.overlaps())
        if (!g.transitions.count({a, b})) return fail("inverse", cov.simplex_name({a, b}), "missing transition");
    for (const auto& [key, t] : g.transitions) {
        const Chart& src = chart_of(cov, key.first);
        const Chart& tgt = chart_of(cov, key.second);
        const std::string loc = cov.simplex_name({key.first, key.second});
        if (t.even.size() != tgt.nvars() || t.odd.size() != static_cast<std::size_t>(tgt.odd_rank))
            return fail("admissibility", loc, "wrong number of coordinate maps");
        const auto tn = tgt.names();
        for (std::size_t k = 0; k < t.even.size(); ++k) {
            const auto p = t.even[k].parity();
            if (p != GrassmannElement::Parity::even) return fail("admissibility", loc, tn[k] + " is not even");
            if (!t.even[k].reduced().is_monomial())
                return fail("admissibility", loc, "reduced part of " + tn[k] + " is not an invertible Laurent monomial");
        }
        for (std::size_t a = 0; a < t.odd.size(); ++a) {
            const auto p = t.odd[a].parity();
            if (p != GrassmannElement::Parity::odd) return fail("admissibility", loc, "theta_" + std::to_string(a + 1) + " is not odd");
        }
        if (src.base.size() != tgt.base.size()) return fail("family", loc, "charts have different base dimensions");
        for (std::size_t k = 0; k < tgt.base.size(); ++k) {
            const std::size_t slot = tgt.fiber.size() + k;
            const std::size_t src_slot = src.fiber.size() + k;
            if (t.even[slot] != GrassmannElement::even_coordinate(src.nvars(), src.odd_rank, src_slot))
                return fail("family", loc, "base coordinate " + tgt.base[k] + " is not mapped identically");
        }
        for (int a = 0; a < g.base_odd; ++a)
            if (t.odd[static_cast<std::size_t>(a)] != GrassmannElement::generator(src.nvars(), src.odd_rank, a + 1))
                return fail("family", loc, "base odd generator theta_" + std::to_string(a + 1) + " is not mapped identically");
    }
    for (const auto& [a, b] : cov.overlaps()) {
        const SuperTransition c = compose_transitions(g.transition(a, b), g.transition(b, a));
        const SuperTransition id = identity_transition(chart_of(cov, a), a);
        const auto names = chart_of(cov, a).names();
        for (std::size_t k = 0; k < id.even.size(); ++k)
            if (c.even[k] != id.even[k])
                return fail("inverse", cov.simplex_name({a, b}),
                            names[k] + " -> " + names[k] + " + " + (c.even[k] - id.even[k]).to_string(names));
        for (std::size_t k = 0; k < id.odd.size(); ++k)
            if (c.odd[k] != id.odd[k])
                return fail("inverse", cov.simplex_name({a, b}),
                            "theta_" + std::to_string(k + 1) + " -> theta_" + std::to_string(k + 1) + " + " +
                                (c.odd[k] - id.odd[k]).to_string(names));
    }
    for (const auto& t : cov.triples()) {
        const SuperTransition via = compose_transitions(g.transition(t[0], t[1]), g.transition(t[1], t[2]));
        const SuperTransition& direct = g.transition(t[0], t[2]);
        if (via != direct) {
            const auto names = chart_of(cov, t[0]).names();
            std::string d;
            for (std::size_t k = 0; k < via.even.size() && d.empty(); ++k)
                if (via.even[k] != direct.even[k]) d = "even coordinate " + std::to_string(k + 1) + ": " + (via.even[k] - direct.even[k]).to_string(names);
            for (std::size_t k = 0; k < via.odd.size() && d.empty(); ++k)
                if (via.odd[k] != direct.odd[k]) d = "theta_" + std::to_string(k + 1) + ": " + (via.odd[k] - direct.odd[k]).to_string(names);
            return fail("triple", cov.simplex_name({t[0], t[1], t[2]}), d);
        }
    }
    return rep;
}

int presentation_splitting_type(const SuperGluingData& g) {
    int j = kInfinity;
    for (const auto& [k, t] : g.transitions) j = std::min(j, deviation_degree(t));
    return j;
}

int splitting_type(const SuperGluingData& g) {
    const CocycleReport r = verify_cocycle(g);
    if (!r.ok) throw InvalidInput("cocycle check failed (" + r.kind + ") on " + r.location + ": " + r.detail);
    return presentation_splitting_type(g);
}

ReducedModel reduce(const SuperGluingData& g) {
    auto atlas = std::make_shared<Atlas>();
    atlas->cover = g.cover;
    for (const auto& [k, t] : g.transitions) {
        std::vector<LaurentPoly> f;
        for (const auto& e : t.even) f.push_back(e.reduced());
        atlas->maps[k] = std::move(f);
    }
    atlas->verify();
    ReducedModel rm;
    rm.atlas = atlas;
    const int q = g.odd_rank();
    for (const auto& [k, t] : g.transitions)
        rm.zeta[k] = zeta_of(t, chart_of(g.cover, k.first).nvars(), q);
    std::map<Pair, LMatrix> odd;
    for (const auto& [k, t] : g.transitions) {
        const auto [a, b] = k;
        odd[k] = rm.zeta.at({b, a}).substitute(atlas->map(a, b)).transpose();
    }
    rm.odd_bundle = make_sheaf(atlas, q, std::move(odd));
    rm.cotangent = cotangent_sheaf(atlas);
    return rm;
}

SheafPtr cotangent_sheaf(const AtlasPtr& atlas) {
    std::map<Pair, LMatrix> cot;
    for (const auto& [a, b] : atlas->cover.overlaps()) {
        const auto& fb = atlas->map(b, a);  // x in terms of y
        const std::size_t n = fb.size();
        LMatrix jba(n, n, chart_of(atlas->cover, b).nvars());
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) jba(r, c) = fb[r].derivative(c);
        cot[{a, b}] = jba.substitute(atlas->map(a, b)).transpose();
    }
    const int n = atlas->cover.charts.empty() ? 0 : static_cast<int>(atlas->cover.charts.front().nvars());
    return make_sheaf(atlas, n, std::move(cot));
}

SuperGluingData restrict_fiber(const SuperGluingData& g, const std::vector<Q>& point) {
    const std::size_t nf = g.fiber_vars(), nb = g.base_vars();
    if (point.size() != nb) throw InvalidInput("point has " + std::to_string(point.size()) + " coordinates, base has " + std::to_string(nb));
    SuperGluingData r = g;
    for (auto& c : r.cover.charts) c.base.clear();
    std::vector<int> slot(nf + nb, -1);
    for (std::size_t i = 0; i < nf; ++i) slot[i] = static_cast<int>(i);
    auto f = [&](const LaurentPoly& p) {
        LaurentPoly v = p;
        for (std::size_t k = 0; k < nb; ++k) v = v.evaluate(nf + k, point[k]);
        return v.remap(slot, nf);
    };
    for (auto& [k, t] : r.transitions) {
        std::vector<GrassmannElement> even;
        for (std::size_t i = 0; i < nf; ++i) even.push_back(t.even[i].map_coefficients(f, nf));
        t.even = std::move(even);
        for (auto& e : t.odd) e = e.map_coefficients(f, nf);
    }
    r.declared_splitting_type.reset();
    return r;
}

SuperGluingData recenter(const SuperGluingData& g, const std::vector<Q>& point) {
    const std::size_t nf = g.fiber_vars(), nb = g.base_vars();
    if (point.size() != nb) throw InvalidInput("point dimension does not match the base");
    SuperGluingData r = g;
    auto f = [&](const LaurentPoly& p) {
        LaurentPoly v = p;
        for (std::size_t k = 0; k < nb; ++k) v = v.translate(nf + k, point[k]);
        return v;
    };
    for (auto& [key, t] : r.transitions) {
        const Chart& src = chart_of(g.cover, key.first);
        for (std::size_t i = 0; i < t.even.size(); ++i)
            t.even[i] = i < nf ? t.even[i].map_coefficients(f, nf + nb)
                               : GrassmannElement::even_coordinate(src.nvars(), src.odd_rank, i);
        for (auto& e : t.odd) e = e.map_coefficients(f, nf + nb);
    }
    return r;
}

bool SplittingTriple::lemma_holds() const { return embedding <= std::min(fiber, family); }

SplittingTriple embedding_splitting_triple(const SuperGluingData& g, const std::vector<Q>& point) {
    SplittingTriple s;
    s.family = splitting_type(g);
    s.fiber = splitting_type(restrict_fiber(g, point));
    s.embedding = presentation_splitting_type(recenter(g, point));
    return s;
}

SuperGluingData conjugate(const SuperGluingData& g, const ChartMaps& phi) {
    std::map<int, SuperTransition> inv;
    for (const auto& [c, p] : phi) inv[c] = invert_transition(p, chart_of(g.cover, c), chart_of(g.cover, c));
    SuperGluingData r = g;
    for (auto& [key, t] : r.transitions) {
        const auto [a, b] = key;
        SuperTransition cur = t;
        if (auto it = phi.find(a); it != phi.end()) cur = compose_transitions(it->second, cur);
        if (auto it = inv.find(b); it != inv.end()) cur = compose_transitions(cur, it->second);
        cur.source = a;
        cur.target = b;
        t = std::move(cur);
    }
    r.declared_splitting_type.reset();
    return r;
}

SuperTransition odd_scaling(const Chart& c, int index, const LaurentPoly& lambda) {
    SuperTransition t = identity_transition(c, index);
    for (auto& e : t.odd) e = e.times(lambda);
    return t;
}

SuperGluingData scaling_action(const SuperGluingData& g, const std::vector<LaurentPoly>& lambda) {
    ChartMaps phi;
    for (std::size_t i = 0; i < g.cover.charts.size(); ++i)
        phi[static_cast<int>(i)] = odd_scaling(g.cover.charts[i], static_cast<int>(i), lambda.at(i));
    return conjugate(g, phi);
}

SuperGluingData scaling_action(const SuperGluingData& g, const Q& lambda) {
    if (lambda == 0) throw RangeError("scaling parameter must be nonzero");
    std::vector<LaurentPoly> l;
    for (const auto& c : g.cover.charts) l.push_back(LaurentPoly::constant(c.nvars(), lambda));
    return scaling_action(g, l);
}

SuperGluingData append_base(const SuperGluingData& g, const std::vector<std::string>& names) {
    SuperGluingData r = g;
    const std::size_t old = g.fiber_vars() + g.base_vars();
    const std::size_t n = old + names.size();
    for (auto& c : r.cover.charts) c.base.insert(c.base.end(), names.begin(), names.end());
    std::vector<int> slot(old);
    for (std::size_t i = 0; i < old; ++i) slot[i] = static_cast<int>(i);
    auto f = [&](const LaurentPoly& p) { return p.remap(slot, n); };
    for (auto& [key, t] : r.transitions) {
        const int q = chart_of(r.cover, key.first).odd_rank;
        for (auto& e : t.even) e = e.map_coefficients(f, n);
        for (auto& e : t.odd) e = e.map_coefficients(f, n);
        for (std::size_t k = old; k < n; ++k) t.even.push_back(GrassmannElement::even_coordinate(n, q, k));
    }
    return r;
}

std::string first_difference(const SuperGluingData& a, const SuperGluingData& b) {
    for (const auto& [key, t] : a.transitions) {
        auto it = b.transitions.find(key);
        const std::string loc = a.cover.simplex_name({key.first, key.second});
        if (it == b.transitions.end()) return loc + ": missing transition";
        const auto& u = it->second;
        const auto names = chart_of(a.cover, key.first).names();
        const auto tnames = chart_of(a.cover, key.second).names();
        if (t.even.size() != u.even.size() || t.odd.size() != u.odd.size()) return loc + ": shape differs";
        for (std::size_t k = 0; k < t.even.size(); ++k)
            if (t.even[k] != u.even[k]) return loc + " " + tnames[k] + ": difference " + (t.even[k] - u.even[k]).to_string(names);
        for (std::size_t k = 0; k < t.odd.size(); ++k)
            if (t.odd[k] != u.odd[k])
                return loc + " theta_" + std::to_string(k + 1) + ": difference " + (t.odd[k] - u.odd[k]).to_string(names);
    }
    return {};
}

std::string transition_to_string(const SuperGluingData& g, const SuperTransition& t, bool fraction_form) {
    const auto sn = chart_of(g.cover, t.source).names();
    const auto tn = chart_of(g.cover, t.target).names();
    std::string out;
    for (std::size_t k = 0; k < t.even.size(); ++k) out += "  " + tn[k] + " = " + t.even[k].to_string(sn, fraction_form) + "\n";
    for (std::size_t k = 0; k < t.odd.size(); ++k)
        out += "  theta_" + std::to_string(k + 1) + " = " + t.odd[k].to_string(sn, fraction_form) + "\n";
    return out;
}

std::string splitting_type_string(int j) { return j == kInfinity ? "inf" : std::to_string(j); }

}  // namespace sg
