#include "supergluing/obstruction.hpp"

#include <sstream>

#include "supergluing/errors.hpp"

namespace sg {

namespace {

const Chart& chart_of(const Cover& c, int i) { return c.charts.at(static_cast<std::size_t>(i)); }

// Degree-j multi-indices in the same order as subsets(q, j).
std::vector<MultiIndex> level_indices(int q, int j) {
    std::vector<MultiIndex> out;
    for (const auto& s : subsets(q, j)) {
        std::vector<int> one;
        for (int v : s) one.push_back(v + 1);
        out.push_back(MultiIndex::from_indices(one, q));
    }
    return out;
}

}  // namespace

SheafPtr obstruction_sheaf(const ReducedModel& m, int j) {
    const int q = m.odd_bundle->rank;
    if (j < 2) throw LevelError("obstruction levels start at 2");
    if (j > q) throw LevelError("level " + std::to_string(j) + " exceeds the odd rank " + std::to_string(q));
    const SheafPtr src = j % 2 == 0 ? m.cotangent : m.odd_bundle;
    return sheaf_hom(src, sheaf_exterior_power(m.odd_bundle, j));
}

ObstructionClass make_class(int level, SheafPtr sheaf, Cochain representative, std::optional<int> bound) {
    ObstructionClass w;
    w.level = level;
    w.even = level % 2 == 0;
    w.sheaf = std::move(sheaf);
    w.representative = std::move(representative);
    if (!is_cocycle(w.representative)) throw InvalidInput("extracted obstruction representative is not a cocycle");
    w.reduced = reduce_class(w.representative, bound);
    return w;
}

ObstructionClass obstruction_cocycle(const SuperGluingData& g, int j, std::optional<int> bound) {
    const int st = presentation_splitting_type(g);
    if (st < j)
        throw LevelError("presentation deviates at level " + splitting_type_string(st) + ", below requested level " +
                         std::to_string(j));
    const ReducedModel rm = reduce(g);
    const SheafPtr sheaf = obstruction_sheaf(rm, j);
    const int q = g.odd_rank();
    const auto idx = level_indices(q, j);
    const std::size_t C = idx.size();
    const std::size_t nf = g.fiber_vars();
    const std::size_t srank = j % 2 == 0 ? rm.cotangent->rank : static_cast<std::size_t>(q);
    Cochain rep = Cochain::zero(sheaf, 1);
    bool base_zero = true;
    for (const auto& s : g.cover.simplices(1)) {
        const int a = s[0], b = s[1];
        const SuperTransition& t = g.transition(a, b);
        const std::size_t nv = chart_of(g.cover, a).nvars();
        // frame change d/d(target coord k) -> sum_l P[l][k] d/d(source coord l)
        const LMatrix P = (j % 2 == 0 ? rm.cotangent : rm.odd_bundle)->matrix(a, b).transpose();
        const auto& maps = j % 2 == 0 ? t.even : t.odd;
        std::vector<GrassmannElement> dev;
        for (const auto& e : maps) dev.push_back(euler_projection(e, j));
        std::vector<LaurentPoly> v(srank * C, LaurentPoly(nv));
        for (std::size_t l = 0; l < srank; ++l)
            for (std::size_t i = 0; i < C; ++i) {
                LaurentPoly acc(nv);
                for (std::size_t k = 0; k < dev.size(); ++k) {
                    const LaurentPoly c = dev[k].coefficient(idx[i]);
                    if (!c.is_zero()) acc += P(l, k) * c;
                }
                if (j % 2 == 0 && l >= nf && !acc.is_zero()) base_zero = false;
                v[l * C + i] = std::move(acc);
            }
        rep.set(s, std::move(v));
    }
    ObstructionClass w = make_class(j, sheaf, std::move(rep), bound);
    w.base_components_zero = base_zero;
    return w;
}

Q scale_factor(int level, const Q& lambda) {
    if (lambda == 0) throw InvalidInput("scaling parameter must be nonzero");
    return q_pow(lambda, level % 2 == 0 ? level : level - 1);
}

ObstructionClass scale_class(const ObstructionClass& w, const Q& lambda) {
    const Q f = scale_factor(w.level, lambda);
    ObstructionClass r = w;
    r.representative *= f;
    r.reduced.witness *= f;
    r.reduced.residue *= f;
    return r;
}

ChartMaps coordinate_change(const SuperGluingData& g, const Cochain& b, int j) {
    const int q = g.odd_rank();
    const auto idx = level_indices(q, j);
    const std::size_t C = idx.size();
    ChartMaps out;
    for (int a = 0; a < static_cast<int>(g.cover.charts.size()); ++a) {
        const auto v = b.at({a});
        bool any = false;
        for (const auto& p : v) any = any || !p.is_zero();
        if (!any) continue;
        const Chart& c = chart_of(g.cover, a);
        SuperTransition psi = identity_transition(c, a);
        auto& target = j % 2 == 0 ? psi.even : psi.odd;
        for (std::size_t l = 0; l < target.size(); ++l)
            for (std::size_t i = 0; i < C; ++i) {
                const LaurentPoly& p = v[l * C + i];
                if (!p.is_zero()) target[l].add_term(idx[i], p);
            }
        out[a] = std::move(psi);
    }
    return out;
}

namespace {

void accumulate(ChartMaps& acc, const ChartMaps& psi) {
    for (const auto& [a, p] : psi) {
        auto it = acc.find(a);
        acc[a] = it == acc.end() ? p : compose_transitions(p, it->second);
    }
}

// A level-j class that is not a coboundary may still be removable: the witnesses
// at lower levels k are only fixed up to H^0 of the level-k sheaf, and changing
// them by a global section h moves the level-j cocycle affinely in h. Looks for
// a combination of such h making the class trivial; returns the coordinate
// changes to apply, or nothing.
std::optional<ChartMaps> absorb_with_global_sections(const SuperGluingData& cur, const ObstructionClass& w,
                                                     std::vector<int>& used_levels) {
    const int j = w.level;
    const ReducedModel rm = reduce(cur);
    struct Gen {
        int k;
        Cochain h;
    };
    std::vector<Gen> gens;
    Echelon ech;
    for (int k = 2; k < j; ++k) {
        std::vector<Cochain> basis;
        try {
            basis = cohomology_basis(obstruction_sheaf(rm, k), 0);
        } catch (const NeedsWindow&) {
            continue;
        }
        for (const Cochain& h : basis) {
            const SuperGluingData moved = conjugate(cur, coordinate_change(cur, h, k));
            if (presentation_splitting_type(moved) < j) continue;
            const ObstructionClass wm = obstruction_cocycle(moved, j);
            const Cochain delta = reinterpret(wm.representative, w.sheaf) - w.representative;
            const Cochain res = reduce_class(delta).residue;
            if (res.is_zero()) continue;
            const int tag = static_cast<int>(gens.size());
            gens.push_back({k, h});
            ech.insert(to_svec(res), Combo{{tag, Q(1)}});
        }
    }
    if (gens.empty()) return std::nullopt;
    Combo used;
    if (!ech.reduce(to_svec(w.canonical()), &used).empty()) return std::nullopt;
    // canonical = sum used[g] * residue_g, so subtract that combination
    std::map<int, Cochain> per_level;
    for (const auto& [tag, c] : used) {
        const Gen& g = gens[static_cast<std::size_t>(tag)];
        auto it = per_level.find(g.k);
        if (it == per_level.end()) it = per_level.emplace(g.k, Cochain::zero(g.h.sheaf, 0)).first;
        it->second += (-c) * g.h;
    }
    ChartMaps out;
    SuperGluingData state = cur;
    for (const auto& [k, h] : per_level) {
        const ChartMaps psi = coordinate_change(state, h, k);
        state = conjugate(state, psi);
        accumulate(out, psi);
        used_levels.push_back(k);
    }
    return out;
}

}  // namespace

SplitAttempt attempt_split(const SuperGluingData& g) {
    SplitAttempt r;
    SuperGluingData cur = g;
    const int q = g.odd_rank();
    for (int guard = 0; guard <= 2 * q + 2; ++guard) {
        const int j = presentation_splitting_type(cur);
        if (j == kInfinity) {
            r.split = true;
            break;
        }
        ObstructionClass w = obstruction_cocycle(cur, j);
        if (!w.trivial()) {
            std::vector<int> levels;
            const auto fix = absorb_with_global_sections(cur, w, levels);
            SuperGluingData moved = fix ? conjugate(cur, *fix) : cur;
            if (!fix || presentation_splitting_type(moved) < j || !obstruction_cocycle(moved, j).trivial()) {
                r.fatal = std::move(w);
                break;
            }
            accumulate(r.witness, *fix);
            r.adjusted_levels.insert(r.adjusted_levels.end(), levels.begin(), levels.end());
            cur = std::move(moved);
            continue;
        }
        const ChartMaps psi = coordinate_change(cur, w.reduced.witness, j);
        SuperGluingData next = conjugate(cur, psi);
        const int nj = presentation_splitting_type(next);
        if (nj <= j)
            throw InvalidInput("coordinate change at level " + std::to_string(j) + " did not remove the deviation");
        accumulate(r.witness, psi);
        r.cleared_levels.push_back(j);
        cur = std::move(next);
    }
    r.result = std::move(cur);
    if (r.split && presentation_splitting_type(conjugate(g, r.witness)) != kInfinity)
        throw InvalidInput("accumulated splitting witness does not split the input");
    return r;
}

std::string SplitAttempt::to_string() const {
    std::ostringstream os;
    if (split) {
        os << "split: yes\n";
    } else {
        os << "split: no\nfatal-level: " << fatal->level << "\n";
    }
    os << "cleared-levels:";
    for (int j : cleared_levels) os << " " << j;
    os << "\n";
    if (!adjusted_levels.empty()) {
        os << "adjusted-levels:";
        for (int j : adjusted_levels) os << " " << j;
        os << "\n";
    }
    return os.str();
}

Cochain SplittingTypeDifferential::evaluate(const std::vector<Q>& point) const {
    const SuperGluingData fib = restrict_fiber(family, point);
    if (level == kInfinity || level > fib.odd_rank()) {
        // any level works as a container; report the zero cochain on level 2 when possible
        const int j = fib.odd_rank() >= 2 ? 2 : 0;
        if (j == 0) return Cochain();
        return Cochain::zero(obstruction_sheaf(reduce(fib), j), 1);
    }
    const SheafPtr fs = obstruction_sheaf(reduce(fib), level);
    const std::size_t nf = family.fiber_vars(), nb = family.base_vars();
    std::vector<int> slot(nf + nb, -1);
    for (std::size_t i = 0; i < nf; ++i) slot[i] = static_cast<int>(i);
    Cochain out = Cochain::zero(fs, 1);
    for (const auto& [sx, v] : family_class->representative.s) {
        std::vector<LaurentPoly> w(static_cast<std::size_t>(fs->rank), LaurentPoly(nf));
        for (std::size_t i = 0; i < w.size(); ++i) {
            LaurentPoly p = v[i];
            for (std::size_t k = 0; k < nb; ++k) p = p.evaluate(nf + k, point[k]);
            w[i] = p.remap(slot, nf);
        }
        out.set(sx, std::move(w));
    }
    return out;
}

SplittingTypeDifferential splitting_type_differential(const SuperGluingData& family) {
    if (!family.is_family()) throw InvalidInput("splitting type differential needs a family");
    SplittingTypeDifferential d;
    d.family = family;
    d.level = presentation_splitting_type(family);
    if (d.level != kInfinity) d.family_class = obstruction_cocycle(family, d.level);
    return d;
}

Cochain pull_to_family(const Cochain& fiber, const SheafPtr& family_sheaf) {
    Cochain out = Cochain::zero(family_sheaf, fiber.degree);
    const std::size_t fr = static_cast<std::size_t>(fiber.sheaf->rank);
    const std::size_t famr = static_cast<std::size_t>(family_sheaf->rank);
    if (fr > famr) throw ContextError("fiber sheaf larger than family sheaf");
    for (const auto& [sx, v] : fiber.s) {
        const std::size_t nv = chart_of(family_sheaf->cover(), sx[0]).nvars();
        std::vector<int> slot;
        for (std::size_t i = 0; i < (v.empty() ? 0 : v[0].nvars()); ++i) slot.push_back(static_cast<int>(i));
        std::vector<LaurentPoly> w(famr, LaurentPoly(nv));
        for (std::size_t i = 0; i < fr; ++i) w[i] = v[i].remap(slot, nv);
        out.set(sx, std::move(w));
    }
    return out;
}

CharacteristicFactorization characteristic_factorization(const SuperGluingData& family) {
    if (!family.is_family()) throw InvalidInput("characteristic factorization needs a family");
    CharacteristicFactorization f;
    const std::size_t nf = family.fiber_vars(), nb = family.base_vars();
    f.base_names = family.cover.charts.front().base;
    f.s = LaurentPoly(nb);
    f.level = presentation_splitting_type(family);
    if (f.level == kInfinity) {
        f.residual_certified = true;
        return f;
    }
    const ObstructionClass fam = obstruction_cocycle(family, f.level);
    if (!fam.base_components_zero) {
        f.rank_one = false;
        f.violation = "family cocycle has a base-direction component";
        return f;
    }
    const SuperGluingData fib = restrict_fiber(family, std::vector<Q>(nb, Q(1)));
    const SheafPtr fs = obstruction_sheaf(reduce(fib), f.level);
    const std::size_t fr = static_cast<std::size_t>(fs->rank);

    // split the family cocycle by base monomial
    std::map<Exponent, Cochain> pieces;
    for (const auto& [sx, v] : fam.representative.s)
        for (std::size_t i = 0; i < fr; ++i)
            for (const auto& [e, c] : v[i].terms()) {
                const Exponent be(e.begin() + static_cast<long>(nf), e.end());
                auto it = pieces.find(be);
                if (it == pieces.end()) it = pieces.emplace(be, Cochain::zero(fs, 1)).first;
                std::vector<LaurentPoly> w = it->second.at(sx);
                w[i].add_term(Exponent(e.begin(), e.begin() + static_cast<long>(nf)), c);
                it->second.set(sx, std::move(w));
            }
    int support = 0;
    for (const auto& [m, c] : pieces) support = std::max(support, c.max_abs_exponent());
    const int bound = solve_bound(fs, support);

    std::optional<SVec> base_rep;
    Cochain base_cochain;
    Cochain fiber_witness = Cochain::zero(fs, 0);
    f.witness = Cochain::zero(fam.sheaf, 0);
    for (const auto& [m, c] : pieces) {
        const ClassResult r = reduce_class(c, bound);
        // witness contribution t^m * w_m
        Cochain wm = pull_to_family(r.witness, fam.sheaf);
        for (auto& [sx, v] : wm.s)
            for (auto& p : v) {
                LaurentPoly shifted(p.nvars());
                for (const auto& [e, k] : p.terms()) {
                    Exponent ne = e;
                    for (std::size_t i = 0; i < nb; ++i) ne[nf + i] += m[i];
                    shifted.add_term(ne, k);
                }
                p = std::move(shifted);
            }
        f.witness += wm;
        if (r.trivial) continue;
        const SVec v = to_svec(r.residue);
        if (!base_rep) {
            base_rep = v;
            base_cochain = r.residue;
            f.s.add_term(m, 1);
            continue;
        }
        const auto& [key0, val0] = *base_rep->begin();
        auto it = v.find(key0);
        const Q ratio = it == v.end() ? Q(0) : it->second / val0;
        SVec scaled;
        for (const auto& [k, x] : *base_rep) scaled[k] = x * ratio;
        if (ratio == 0 || scaled != v) {
            f.rank_one = false;
            std::ostringstream os;
            os << "residues for base monomials are not proportional (monomial";
            for (int e : m) os << " " << e;
            os << ")";
            f.violation = os.str();
            return f;
        }
        f.s.add_term(m, ratio);
    }
    if (!base_rep) {
        f.residual_certified = true;
        return f;
    }
    f.omega = make_class(f.level, fs, base_cochain);

    // delta(witness) == rep - s * pull(omega)
    Cochain expected = fam.representative;
    Cochain pulled = pull_to_family(base_cochain, fam.sheaf);
    Cochain sp = Cochain::zero(fam.sheaf, 1);
    for (const auto& [sx, v] : pulled.s) {
        std::vector<LaurentPoly> w;
        const std::size_t nv = v.empty() ? 0 : v[0].nvars();
        std::vector<int> slot;
        for (std::size_t i = 0; i < nb; ++i) slot.push_back(static_cast<int>(nf + i));
        const LaurentPoly s_here = f.s.remap(slot, nv);
        for (const auto& p : v) w.push_back(s_here * p);
        sp.set(sx, std::move(w));
    }
    expected -= sp;
    f.residual_certified = cech_delta(f.witness) == expected;
    return f;
}

}  // namespace sg
