#include "supergluing/cech.hpp"

#include <algorithm>
#include <functional>

#include "supergluing/errors.hpp"

namespace sg {

namespace {

std::size_t chart_nvars(const SheafSpec& s, int chart) {
    return s.cover().charts.at(static_cast<std::size_t>(chart)).nvars();
}

std::vector<LaurentPoly> zero_vec(const SheafSpec& s, int chart) {
    return std::vector<LaurentPoly>(static_cast<std::size_t>(s.rank), LaurentPoly(chart_nvars(s, chart)));
}

bool all_zero(const std::vector<LaurentPoly>& v) {
    return std::all_of(v.begin(), v.end(), [](const LaurentPoly& p) { return p.is_zero(); });
}

void for_each_exponent(const std::vector<std::pair<int, int>>& ranges, const std::function<void(const Exponent&)>& f) {
    Exponent e(ranges.size());
    for (std::size_t i = 0; i < ranges.size(); ++i) {
        if (ranges[i].first > ranges[i].second) return;
        e[i] = ranges[i].first;
    }
    while (true) {
        f(e);
        std::size_t i = 0;
        while (i < e.size()) {
            if (e[i] < ranges[i].second) {
                ++e[i];
                break;
            }
            e[i] = ranges[i].first;
            ++i;
        }
        if (i == e.size()) return;
    }
}

// Exponent ranges allowed on simplex s: negative exponents only where a
// coordinate change inverts the variable.
std::vector<std::pair<int, int>> cone(const SheafSpec& sh, const std::vector<int>& s, int lo, int hi) {
    const auto inv = sh.atlas->invertible_on(s);
    std::vector<std::pair<int, int>> r;
    for (bool b : inv) r.emplace_back(b ? lo : std::max(lo, 0), hi);
    return r;
}

// Monomial basis of degree-p cochains within the bounds.
std::vector<Coord> monomial_basis(const SheafSpec& sh, int p, int lo, int hi) {
    std::vector<Coord> out;
    const auto simp = sh.cover().simplices(p);
    for (std::size_t si = 0; si < simp.size(); ++si) {
        const auto ranges = cone(sh, simp[si], lo, hi);
        for (int comp = 0; comp < sh.rank; ++comp)
            for_each_exponent(ranges, [&](const Exponent& e) {
                out.push_back(Coord::make(static_cast<int>(si), comp, e));
            });
    }
    return out;
}

Cochain unit_cochain(const SheafPtr& sh, int p, const Coord& c) {
    SVec v;
    v.emplace(c, Q(1));
    return from_svec(v, sh, p);
}

}  // namespace

Cochain Cochain::zero(SheafPtr sheaf, int degree) {
    Cochain c;
    c.sheaf = std::move(sheaf);
    c.degree = degree;
    return c;
}

std::vector<LaurentPoly> Cochain::at(const std::vector<int>& simplex) const {
    auto it = s.find(simplex);
    if (it != s.end()) return it->second;
    return zero_vec(*sheaf, simplex.front());
}

void Cochain::set(const std::vector<int>& simplex, std::vector<LaurentPoly> v) {
    if (v.size() != static_cast<std::size_t>(sheaf->rank)) throw ContextError("section rank mismatch");
    if (all_zero(v))
        s.erase(simplex);
    else
        s[simplex] = std::move(v);
}

bool Cochain::is_zero() const {
    return std::all_of(s.begin(), s.end(), [](const auto& kv) { return all_zero(kv.second); });
}

int Cochain::max_abs_exponent() const {
    int m = 0;
    for (const auto& [k, v] : s)
        for (const auto& p : v)
            for (std::size_t i = 0; i < p.nvars(); ++i) m = std::max(m, p.max_abs_exponent(i));
    return m;
}

Cochain& Cochain::operator+=(const Cochain& o) {
    if (o.degree != degree || o.sheaf->rank != sheaf->rank) throw ContextError("cochain shape mismatch");
    for (const auto& [k, v] : o.s) {
        auto cur = at(k);
        for (std::size_t i = 0; i < v.size(); ++i) cur[i] += v[i];
        set(k, std::move(cur));
    }
    return *this;
}

Cochain& Cochain::operator-=(const Cochain& o) {
    Cochain n = o;
    n *= Q(-1);
    return *this += n;
}

Cochain& Cochain::operator*=(const Q& c) {
    if (c == 0) {
        s.clear();
        return *this;
    }
    for (auto& [k, v] : s)
        for (auto& p : v) p *= c;
    return *this;
}

bool Cochain::operator==(const Cochain& o) const {
    if (degree != o.degree || sheaf->rank != o.sheaf->rank) return false;
    Cochain d = *this;
    d -= o;
    return d.is_zero();
}

std::string Cochain::to_string(bool fraction_form) const {
    std::string out;
    if (!sheaf) return "0\n";
    const Cover& cov = sheaf->cover();
    for (const auto& [k, v] : s) {
        if (all_zero(v)) continue;
        const auto names = cov.charts[static_cast<std::size_t>(k.front())].names();
        out += cov.simplex_name(k) + ": [";
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) out += ", ";
            out += v[i].to_string(names, fraction_form);
        }
        out += "]\n";
    }
    return out.empty() ? "0\n" : out;
}

Cochain cech_delta(const Cochain& c) {
    const SheafSpec& sh = *c.sheaf;
    Cochain r = Cochain::zero(c.sheaf, c.degree + 1);
    for (const auto& tau : sh.cover().simplices(c.degree + 1)) {
        auto acc = zero_vec(sh, tau.front());
        bool any = false;
        for (std::size_t k = 0; k < tau.size(); ++k) {
            std::vector<int> face = tau;
            face.erase(face.begin() + static_cast<long>(k));
            auto it = c.s.find(face);
            if (it == c.s.end()) continue;
            any = true;
            std::vector<LaurentPoly> v = k == 0 ? sh.transport(it->second, tau[0], tau[1]) : it->second;
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (k % 2)
                    acc[i] -= v[i];
                else
                    acc[i] += v[i];
            }
        }
        if (any) r.set(tau, std::move(acc));
    }
    return r;
}

Cochain cup_product(const Cochain& u, const Cochain& v, SheafPtr target) {
    if (u.sheaf->atlas != v.sheaf->atlas && u.sheaf->atlas->maps != v.sheaf->atlas->maps)
        throw ContextError("cup product of cochains on different covers");
    if (!target) target = sheaf_tensor(u.sheaf, v.sheaf);
    const int q = u.degree, p = v.degree;
    const auto rb = static_cast<std::size_t>(v.sheaf->rank);
    Cochain r = Cochain::zero(target, p + q);
    for (const auto& tau : target->cover().simplices(p + q)) {
        std::vector<int> front(tau.begin(), tau.begin() + q + 1), back(tau.begin() + q, tau.end());
        auto iu = u.s.find(front);
        auto iv = v.s.find(back);
        if (iu == u.s.end() || iv == v.s.end()) continue;
        const auto tv = v.sheaf->transport(iv->second, tau.front(), tau[static_cast<std::size_t>(q)]);
        std::vector<LaurentPoly> out(iu->second.size() * rb, LaurentPoly(chart_nvars(*target, tau.front())));
        for (std::size_t a = 0; a < iu->second.size(); ++a)
            for (std::size_t b = 0; b < rb; ++b) out[a * rb + b] = iu->second[a] * tv[b];
        r.set(tau, std::move(out));
    }
    return r;
}

Cochain apply_map(const QMatrix& m, const Cochain& c, SheafPtr target) {
    if (m.cols() != static_cast<std::size_t>(c.sheaf->rank) || m.rows() != static_cast<std::size_t>(target->rank))
        throw ContextError("constant map has the wrong shape");
    Cochain r = Cochain::zero(target, c.degree);
    for (const auto& [k, v] : c.s) {
        std::vector<LaurentPoly> out(m.rows(), LaurentPoly(chart_nvars(*target, k.front())));
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j)
                if (m(i, j) != 0) out[i] += v[j] * m(i, j);
        r.set(k, std::move(out));
    }
    return r;
}

Cochain reinterpret(const Cochain& c, SheafPtr target) {
    if (target->rank != c.sheaf->rank) throw ContextError("reinterpretation needs equal ranks");
    Cochain r = c;
    r.sheaf = std::move(target);
    return r;
}

SVec to_svec(const Cochain& c) {
    SVec out;
    const auto simp = c.sheaf->cover().simplices(c.degree);
    for (const auto& [k, v] : c.s) {
        auto it = std::find(simp.begin(), simp.end(), k);
        if (it == simp.end()) throw ContextError("cochain entry on an undeclared simplex");
        const int si = static_cast<int>(it - simp.begin());
        for (std::size_t comp = 0; comp < v.size(); ++comp)
            for (const auto& [e, q] : v[comp].terms()) out.emplace(Coord::make(si, static_cast<int>(comp), e), q);
    }
    return out;
}

Cochain from_svec(const SVec& v, const SheafPtr& sheaf, int degree) {
    const auto simp = sheaf->cover().simplices(degree);
    std::map<std::vector<int>, std::vector<LaurentPoly>> raw;
    for (const auto& [c, q] : v) {
        const auto& s = simp.at(static_cast<std::size_t>(c.simplex));
        auto it = raw.find(s);
        if (it == raw.end()) it = raw.emplace(s, zero_vec(*sheaf, s.front())).first;
        it->second[static_cast<std::size_t>(c.comp)].add_term(c.e, q);
    }
    Cochain r = Cochain::zero(sheaf, degree);
    for (auto& [k, vec] : raw) r.set(k, std::move(vec));
    return r;
}

int solve_bound(const SheafPtr& sheaf, int support) {
    const int p = std::max(sheaf->max_abs_exponent(), sheaf->atlas->max_abs_exponent());
    return support + 2 * p + 1;
}

bool is_cocycle(const Cochain& c) { return cech_delta(c).is_zero(); }

ClassResult reduce_class(const Cochain& c, std::optional<int> bound) {
    if (c.degree < 1) throw InvalidInput("coboundary test needs degree >= 1");
    if (!is_cocycle(c)) throw InvalidInput("cochain is not a cocycle");
    const int w = bound ? *bound : solve_bound(c.sheaf, c.max_abs_exponent());
    const auto unknowns = monomial_basis(*c.sheaf, c.degree - 1, -w, w);
    Echelon ech;
    for (std::size_t i = 0; i < unknowns.size(); ++i) {
        SVec img = to_svec(cech_delta(unit_cochain(c.sheaf, c.degree - 1, unknowns[i])));
        if (img.empty()) continue;
        ech.insert(std::move(img), Combo{{static_cast<int>(i), Q(1)}});
    }
    Combo used;
    SVec res = ech.reduce(to_svec(c), &used);
    ClassResult r;
    r.trivial = res.empty();
    r.residue = from_svec(res, c.sheaf, c.degree);
    SVec wit;
    for (const auto& [id, q] : used) wit.emplace(unknowns[static_cast<std::size_t>(id)], q);
    r.witness = from_svec(wit, c.sheaf, c.degree - 1);
    return r;
}

Window auto_window(const SheafPtr& sheaf) {
    const Atlas& at = *sheaf->atlas;
    for (std::size_t a = 0; a < at.cover.charts.size(); ++a)
        for (std::size_t v = 0; v < at.cover.charts[a].nvars(); ++v) {
            bool inv = false;
            for (const auto& [x, y] : at.cover.overlaps())
                if (x == static_cast<int>(a))
                    for (const auto& p : at.map(x, y)) inv = inv || p.min_exponent(v) < 0;
            if (!inv)
                throw NeedsWindow("variable '" + at.cover.charts[a].names()[v] + "' of chart " + at.cover.charts[a].name +
                                  " is never inverted; give an explicit window");
        }
    const int p = std::max(sheaf->max_abs_exponent(), at.max_abs_exponent());
    return {-(p + 1), p + 1};
}

std::vector<Cochain> cohomology_basis(const SheafPtr& sheaf, int p, std::optional<Window> window) {
    if (p != 0 && p != 1) throw InvalidInput("cohomology is supported in degrees 0 and 1");
    const Window w = window ? *window : auto_window(sheaf);
    std::vector<SVec> cands;
    const auto basis = monomial_basis(*sheaf, p, w.lo, w.hi);
    {
        Echelon ker;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            SVec img = to_svec(cech_delta(unit_cochain(sheaf, p, basis[i])));
            Combo rel;
            if (!ker.insert(std::move(img), Combo{{static_cast<int>(i), Q(1)}}, &rel)) {
                SVec z;
                for (const auto& [id, q] : rel) z.emplace(basis[static_cast<std::size_t>(id)], q);
                cands.push_back(std::move(z));
            }
        }
    }
    Echelon bnd;
    if (p == 1) {
        const int wb = solve_bound(sheaf, std::max(std::abs(w.lo), std::abs(w.hi)));
        for (const auto& c : monomial_basis(*sheaf, 0, -wb, wb)) {
            SVec img = to_svec(cech_delta(unit_cochain(sheaf, 0, c)));
            if (!img.empty()) bnd.insert(std::move(img), {});
        }
    }
    Echelon span;
    for (auto& z : cands) span.insert(bnd.reduce(std::move(z)), {});
    auto rows = span.reduced_basis();
    std::reverse(rows.begin(), rows.end());
    std::vector<Cochain> out;
    for (const auto& r : rows) out.push_back(from_svec(r, sheaf, p));
    return out;
}

void verify_ses(const ShortExactSequence& ses) {
    const auto rs = static_cast<std::size_t>(ses.sub->rank), rm = static_cast<std::size_t>(ses.mid->rank),
               rq = static_cast<std::size_t>(ses.quot->rank);
    if (rs + rq != rm) throw InvalidInput("short exact sequence ranks do not add up");
    if (!(ses.proj * ses.incl).is_zero()) throw InvalidInput("projection does not kill the subsheaf");
    if (ses.retract * ses.incl != QMatrix::identity(rs)) throw InvalidInput("retraction is not a left inverse");
    if (ses.proj * ses.lift != QMatrix::identity(rq)) throw InvalidInput("lift is not a right inverse");
    if (ses.incl * ses.retract + ses.lift * ses.proj != QMatrix::identity(rm))
        throw InvalidInput("lift and retraction do not split the sequence");
    const Cover& cov = ses.mid->cover();
    for (const auto& [a, b] : cov.overlaps()) {
        const std::size_t n = cov.charts[static_cast<std::size_t>(a)].nvars();
        const LMatrix& m = ses.mid->matrix(a, b);
        if (m * LMatrix::from_q(ses.incl, n) != LMatrix::from_q(ses.incl, n) * ses.sub->matrix(a, b))
            throw InvalidInput("inclusion is not a sheaf map on " + cov.simplex_name({a, b}));
        if (LMatrix::from_q(ses.proj, n) * m != ses.quot->matrix(a, b) * LMatrix::from_q(ses.proj, n))
            throw InvalidInput("projection is not a sheaf map on " + cov.simplex_name({a, b}));
    }
}

ShortExactSequence hom_twist(const SheafPtr& t, const ShortExactSequence& ses) {
    const QMatrix id = QMatrix::identity(static_cast<std::size_t>(t->rank));
    ShortExactSequence r;
    r.sub = sheaf_hom(t, ses.sub);
    r.mid = sheaf_hom(t, ses.mid);
    r.quot = sheaf_hom(t, ses.quot);
    r.incl = kron(id, ses.incl);
    r.proj = kron(id, ses.proj);
    r.lift = kron(id, ses.lift);
    r.retract = kron(id, ses.retract);
    return r;
}

Cochain connecting_map(const ShortExactSequence& ses, const Cochain& c) {
    const Cochain d = cech_delta(apply_map(ses.lift, c, ses.mid));
    if (!apply_map(ses.proj, d, ses.quot).is_zero())
        throw InvalidInput("connecting map input is not a cocycle of the quotient");
    return apply_map(ses.retract, d, ses.sub);
}

}  // namespace sg
