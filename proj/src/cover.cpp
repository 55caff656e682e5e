#include "supergluing/cover.hpp"

#include <algorithm>

#include "supergluing/errors.hpp"

namespace sg {

std::vector<std::string> Chart::names() const {
    std::vector<std::string> r = fiber;
    r.insert(r.end(), base.begin(), base.end());
    return r;
}

int Cover::index(const std::string& name) const {
    for (std::size_t i = 0; i < charts.size(); ++i)
        if (charts[i].name == name) return static_cast<int>(i);
    return -1;
}

void Cover::add_overlap(int a, int b) {
    if (a == b) throw InvalidInput("overlap of a chart with itself");
    overlaps_.insert({a, b});
    overlaps_.insert({b, a});
}

void Cover::add_triple(int a, int b, int c) {
    std::array<int, 3> t{a, b, c};
    std::sort(t.begin(), t.end());
    if (t[0] == t[1] || t[1] == t[2]) throw InvalidInput("triple with repeated chart");
    if (!has_overlap(t[0], t[1]) || !has_overlap(t[1], t[2]) || !has_overlap(t[0], t[2]))
        throw InvalidInput("triple " + simplex_name({t[0], t[1], t[2]}) + " lacks a pairwise overlap");
    if (std::find(triples_.begin(), triples_.end(), t) == triples_.end()) triples_.push_back(t);
    std::sort(triples_.begin(), triples_.end());
}

std::vector<std::vector<int>> Cover::simplices(int p) const {
    std::vector<std::vector<int>> r;
    if (p == 0)
        for (std::size_t i = 0; i < charts.size(); ++i) r.push_back({static_cast<int>(i)});
    else if (p == 1) {
        for (const auto& [a, b] : overlaps_)
            if (a < b) r.push_back({a, b});
    } else if (p == 2)
        for (const auto& t : triples_) r.push_back({t[0], t[1], t[2]});
    return r;
}

std::string Cover::simplex_name(const std::vector<int>& s) const {
    std::string r = "(";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) r += ",";
        r += charts.at(static_cast<std::size_t>(s[i])).name;
    }
    return r + ")";
}

const std::vector<LaurentPoly>& Atlas::map(int a, int b) const {
    auto it = maps.find({a, b});
    if (it == maps.end()) throw ContextError("no coordinate change for " + cover.simplex_name({a, b}));
    return it->second;
}

std::vector<LaurentPoly> Atlas::identity(int a) const {
    const std::size_t n = cover.charts.at(static_cast<std::size_t>(a)).nvars();
    std::vector<LaurentPoly> r;
    for (std::size_t i = 0; i < n; ++i) r.push_back(LaurentPoly::variable(n, i));
    return r;
}

LaurentPoly Atlas::pull(const LaurentPoly& p, int a, int b) const {
    if (a == b) return p;
    return p.substitute(map(a, b));
}

LMatrix Atlas::pull(const LMatrix& m, int a, int b) const {
    if (a == b) return m;
    return m.substitute(map(a, b));
}

std::vector<LaurentPoly> Atlas::pull(const std::vector<LaurentPoly>& v, int a, int b) const {
    std::vector<LaurentPoly> r;
    r.reserve(v.size());
    for (const auto& p : v) r.push_back(pull(p, a, b));
    return r;
}

void Atlas::verify() const {
    for (const auto& [a, b] : cover.overlaps()) {
        std::vector<LaurentPoly> back;
        for (const auto& p : map(b, a)) back.push_back(p.substitute(map(a, b)));
        if (back != identity(a)) throw InvalidInput("coordinate changes on " + cover.simplex_name({a, b}) + " are not inverse");
    }
    for (const auto& t : cover.triples()) {
        std::vector<LaurentPoly> via;
        for (const auto& p : map(t[1], t[2])) via.push_back(p.substitute(map(t[0], t[1])));
        if (via != map(t[0], t[2]))
            throw InvalidInput("coordinate changes violate the cocycle law on " + cover.simplex_name({t[0], t[1], t[2]}));
    }
}

int Atlas::max_abs_exponent() const {
    int m = 0;
    for (const auto& [k, v] : maps)
        for (const auto& p : v)
            for (std::size_t i = 0; i < p.nvars(); ++i) m = std::max(m, p.max_abs_exponent(i));
    return m;
}

std::vector<bool> Atlas::invertible_on(const std::vector<int>& s) const {
    const std::size_t n = cover.charts.at(static_cast<std::size_t>(s.front())).nvars();
    std::vector<bool> r(n, false);
    for (std::size_t k = 1; k < s.size(); ++k)
        for (const auto& p : map(s.front(), s[k]))
            for (std::size_t v = 0; v < n; ++v)
                if (p.min_exponent(v) < 0) r[v] = true;
    return r;
}

}  // namespace sg
