#include "supergluing/linalg.hpp"

#include <algorithm>
#include <cstdlib>

namespace sg {

Coord Coord::make(int simplex, int comp, const Exponent& e) {
    Coord c;
    c.simplex = simplex;
    c.comp = comp;
    c.e = e;
    for (int v : e) {
        c.maxabs = std::max(c.maxabs, std::abs(v));
        c.sumabs += std::abs(v);
    }
    return c;
}

bool CoordOrder::operator()(const Coord& a, const Coord& b) const {
    if (a.maxabs != b.maxabs) return a.maxabs > b.maxabs;
    if (a.sumabs != b.sumabs) return a.sumabs > b.sumabs;
    if (a.simplex != b.simplex) return a.simplex < b.simplex;
    if (a.comp != b.comp) return a.comp < b.comp;
    return a.e < b.e;
}

void axpy(SVec& y, const Q& a, const SVec& x) {
    if (a == 0) return;
    for (const auto& [k, v] : x) {
        auto [it, ins] = y.emplace(k, a * v);
        if (!ins) {
            it->second += a * v;
            if (it->second == 0) y.erase(it);
        }
    }
}

void axpy(Combo& y, const Q& a, const Combo& x) {
    if (a == 0) return;
    for (const auto& [k, v] : x) {
        auto [it, ins] = y.emplace(k, a * v);
        if (!ins) {
            it->second += a * v;
            if (it->second == 0) y.erase(it);
        }
    }
}

SVec Echelon::reduce(SVec v, Combo* used) const {
    auto it = v.begin();
    while (it != v.end()) {
        auto r = rows_.find(it->first);
        if (r == rows_.end()) {
            ++it;
            continue;
        }
        const Q f = it->second;  // pivots are normalized to 1
        const Coord key = it->first;
        axpy(v, -f, r->second.first);
        if (used) axpy(*used, f, r->second.second);
        it = v.upper_bound(key);
    }
    return v;
}

bool Echelon::insert(SVec v, Combo tag, Combo* relation) {
    Combo used;
    SVec res = reduce(std::move(v), &used);
    axpy(tag, Q(-1), used);
    if (res.empty()) {
        if (relation) *relation = std::move(tag);
        return false;
    }
    const Q inv = Q(1) / res.begin()->second;
    for (auto& [k, c] : res) c *= inv;
    for (auto& [k, c] : tag) c *= inv;
    const Coord key = res.begin()->first;
    rows_.emplace(key, std::make_pair(std::move(res), std::move(tag)));
    return true;
}

std::vector<SVec> Echelon::reduced_basis() const {
    std::vector<SVec> out;
    for (const auto& [key, row] : rows_) {
        SVec tail = row.first;
        tail.erase(key);
        SVec r = reduce(std::move(tail));
        r.emplace(key, Q(1));
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace sg
