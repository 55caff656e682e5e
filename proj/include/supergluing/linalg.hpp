#pragma once

#include <map>
#include <vector>

#include "supergluing/laurent.hpp"

namespace sg {

// Coordinate of a cochain coefficient: simplex, component, monomial.
struct Coord {
    int maxabs = 0;
    int sumabs = 0;
    int simplex = 0;
    int comp = 0;
    Exponent e;

    static Coord make(int simplex, int comp, const Exponent& e);
    bool operator==(const Coord&) const = default;
};

// Far-out monomials come first so that normal forms sit near the origin.
struct CoordOrder {
    bool operator()(const Coord& a, const Coord& b) const;
};

using SVec = std::map<Coord, Q, CoordOrder>;
using Combo = std::map<int, Q>;

void axpy(SVec& y, const Q& a, const SVec& x);
void axpy(Combo& y, const Q& a, const Combo& x);

// Incremental row echelon form over Q with provenance tracking.
class Echelon {
public:
    // Adds v (tagged with the generator combination `tag`). Returns false when
    // v is dependent; then *relation (if given) receives a kernel combination.
    bool insert(SVec v, Combo tag, Combo* relation = nullptr);
    // Normal form of v; *used accumulates the combination removed, so that
    // v = residue + sum(used[g] * generator g).
    SVec reduce(SVec v, Combo* used = nullptr) const;
    std::size_t rank() const { return rows_.size(); }
    // Fully reduced basis of the row space, in pivot order.
    std::vector<SVec> reduced_basis() const;

private:
    std::map<Coord, std::pair<SVec, Combo>, CoordOrder> rows_;
};

}  // namespace sg
