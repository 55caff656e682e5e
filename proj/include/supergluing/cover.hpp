#pragma once

#include <array>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "supergluing/matrix.hpp"

namespace sg {

struct Chart {
    std::string name;
    std::vector<std::string> fiber;  // fiber even coordinates
    std::vector<std::string> base;   // base even coordinates, appended after the fiber ones
    int odd_rank = 0;

    std::size_t nvars() const { return fiber.size() + base.size(); }
    std::vector<std::string> names() const;
};

using Pair = std::pair<int, int>;

class Cover {
public:
    std::vector<Chart> charts;

    int index(const std::string& name) const;  // -1 when absent
    void add_overlap(int a, int b);            // registers both directions
    void add_triple(int a, int b, int c);      // stored sorted; pairwise overlaps must exist
    bool has_overlap(int a, int b) const { return overlaps_.count({a, b}) > 0; }
    const std::set<Pair>& overlaps() const { return overlaps_; }
    const std::vector<std::array<int, 3>>& triples() const { return triples_; }

    // Increasing index tuples: p = 0 charts, p = 1 overlaps, p = 2 triples.
    std::vector<std::vector<int>> simplices(int p) const;
    std::string simplex_name(const std::vector<int>& s) const;

private:
    std::set<Pair> overlaps_;
    std::vector<std::array<int, 3>> triples_;
};

// Reduced space: cover plus even coordinate changes. maps[(a,b)][k] expresses
// coordinate k of chart b in the coordinates of chart a.
struct Atlas {
    Cover cover;
    std::map<Pair, std::vector<LaurentPoly>> maps;

    const std::vector<LaurentPoly>& map(int a, int b) const;
    std::vector<LaurentPoly> identity(int a) const;
    // Function in b coordinates -> same function in a coordinates.
    LaurentPoly pull(const LaurentPoly& p, int a, int b) const;
    LMatrix pull(const LMatrix& m, int a, int b) const;
    std::vector<LaurentPoly> pull(const std::vector<LaurentPoly>& v, int a, int b) const;

    // Inverse law on every overlap and composition law on every triple; throws
    // InvalidInput naming the failing overlap or triple.
    void verify() const;
    int max_abs_exponent() const;
    // Variables of chart s[0] that may carry negative exponents on the simplex s.
    std::vector<bool> invertible_on(const std::vector<int>& s) const;
};

using AtlasPtr = std::shared_ptr<const Atlas>;

}  // namespace sg
