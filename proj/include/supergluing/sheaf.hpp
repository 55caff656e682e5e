#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "supergluing/cover.hpp"

namespace sg {

struct SheafSpec;
using SheafPtr = std::shared_ptr<const SheafSpec>;

// Section data of a hom(quot, sub)-valued 1-cocycle, keyed by overlap (a<b),
// entries at index q * rank(sub) + s.
using RawCochain = std::map<std::vector<int>, std::vector<LaurentPoly>>;

struct ExtensionInfo {
    SheafPtr sub;
    SheafPtr quot;
    RawCochain cocycle;
};

// Locally free sheaf: components transform as s_b = M_{ab} s_a, with M_{ab}
// written in the coordinates of chart a.
struct SheafSpec {
    AtlasPtr atlas;
    int rank = 0;
    std::map<Pair, LMatrix> matrices;
    std::vector<std::string> labels;
    std::shared_ptr<const ExtensionInfo> extension;

    const LMatrix& matrix(int a, int b) const;
    // Transport a section given in the frame/coordinates of chart b to chart a.
    std::vector<LaurentPoly> transport(const std::vector<LaurentPoly>& v, int a, int b) const;
    int max_abs_exponent() const;
    const Cover& cover() const { return atlas->cover; }
};

// Validates the inverse law on overlaps and the composition law on triples.
void verify_sheaf(const SheafSpec& s);

// matrices may list one direction per overlap; missing ones are inverted.
SheafPtr make_sheaf(AtlasPtr atlas, int rank, std::map<Pair, LMatrix> matrices, std::vector<std::string> labels = {});
SheafPtr trivial_sheaf(AtlasPtr atlas, int rank);

SheafPtr sheaf_dual(const SheafPtr& a);
SheafPtr sheaf_tensor(const SheafPtr& a, const SheafPtr& b);
SheafPtr sheaf_hom(const SheafPtr& a, const SheafPtr& b);  // dual(a) (x) b, index i * rank(b) + k
SheafPtr sheaf_exterior_power(const SheafPtr& a, int k);  // lexicographic subset basis
SheafPtr sheaf_direct_sum(const SheafPtr& a, const SheafPtr& b);

// k-subsets of [0, n) in lexicographic order.
std::vector<std::vector<int>> subsets(int n, int k);

// Block matrix [[M_sub, -M_sub c], [0, M_quot]]; the sign makes the connecting
// map send the identity of hom(quot, quot) to +c.
SheafPtr extension_sheaf(const SheafPtr& sub, const SheafPtr& quot, const RawCochain& cocycle);

struct FilteredSheaf {
    SheafPtr source;                           // the extension itself
    SheafPtr ambient;                          // wedge^j of the extension
    int j = 0;
    int sub_rank = 0;
    std::vector<std::vector<int>> basis;       // ambient basis subsets
    std::vector<std::vector<std::size_t>> piece_index;     // F_k: ambient indices with >= k sub factors
    std::vector<std::vector<std::size_t>> quotient_index;  // F_k/F_{k+1}: exactly k sub factors
    std::vector<SheafPtr> pieces;
    std::vector<SheafPtr> quotients;

    // Constant coordinate maps between ambient and pieces.
    QMatrix inclusion(int k) const;   // F_k -> ambient
    QMatrix piece_map(int k_from, int k_to) const;  // F_{k_from} -> F_{k_to}, selecting shared coordinates
    QMatrix projection(int k) const;  // F_k -> F_k/F_{k+1}
    QMatrix lift(int k) const;        // F_k/F_{k+1} -> F_k
};

FilteredSheaf filtration(const SheafPtr& ext, int j);

// Entrywise checks: block triangularity, and quotient matrices equal
// kron(wedge^k sub, wedge^(j-k) quot). Returns an empty string on success.
std::string check_filtration(const FilteredSheaf& f);

}  // namespace sg
