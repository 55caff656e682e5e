#pragma once

#include <optional>
#include <string>
#include <vector>

#include "supergluing/cech.hpp"
#include "supergluing/gluing.hpp"

namespace sg {

// hom(A, wedge^j odd bundle) with A the reduced cotangent sheaf for even j
// and the odd bundle for odd j. Index l * C(q, j) + (position of I among the
// lexicographic j-subsets).
SheafPtr obstruction_sheaf(const ReducedModel& m, int j);

struct ObstructionClass {
    int level = 0;
    bool even = true;              // target of hom: cotangent (even) or odd bundle (odd)
    SheafPtr sheaf;
    Cochain representative;        // extracted cocycle
    ClassResult reduced;           // witness and canonical residue
    bool base_components_zero = true;  // never targets a base tangent direction

    bool trivial() const { return reduced.trivial; }
    const Cochain& canonical() const { return reduced.residue; }
};

// Degree-j deviation of the transitions as a hom-valued 1-cocycle. Throws
// LevelError when the presentation already deviates below level j.
ObstructionClass obstruction_cocycle(const SuperGluingData& g, int j, std::optional<int> bound = {});
ObstructionClass make_class(int level, SheafPtr sheaf, Cochain representative, std::optional<int> bound = {});

// Multiplies by lambda^j (j even) or lambda^(j-1) (j odd).
ObstructionClass scale_class(const ObstructionClass& w, const Q& lambda);
Q scale_factor(int level, const Q& lambda);

struct SplitAttempt {
    bool split = false;
    ChartMaps witness;              // conjugate(g, witness) is in split normal form
    SuperGluingData result;
    std::vector<int> cleared_levels;
    std::vector<int> adjusted_levels;  // lower levels re-chosen by a global section
    std::optional<ObstructionClass> fatal;  // first non-removable class
    std::string to_string() const;
};

SplitAttempt attempt_split(const SuperGluingData& g);

// Chartwise coordinate change from a 0-cochain of the level-j obstruction
// sheaf: x_l -> x_l + sum_I b^{l,I} theta_I (j even), theta_l -> ... (j odd).
ChartMaps coordinate_change(const SuperGluingData& g, const Cochain& b, int j);

// Family class with base coordinates free, embedded fiber pieces.
struct SplittingTypeDifferential {
    SuperGluingData family;
    int level = kInfinity;
    std::optional<ObstructionClass> family_class;

    // Fiber components of the family cocycle at a base point, in the fiber's
    // obstruction sheaf (zero cochain when the level is infinite).
    Cochain evaluate(const std::vector<Q>& point) const;
};

SplittingTypeDifferential splitting_type_differential(const SuperGluingData& family);

// Fiber cochain pulled back to the family: fiber variables keep their slots,
// base variables are appended, hom components land at the same fiber index.
Cochain pull_to_family(const Cochain& fiber, const SheafPtr& family_sheaf);

struct CharacteristicFactorization {
    int level = kInfinity;
    LaurentPoly s;                         // in the base coordinates
    std::optional<ObstructionClass> omega; // undefined for split families
    bool rank_one = true;
    std::string violation;
    bool residual_certified = false;       // delta(witness) = family rep - s * pull(omega)
    Cochain witness;
    std::vector<std::string> base_names;
};

CharacteristicFactorization characteristic_factorization(const SuperGluingData& family);

}  // namespace sg
