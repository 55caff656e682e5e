#pragma once

#include <climits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "supergluing/grassmann.hpp"
#include "supergluing/sheaf.hpp"

namespace sg {

inline constexpr int kInfinity = INT_MAX;

// Coordinates of the target chart expressed in the source chart's context.
struct SuperTransition {
    int source = -1;
    int target = -1;
    std::vector<GrassmannElement> even;  // one per target even coordinate (fiber then base)
    std::vector<GrassmannElement> odd;   // one per target odd generator

    bool operator==(const SuperTransition& o) const {
        return source == o.source && target == o.target && even == o.even && odd == o.odd;
    }
    bool operator!=(const SuperTransition& o) const { return !(*this == o); }
};

SuperTransition identity_transition(const Chart& c, int index);
// Apply a, then b: coordinates of b's target pulled back along a.
SuperTransition compose_transitions(const SuperTransition& a, const SuperTransition& b);
// Needs invertible monomial reduced parts and an invertible odd frame matrix.
SuperTransition invert_transition(const SuperTransition& t, const Chart& source, const Chart& target);

struct SuperGluingData {
    std::string name;
    Cover cover;
    std::map<Pair, SuperTransition> transitions;
    std::optional<int> declared_splitting_type;
    int base_odd = 0;  // leading odd generators that span base directions

    const SuperTransition& transition(int a, int b) const;
    bool is_family() const;
    std::size_t fiber_vars() const;
    std::size_t base_vars() const;
    int odd_rank() const;
};

// Inverts every transition whose reverse is missing.
void complete_inverses(SuperGluingData& g);

struct CocycleReport {
    bool ok = true;
    std::string kind;      // admissibility | family | inverse | triple
    std::string location;  // overlap or triple
    std::string detail;
};

CocycleReport verify_cocycle(const SuperGluingData& g);

// Lowest degree j >= 2 at which some transition deviates from split normal form.
int presentation_splitting_type(const SuperGluingData& g);
// Same, after checking the cocycle laws (InvalidInput when they fail).
int splitting_type(const SuperGluingData& g);

struct ReducedModel {
    AtlasPtr atlas;
    std::map<Pair, LMatrix> zeta;  // degree-one odd frame: eta = zeta theta
    SheafPtr odd_bundle;           // transforms with zeta^{-T}
    SheafPtr cotangent;            // transforms with J^{-T}
};

ReducedModel reduce(const SuperGluingData& g);
// Transforms with the inverse transpose Jacobian.
SheafPtr cotangent_sheaf(const AtlasPtr& atlas);

// Sets the base coordinates to `point` and drops them.
SuperGluingData restrict_fiber(const SuperGluingData& g, const std::vector<Q>& point);
// Base coordinates t -> t + point (the fiber over point moves to t = 0).
SuperGluingData recenter(const SuperGluingData& g, const std::vector<Q>& point);

struct SplittingTriple {
    int embedding = kInfinity;  // j''
    int fiber = kInfinity;      // j_b
    int family = kInfinity;     // j'
    bool lemma_holds() const;
};

SplittingTriple embedding_splitting_triple(const SuperGluingData& g, const std::vector<Q>& point);

using ChartMaps = std::map<int, SuperTransition>;

// g'_{ab} = phi_b^{-1} o g_{ab} o phi_a; charts missing from phi use the identity.
SuperGluingData conjugate(const SuperGluingData& g, const ChartMaps& phi);
// theta -> lambda * theta on one chart; lambda lives in the chart's context.
SuperTransition odd_scaling(const Chart& c, int index, const LaurentPoly& lambda);
// (x | theta) -> (rho+(x | lambda theta) | lambda^{-1} rho-(x | lambda theta)).
SuperGluingData scaling_action(const SuperGluingData& g, const Q& lambda);
SuperGluingData scaling_action(const SuperGluingData& g, const std::vector<LaurentPoly>& lambda_per_chart);

// Appends base coordinates (identity maps) to every chart.
SuperGluingData append_base(const SuperGluingData& g, const std::vector<std::string>& names);

// First transition where two gluings with the same cover differ, or empty.
std::string first_difference(const SuperGluingData& a, const SuperGluingData& b);

std::string transition_to_string(const SuperGluingData& g, const SuperTransition& t, bool fraction_form = false);
std::string splitting_type_string(int j);

}  // namespace sg
