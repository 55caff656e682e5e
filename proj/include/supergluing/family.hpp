#pragma once

#include <string>
#include <vector>

#include "supergluing/gluing.hpp"
#include "supergluing/model_file.hpp"

namespace sg {

// Drops every deviation: reduced even maps and degree-one odd maps.
SuperGluingData split_model(const SuperGluingData& g);

SuperGluingData split_family(const SuperGluingData& g, const std::vector<std::string>& base = {"t"});

// scaling_action(g, t) with t adjoined as a base coordinate; a split input
// yields split_family.
SuperGluingData rothstein_family(const SuperGluingData& g, const std::string& base = "t");

struct ConjugationCheck {
    bool ok = false;
    std::string location;  // first differing overlap, empty when ok
};

struct IsotrivialityWitness {
    Q lambda;          // t1 / t0
    ChartMaps maps;    // theta -> lambda theta on every chart
    ConjugationCheck check;
};

// Conjugates the fiber over t0 by lambda-scaling and compares with the fiber over t1.
IsotrivialityWitness isotriviality_witness(const SuperGluingData& family, const Q& t0, const Q& t1);

struct GluedFamily {
    std::vector<SuperGluingData> pieces;  // family over each base chart
    Atlas base;                           // base charts carry their coordinate as the only variable
    int from = 0, to = 1;                 // witness direction between pieces
    LaurentPoly scale;                    // witness: scale-star, in the `from` base coordinate
};

// Two Rothstein families over the standard charts of the projective line
// with witness t^-2.
GluedFamily glue_over_p1(const SuperGluingData& g);

// Conjugating piece `from` by the scale witness matches piece `to` after
// the base change, as Laurent identities.
ConjugationCheck verify_glued(const GluedFamily& f);

GluedFamily glued_from_model(const ModelFile& m);
std::string write_glued(const GluedFamily& f);

}  // namespace sg
