#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "supergluing/gluing.hpp"

namespace sg {

struct GtModelDecl {
    std::string fiber;  // sheaf name of the fiber odd cotangent bundle
    int base_rank = 0;
    RawCochain theta;   // hom(fiber, trivial^base_rank), index q * base_rank + s
    int line = 0;
};

struct BaseAtlasDecl {
    Atlas atlas;  // charts carry the base coordinate as their only coordinate
};

struct WitnessDecl {
    std::string from, to;
    LaurentPoly scale;  // in the `from` base chart coordinate
    int line = 0;
};

struct ModelFile {
    std::vector<SuperGluingData> gluings;
    AtlasPtr atlas;
    std::map<std::string, SheafPtr> sheaves;
    std::vector<std::string> sheaf_order;
    std::optional<GtModelDecl> gt_model;
    std::optional<BaseAtlasDecl> base_atlas;
    std::vector<WitnessDecl> witnesses;
};

ModelFile parse_model(const std::string& text);
ModelFile load_model(const std::string& path);

std::string write_gluing(const SuperGluingData& g);

}  // namespace sg
