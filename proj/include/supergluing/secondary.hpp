#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "supergluing/cech.hpp"
#include "supergluing/model_file.hpp"
#include "supergluing/obstruction.hpp"

namespace sg {

// Product model over a superspace base with point reduced space: the odd
// cotangent bundle is an extension 0 -> tb -> total -> tx -> 0 with tb
// trivial of rank base_rank, classified by theta.
struct GtModel {
    AtlasPtr atlas;
    SheafPtr tx, tb, total, cotangent;
    SheafPtr theta_sheaf;  // hom(tx, tb), index q * base_rank + s
    Cochain theta;
    int base_rank = 0;
    std::map<int, FilteredSheaf> filtrations;  // wedge^J total, J = 1..rank

    int rank() const { return total->rank; }
    int fiber_rank() const { return tx->rank; }
    // Source of the hom: cotangent for even J, total for odd J.
    SheafPtr source(int J) const { return J % 2 == 0 ? cotangent : total; }
    // hom(source(a+b), F_b/F_{b+1}); nullptr when a+b exceeds the rank.
    SheafPtr space_sheaf(int a, int b) const;

private:
    friend GtModel make_gt_model(const SheafPtr&, int, const RawCochain&);
    std::map<std::pair<int, int>, SheafPtr> spaces_;
};

GtModel make_gt_model(const SheafPtr& tx, int base_rank, const RawCochain& theta);
GtModel gt_model_from_file(const ModelFile& m);

struct ModelClass {
    ClassResult cls;
    Cochain connecting;       // connecting map of the identity of hom(tx, tx)
    bool cross_check = false; // connecting - theta is a coboundary
};

ModelClass model_class(const GtModel& m);

struct SecondarySpace {
    int a = 0, b = 0, p = 0;
    SheafPtr spec;            // nullptr for the zero space
    std::vector<Cochain> basis;
    bool zero_by_rank = false;
};

SecondarySpace secondary_space(const GtModel& m, int a, int b, int p, std::optional<Window> window = {});

struct SecondaryImage {
    int a = 0, b = 0, p = 0;  // target indices
    SheafPtr spec;            // nullptr when the target space is zero
    Cochain representative;
    ClassResult cls;
    bool decided = true;
    std::string certificate;  // why a zero answer is zero, when structural

    bool is_zero() const { return !spec || cls.trivial; }
};

SecondaryImage secondary_differential(const GtModel& m, int a, int b, int p, const Cochain& nu);

// wedge^a -> T (x) wedge^(a-1) on lexicographic bases: theta_L maps to
// (1/a!) sum_l sign theta_l (x) theta_{L - l}. Row index l * C(m, a-1) + K.
QMatrix contraction_map(int m, int a);

SecondaryImage model_class_map(const GtModel& m, int a, int b, int p, const Cochain& nu);
// Independent path: the derivation sum Theta_{s,i} theta_s d/d theta_{X_i}
// applied to the transported components of nu, projected to the next quotient.
SecondaryImage tau_theta(const GtModel& m, int a, int b, int p, const Cochain& nu);
// Cup with the unit section: nu' = 1 cup nu.
Cochain unit_cup(const Cochain& nu);

struct A1Entry {
    Cochain nu, nu_prime;
    SecondaryImage model_map, tau, differential;
    bool equal = false;
};

struct A1Report {
    int b = 0;
    bool decided = true;
    bool ok = true;
    std::string status;
    std::vector<A1Entry> entries;
};

A1Report verify_a1_containment(const GtModel& m, int b, std::optional<Window> window = {});

// Index subset of a sheaf's coordinates forming a quotient (the remaining
// coordinates span a subsheaf); throws InvalidInput otherwise.
SheafPtr quotient_by_selection(const SheafPtr& s, const std::vector<std::size_t>& keep);

// Gluing with the leading base_odd generators set to zero and dropped.
SuperGluingData underlying_gluing(const SuperGluingData& g);

struct Compatibility {
    bool ok = false;
    bool same_spec = false;
    std::string detail;
    Cochain underlying;  // canonical class of the underlying family
    Cochain projected;   // canonical class of the total projected to F_0/F_1
};

// Compares the underlying family's class with the F_0/F_1 component of the
// total space's class.
Compatibility compatibility_check(const SuperGluingData& g);

struct RefinedType {
    int level = kInfinity;
    int a = 0, b = 0;  // largest b with the class lifting to F_b
};

RefinedType refined_splitting_type(const SuperGluingData& g);

}  // namespace sg
