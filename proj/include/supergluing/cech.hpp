#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "supergluing/linalg.hpp"
#include "supergluing/sheaf.hpp"

namespace sg {

// Sections on increasing simplices, each written in the frame and
// coordinates of the simplex's first chart. Absent entries are zero.
struct Cochain {
    SheafPtr sheaf;
    int degree = 0;
    std::map<std::vector<int>, std::vector<LaurentPoly>> s;

    static Cochain zero(SheafPtr sheaf, int degree);
    std::vector<LaurentPoly> at(const std::vector<int>& simplex) const;
    void set(const std::vector<int>& simplex, std::vector<LaurentPoly> v);
    bool is_zero() const;
    int max_abs_exponent() const;

    Cochain& operator+=(const Cochain& o);
    Cochain& operator-=(const Cochain& o);
    Cochain& operator*=(const Q& c);
    friend Cochain operator+(Cochain a, const Cochain& b) { return a += b; }
    friend Cochain operator-(Cochain a, const Cochain& b) { return a -= b; }
    friend Cochain operator*(const Q& c, Cochain a) { return a *= c; }
    bool operator==(const Cochain& o) const;
    bool operator!=(const Cochain& o) const { return !(*this == o); }

    std::string to_string(bool fraction_form = false) const;
};

Cochain cech_delta(const Cochain& c);
// (u cup v)_{i0..i(q+p)} = u_{i0..iq} (x) T(v_{iq..i(q+p)}), index a * rank(B) + b.
Cochain cup_product(const Cochain& u, const Cochain& v, SheafPtr target = nullptr);
// Applies a constant fiberwise map.
Cochain apply_map(const QMatrix& m, const Cochain& c, SheafPtr target);
// Same data viewed in another sheaf of the same rank (no transport).
Cochain reinterpret(const Cochain& c, SheafPtr target);

// Exponent bounds for every even variable (intersected with chart regularity).
struct Window {
    int lo = 0;
    int hi = 0;
};

// Default window for a cochain-level solve: |e| <= max support + 2P + 1, with
// P the largest exponent in the sheaf and coordinate changes.
int solve_bound(const SheafPtr& sheaf, int support);

struct ClassResult {
    bool trivial = false;
    Cochain witness;   // delta(witness) = c - residue
    Cochain residue;   // normal form; zero iff trivial
};

// Decides whether a p-cocycle (p >= 1) is a coboundary; returns a witness and
// the canonical representative of its class.
ClassResult reduce_class(const Cochain& c, std::optional<int> bound = {});
bool is_cocycle(const Cochain& c);

// Basis of H^p (p = 0, 1) among cochains supported in the window; normal
// forms in canonical order. Without a window one is derived when every
// variable is invertible on some overlap, else NeedsWindow.
std::vector<Cochain> cohomology_basis(const SheafPtr& sheaf, int p, std::optional<Window> window = {});
Window auto_window(const SheafPtr& sheaf);

// Coefficient vectors relative to a sheaf's coordinate layout.
SVec to_svec(const Cochain& c);
Cochain from_svec(const SVec& v, const SheafPtr& sheaf, int degree);

struct ShortExactSequence {
    SheafPtr sub, mid, quot;
    QMatrix incl, proj, lift, retract;
};

void verify_ses(const ShortExactSequence& ses);
ShortExactSequence hom_twist(const SheafPtr& t, const ShortExactSequence& ses);
// retract(delta(lift(c))); throws InvalidInput if proj(delta(lift c)) != 0.
Cochain connecting_map(const ShortExactSequence& ses, const Cochain& c);

}  // namespace sg
