#pragma once

// Reference implementations used only by tests. They share no code paths with
// the library beyond the scalar types.

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "supergluing/grassmann.hpp"
#include "supergluing/matrix.hpp"
#include "supergluing/model_file.hpp"

namespace oracle {

using sg::Q;

// Grassmann algebra with rational coefficients stored densely over all 2^q masks.
struct DenseGrassmann {
    int q = 0;
    std::vector<Q> c;

    explicit DenseGrassmann(int rank) : q(rank), c(std::size_t{1} << rank) {}
    DenseGrassmann operator*(const DenseGrassmann& o) const;
    DenseGrassmann operator+(const DenseGrassmann& o) const;
    bool operator==(const DenseGrassmann& o) const { return q == o.q && c == o.c; }

    static DenseGrassmann from(const sg::GrassmannElement& e);  // requires no even variables
    sg::GrassmannElement to_element() const;
};

// Sign of the permutation that sorts the concatenation a ++ b, by bubble sort.
// Returns 0 when an index repeats.
int concat_sign(const std::vector<int>& a, const std::vector<int>& b);

// Rank of a dense rational matrix by plain Gaussian elimination.
std::size_t rank(std::vector<std::vector<Q>> rows);

// Cech cohomology of a line bundle on the two-chart P^1 whose U1 -> U0 transport,
// written in the U0 coordinate x, is multiplication by x^e. Computed by brute
// force: 0-cochains are polynomials of degree <= K on each chart, 1-cochains are
// Laurent polynomials with exponents in [-W, W].
struct WindowCohomology {
    std::size_t h0 = 0;
    std::size_t h1 = 0;
    std::set<int> gap;  // overlap exponents not reached by coboundaries
};
WindowCohomology line_bundle_cohomology(int e, int W);

// k-th compound matrix (all k x k minors, rows and columns in lex subset order),
// minors evaluated by Laplace expansion.
sg::LMatrix compound(const sg::LMatrix& m, int k);
sg::LaurentPoly det_laplace(const sg::LMatrix& m);

sg::ModelFile golden(const std::string& name);
std::string golden_path(const std::string& name);

}  // namespace oracle
