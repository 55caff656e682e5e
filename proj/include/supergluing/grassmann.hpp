#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "supergluing/laurent.hpp"

namespace sg {

inline constexpr int kMaxOddRank = 30;

// Strictly increasing set of 1-based odd generator indices, stored as a bit mask
// (generator k <-> bit k-1). Ordered by degree, then lexicographically.
class MultiIndex {
public:
    MultiIndex() = default;
    static MultiIndex from_indices(const std::vector<int>& indices, int odd_rank);
    static MultiIndex from_mask(std::uint32_t mask) { return MultiIndex(mask); }
    static MultiIndex single(int g) { return MultiIndex(1u << (g - 1)); }

    std::uint32_t mask() const { return mask_; }
    int degree() const;
    std::vector<int> indices() const;
    bool contains(int g) const { return (mask_ >> (g - 1)) & 1u; }
    bool empty() const { return mask_ == 0; }
    // 1-based position of g inside the index list
    int position(int g) const;

    bool operator==(const MultiIndex& o) const { return mask_ == o.mask_; }
    bool operator!=(const MultiIndex& o) const { return mask_ != o.mask_; }
    bool operator<(const MultiIndex& o) const;

    std::string to_string() const;

private:
    explicit MultiIndex(std::uint32_t m) : mask_(m) {}
    std::uint32_t mask_ = 0;
};

// Sign of theta_A * theta_B = sign * theta_{A u B}; 0 when A and B intersect.
int merge_sign(std::uint32_t a, std::uint32_t b);

// All multi-indices of a given degree in [1, q], ascending order.
std::vector<MultiIndex> multi_indices(int q, int degree);

class GrassmannElement {
public:
    using TermMap = std::map<MultiIndex, LaurentPoly>;
    enum class Parity { zero, even, odd, mixed };

    GrassmannElement() = default;
    GrassmannElement(std::size_t nvars, int odd_rank);

    static GrassmannElement scalar(const LaurentPoly& p, int odd_rank);
    static GrassmannElement constant(std::size_t nvars, int odd_rank, const Q& c);
    static GrassmannElement even_coordinate(std::size_t nvars, int odd_rank, std::size_t i);
    static GrassmannElement generator(std::size_t nvars, int odd_rank, int g);

    std::size_t nvars() const { return nvars_; }
    int odd_rank() const { return q_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Parity parity() const;
    int min_degree() const;  // lowest degree present; -1 when zero

    LaurentPoly coefficient(const MultiIndex& I) const;
    LaurentPoly reduced() const { return coefficient(MultiIndex()); }
    void add_term(const MultiIndex& I, const LaurentPoly& c);

    GrassmannElement& operator+=(const GrassmannElement& o);
    GrassmannElement& operator-=(const GrassmannElement& o);
    GrassmannElement& operator*=(const Q& c);
    friend GrassmannElement operator+(GrassmannElement a, const GrassmannElement& b) { return a += b; }
    friend GrassmannElement operator-(GrassmannElement a, const GrassmannElement& b) { return a -= b; }
    friend GrassmannElement operator*(const GrassmannElement& a, const GrassmannElement& b);
    friend GrassmannElement operator*(GrassmannElement a, const Q& c) { return a *= c; }
    friend GrassmannElement operator*(const Q& c, GrassmannElement a) { return a *= c; }
    GrassmannElement operator-() const;
    GrassmannElement times(const LaurentPoly& p) const;

    bool operator==(const GrassmannElement& o) const {
        return nvars_ == o.nvars_ && q_ == o.q_ && terms_ == o.terms_;
    }
    bool operator!=(const GrassmannElement& o) const { return !(*this == o); }

    GrassmannElement component(int degree) const;
    GrassmannElement truncate(int min_degree) const;  // keeps |I| >= min_degree
    GrassmannElement odd_derivative(int g) const;     // left derivative
    GrassmannElement pow(int k) const;                // k < 0 needs invertible reduced monomial

    // even_images: one even element per even variable; odd_images: one odd
    // element per generator. All images share the target context.
    GrassmannElement substitute(const std::vector<GrassmannElement>& even_images,
                                const std::vector<GrassmannElement>& odd_images) const;

    GrassmannElement map_coefficients(const std::function<LaurentPoly(const LaurentPoly&)>& f,
                                      std::size_t new_nvars) const;
    // Renumber generators: old generator g becomes new_index[g-1] (or vanishes the term when 0).
    GrassmannElement remap_generators(const std::vector<int>& new_index, int new_rank) const;

    std::string to_string(const std::vector<std::string>& names, bool fraction_form = false) const;

private:
    std::size_t nvars_ = 0;
    int q_ = 0;
    TermMap terms_;
};

GrassmannElement gr_mul(const GrassmannElement& a, const GrassmannElement& b);
GrassmannElement gr_odd_derivative(const GrassmannElement& a, int g);
GrassmannElement gr_substitute(const GrassmannElement& a, const std::vector<GrassmannElement>& even_images,
                               const std::vector<GrassmannElement>& odd_images);
GrassmannElement gr_truncate(const GrassmannElement& a, int min_odd_degree);
GrassmannElement gr_component(const GrassmannElement& a, int odd_degree);

// (1/j!) sum over ordered j-tuples theta_{a1}..theta_{aj} d_{aj}..d_{a1}: the
// j-th order Euler operator. Scales the degree-d part by C(d, j), so it is the
// identity on degree j and kills degrees below j.
GrassmannElement euler_projection(const GrassmannElement& a, int j);

}  // namespace sg
