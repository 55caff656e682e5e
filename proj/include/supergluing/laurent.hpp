#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "supergluing/rational.hpp"

namespace sg {

using Exponent = std::vector<int>;

// Laurent polynomial with rational coefficients in a fixed number of even
// variables. Variables are positional; names live in the chart that owns
// the coordinates.
class LaurentPoly {
public:
    using TermMap = std::map<Exponent, Q>;

    LaurentPoly() = default;
    explicit LaurentPoly(std::size_t nvars) : nvars_(nvars) {}

    static LaurentPoly constant(std::size_t nvars, const Q& c);
    static LaurentPoly monomial(const Exponent& e, const Q& c = 1);
    static LaurentPoly variable(std::size_t nvars, std::size_t i, int power = 1);

    std::size_t nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    bool is_monomial() const { return terms_.size() == 1; }
    Q coefficient(const Exponent& e) const;
    Q constant_term() const { return coefficient(Exponent(nvars_, 0)); }

    void add_term(const Exponent& e, const Q& c);

    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    LaurentPoly& operator*=(const LaurentPoly& o);
    LaurentPoly& operator*=(const Q& c);

    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    friend LaurentPoly operator*(LaurentPoly a, const Q& c) { return a *= c; }
    friend LaurentPoly operator*(const Q& c, LaurentPoly a) { return a *= c; }
    LaurentPoly operator-() const;

    bool operator==(const LaurentPoly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }
    bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

    // Negative powers only for monomials.
    LaurentPoly pow(int k) const;
    LaurentPoly inverse() const;

    // Replace variable i by images[i]. Negative exponents of a variable need
    // a monomial image.
    LaurentPoly substitute(const std::vector<LaurentPoly>& images) const;

    // Sets variable `var` to value; the slot stays, with exponent 0.
    LaurentPoly evaluate(std::size_t var, const Q& value) const;
    // x_var -> x_var + shift (binomial expansion); needs nonnegative exponents.
    LaurentPoly translate(std::size_t var, const Q& shift) const;
    LaurentPoly derivative(std::size_t var) const;

    // Old slot i moves to new slot slot_of[i]; slot_of[i] < 0 drops the slot,
    // which must then carry exponent 0 in every term.
    LaurentPoly remap(const std::vector<int>& slot_of, std::size_t new_nvars) const;

    int min_exponent(std::size_t var) const;
    int max_exponent(std::size_t var) const;
    int max_abs_exponent(std::size_t var) const;

    std::string to_string(const std::vector<std::string>& names, bool fraction_form = false) const;

private:
    std::size_t nvars_ = 0;
    TermMap terms_;
};

}  // namespace sg
