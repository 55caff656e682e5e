#include "supergluing/laurent.hpp"

#include <algorithm>
#include <cstdlib>

#include "supergluing/errors.hpp"

namespace sg {

namespace {

void check_same(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.nvars() != b.nvars())
        throw ContextError("Laurent polynomials over different variable counts (" + std::to_string(a.nvars()) +
                           " vs " + std::to_string(b.nvars()) + ")");
}

Exponent add_exp(const Exponent& a, const Exponent& b) {
    Exponent r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

}  // namespace

LaurentPoly LaurentPoly::constant(std::size_t nvars, const Q& c) {
    LaurentPoly p(nvars);
    p.add_term(Exponent(nvars, 0), c);
    return p;
}

LaurentPoly LaurentPoly::monomial(const Exponent& e, const Q& c) {
    LaurentPoly p(e.size());
    p.add_term(e, c);
    return p;
}

LaurentPoly LaurentPoly::variable(std::size_t nvars, std::size_t i, int power) {
    if (i >= nvars) throw RangeError("variable index out of range");
    Exponent e(nvars, 0);
    e[i] = power;
    return monomial(e);
}

bool LaurentPoly::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() != 1) return false;
    const auto& e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](int v) { return v == 0; });
}

Q LaurentPoly::coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Q(0) : it->second;
}

void LaurentPoly::add_term(const Exponent& e, const Q& c) {
    if (e.size() != nvars_) throw ContextError("exponent length does not match variable count");
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    check_same(*this, o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
    check_same(*this, o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    check_same(a, b);
    LaurentPoly r(a.nvars());
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) r.add_term(add_exp(ea, eb), ca * cb);
    return r;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) { return *this = *this * o; }

LaurentPoly& LaurentPoly::operator*=(const Q& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r = *this;
    for (auto& [e, v] : r.terms_) v = -v;
    return r;
}

LaurentPoly LaurentPoly::inverse() const {
    if (!is_monomial()) throw UnsupportedSubstitution("only Laurent monomials are invertible");
    const auto& [e, c] = *terms_.begin();
    Exponent ne(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) ne[i] = -e[i];
    return monomial(ne, Q(1) / c);
}

LaurentPoly LaurentPoly::pow(int k) const {
    if (k < 0) return inverse().pow(-k);
    if (is_monomial()) {
        const auto& [e, c] = *terms_.begin();
        Exponent ne(e.size());
        for (std::size_t i = 0; i < e.size(); ++i) ne[i] = e[i] * k;
        return monomial(ne, q_pow(c, k));
    }
    LaurentPoly r = constant(nvars_, 1);
    LaurentPoly b = *this;
    for (unsigned e = static_cast<unsigned>(k); e; e >>= 1) {
        if (e & 1u) r *= b;
        if (e > 1) b *= b;
    }
    return r;
}

LaurentPoly LaurentPoly::substitute(const std::vector<LaurentPoly>& images) const {
    if (images.size() != nvars_) throw ContextError("substitution needs one image per variable");
    if (images.empty()) return *this;
    const std::size_t target = images.front().nvars();
    for (const auto& im : images)
        if (im.nvars() != target) throw ContextError("substitution images over different contexts");
    // powers[i][k] cached lazily
    std::vector<std::map<int, LaurentPoly>> powers(nvars_);
    auto power = [&](std::size_t i, int k) -> const LaurentPoly& {
        auto it = powers[i].find(k);
        if (it != powers[i].end()) return it->second;
        if (k < 0 && !images[i].is_monomial())
            throw UnsupportedSubstitution("negative power of a non-monomial image");
        return powers[i].emplace(k, images[i].pow(k)).first->second;
    };
    LaurentPoly r(target);
    for (const auto& [e, c] : terms_) {
        LaurentPoly t = constant(target, c);
        for (std::size_t i = 0; i < nvars_; ++i)
            if (e[i] != 0) t *= power(i, e[i]);
        r += t;
    }
    return r;
}

LaurentPoly LaurentPoly::evaluate(std::size_t var, const Q& value) const {
    if (var >= nvars_) throw RangeError("variable index out of range");
    LaurentPoly r(nvars_);
    for (const auto& [e, c] : terms_) {
        if (e[var] < 0 && value == 0) throw PoleError("evaluation at a pole");
        Exponent ne = e;
        ne[var] = 0;
        r.add_term(ne, c * q_pow(value, e[var]));
    }
    return r;
}

LaurentPoly LaurentPoly::translate(std::size_t var, const Q& shift) const {
    if (var >= nvars_) throw RangeError("variable index out of range");
    LaurentPoly r(nvars_);
    for (const auto& [e, c] : terms_) {
        int n = e[var];
        if (n < 0) {
            if (shift != 0) throw PoleError("translation of a negative power");
            r.add_term(e, c);
            continue;
        }
        Q binom = 1;
        for (int k = 0; k <= n; ++k) {
            // term x^(n-k) * shift^k * C(n,k)
            Exponent ne = e;
            ne[var] = n - k;
            r.add_term(ne, c * binom * q_pow(shift, k));
            binom = binom * (n - k) / (k + 1);
        }
    }
    return r;
}

LaurentPoly LaurentPoly::derivative(std::size_t var) const {
    if (var >= nvars_) throw RangeError("variable index out of range");
    LaurentPoly r(nvars_);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        Exponent ne = e;
        ne[var] -= 1;
        r.add_term(ne, c * e[var]);
    }
    return r;
}

LaurentPoly LaurentPoly::remap(const std::vector<int>& slot_of, std::size_t new_nvars) const {
    if (slot_of.size() != nvars_) throw ContextError("remap needs one slot per variable");
    LaurentPoly r(new_nvars);
    for (const auto& [e, c] : terms_) {
        Exponent ne(new_nvars, 0);
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (slot_of[i] < 0) {
                if (e[i] != 0) throw ContextError("dropped variable still occurs");
                continue;
            }
            ne[static_cast<std::size_t>(slot_of[i])] += e[i];
        }
        r.add_term(ne, c);
    }
    return r;
}

int LaurentPoly::min_exponent(std::size_t var) const {
    int m = 0;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (first || e[var] < m) m = e[var];
        first = false;
    }
    return m;
}

int LaurentPoly::max_exponent(std::size_t var) const {
    int m = 0;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (first || e[var] > m) m = e[var];
        first = false;
    }
    return m;
}

int LaurentPoly::max_abs_exponent(std::size_t var) const {
    int m = 0;
    for (const auto& [e, c] : terms_) m = std::max(m, std::abs(e[var]));
    return m;
}

std::string LaurentPoly::to_string(const std::vector<std::string>& names, bool fraction_form) const {
    if (terms_.empty()) return fraction_form ? "0/1" : "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        const bool neg = c < 0;
        const Q a = neg ? Q(-c) : c;
        if (first)
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        first = false;
        std::string mono;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += i < names.size() ? names[i] : "v" + std::to_string(i);
            if (e[i] != 1) mono += "^" + std::to_string(e[i]);
        }
        if (mono.empty())
            out += q_to_string(a, fraction_form);
        else if (a == 1 && !fraction_form)
            out += mono;
        else
            out += q_to_string(a, fraction_form) + "*" + mono;
    }
    return out;
}

}  // namespace sg
