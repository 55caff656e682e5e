#include "supergluing/grassmann.hpp"

#include <algorithm>
#include <bit>

#include "supergluing/errors.hpp"

namespace sg {

MultiIndex MultiIndex::from_indices(const std::vector<int>& indices, int odd_rank) {
    std::uint32_t m = 0;
    int prev = 0;
    for (int g : indices) {
        if (g < 1 || g > odd_rank) throw RangeError("odd generator index " + std::to_string(g) + " out of range");
        if (g <= prev) throw RangeError("multi-index must be strictly increasing");
        prev = g;
        m |= 1u << (g - 1);
    }
    return MultiIndex(m);
}

int MultiIndex::degree() const { return std::popcount(mask_); }

std::vector<int> MultiIndex::indices() const {
    std::vector<int> r;
    for (int b = 0; b < 32; ++b)
        if ((mask_ >> b) & 1u) r.push_back(b + 1);
    return r;
}

int MultiIndex::position(int g) const {
    std::uint32_t below = mask_ & ((1u << (g - 1)) - 1u);
    return std::popcount(below) + 1;
}

bool MultiIndex::operator<(const MultiIndex& o) const {
    const int da = degree(), db = o.degree();
    if (da != db) return da < db;
    const std::uint32_t d = mask_ ^ o.mask_;
    if (d == 0) return false;
    const std::uint32_t low = d & (~d + 1u);
    return (mask_ & low) != 0;
}

std::string MultiIndex::to_string() const {
    std::string s = "{";
    bool first = true;
    for (int g : indices()) {
        if (!first) s += ",";
        s += std::to_string(g);
        first = false;
    }
    return s + "}";
}

int merge_sign(std::uint32_t a, std::uint32_t b) {
    if (a & b) return 0;
    int count = 0;
    for (std::uint32_t rest = b; rest; rest &= rest - 1) {
        const int p = std::countr_zero(rest);
        const std::uint64_t above = ~((std::uint64_t{2} << p) - 1);
        count += std::popcount(static_cast<std::uint64_t>(a) & above);
    }
    return (count % 2) ? -1 : 1;
}

std::vector<MultiIndex> multi_indices(int q, int degree) {
    std::vector<MultiIndex> r;
    if (degree < 0 || degree > q) return r;
    for (std::uint32_t m = 0; m < (1u << q); ++m)
        if (std::popcount(m) == degree) r.push_back(MultiIndex::from_mask(m));
    std::sort(r.begin(), r.end());
    return r;
}

GrassmannElement::GrassmannElement(std::size_t nvars, int odd_rank) : nvars_(nvars), q_(odd_rank) {
    if (odd_rank < 0 || odd_rank > kMaxOddRank) throw RangeError("odd rank out of supported range");
}

GrassmannElement GrassmannElement::scalar(const LaurentPoly& p, int odd_rank) {
    GrassmannElement r(p.nvars(), odd_rank);
    r.add_term(MultiIndex(), p);
    return r;
}

GrassmannElement GrassmannElement::constant(std::size_t nvars, int odd_rank, const Q& c) {
    return scalar(LaurentPoly::constant(nvars, c), odd_rank);
}

GrassmannElement GrassmannElement::even_coordinate(std::size_t nvars, int odd_rank, std::size_t i) {
    return scalar(LaurentPoly::variable(nvars, i), odd_rank);
}

GrassmannElement GrassmannElement::generator(std::size_t nvars, int odd_rank, int g) {
    if (g < 1 || g > odd_rank) throw RangeError("odd generator index " + std::to_string(g) + " out of range");
    GrassmannElement r(nvars, odd_rank);
    r.add_term(MultiIndex::single(g), LaurentPoly::constant(nvars, 1));
    return r;
}

GrassmannElement::Parity GrassmannElement::parity() const {
    bool even = false, odd = false;
    for (const auto& [I, c] : terms_) (I.degree() % 2 ? odd : even) = true;
    if (even && odd) return Parity::mixed;
    if (even) return Parity::even;
    if (odd) return Parity::odd;
    return Parity::zero;
}

int GrassmannElement::min_degree() const { return terms_.empty() ? -1 : terms_.begin()->first.degree(); }

LaurentPoly GrassmannElement::coefficient(const MultiIndex& I) const {
    auto it = terms_.find(I);
    return it == terms_.end() ? LaurentPoly(nvars_) : it->second;
}

void GrassmannElement::add_term(const MultiIndex& I, const LaurentPoly& c) {
    if (c.nvars() != nvars_) throw ContextError("coefficient context does not match element");
    if (I.degree() > 0 && static_cast<int>(std::bit_width(I.mask())) > q_) throw RangeError("multi-index exceeds odd rank");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(I, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

static void check_ctx(const GrassmannElement& a, const GrassmannElement& b) {
    if (a.odd_rank() != b.odd_rank()) throw ContextError("mismatched odd rank");
    if (a.nvars() != b.nvars()) throw ContextError("mismatched even coordinate context");
}

GrassmannElement& GrassmannElement::operator+=(const GrassmannElement& o) {
    check_ctx(*this, o);
    for (const auto& [I, c] : o.terms_) add_term(I, c);
    return *this;
}

GrassmannElement& GrassmannElement::operator-=(const GrassmannElement& o) {
    check_ctx(*this, o);
    for (const auto& [I, c] : o.terms_) add_term(I, -c);
    return *this;
}

GrassmannElement& GrassmannElement::operator*=(const Q& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [I, v] : terms_) v *= c;
    return *this;
}

GrassmannElement operator*(const GrassmannElement& a, const GrassmannElement& b) {
    check_ctx(a, b);
    GrassmannElement r(a.nvars_, a.q_);
    for (const auto& [I, ca] : a.terms_)
        for (const auto& [J, cb] : b.terms_) {
            const int s = merge_sign(I.mask(), J.mask());
            if (s == 0) continue;
            LaurentPoly prod = ca * cb;
            if (s < 0) prod = -prod;
            r.add_term(MultiIndex::from_mask(I.mask() | J.mask()), prod);
        }
    return r;
}

GrassmannElement GrassmannElement::operator-() const {
    GrassmannElement r = *this;
    for (auto& [I, c] : r.terms_) c = -c;
    return r;
}

GrassmannElement GrassmannElement::times(const LaurentPoly& p) const {
    GrassmannElement r(nvars_, q_);
    for (const auto& [I, c] : terms_) r.add_term(I, c * p);
    return r;
}

GrassmannElement GrassmannElement::component(int degree) const {
    GrassmannElement r(nvars_, q_);
    for (const auto& [I, c] : terms_)
        if (I.degree() == degree) r.terms_.emplace(I, c);
    return r;
}

GrassmannElement GrassmannElement::truncate(int min_degree) const {
    GrassmannElement r(nvars_, q_);
    for (const auto& [I, c] : terms_)
        if (I.degree() >= min_degree) r.terms_.emplace(I, c);
    return r;
}

GrassmannElement GrassmannElement::odd_derivative(int g) const {
    if (g < 1 || g > q_) throw RangeError("odd derivative index " + std::to_string(g) + " out of range");
    GrassmannElement r(nvars_, q_);
    for (const auto& [I, c] : terms_) {
        if (!I.contains(g)) continue;
        const bool neg = (I.position(g) - 1) % 2;
        r.add_term(MultiIndex::from_mask(I.mask() & ~(1u << (g - 1))), neg ? -c : c);
    }
    return r;
}

namespace {

// (m + n)^{-1} = m^{-1} sum_k (-n m^{-1})^k, finite because n is nilpotent.
GrassmannElement invert_even(const GrassmannElement& e) {
    const LaurentPoly m = e.reduced();
    if (!m.is_monomial())
        throw UnsupportedSubstitution("reduced part '" + m.to_string({}) + "' is not an invertible Laurent monomial");
    const LaurentPoly minv = m.inverse();
    const GrassmannElement n = e - GrassmannElement::scalar(m, e.odd_rank());
    const GrassmannElement step = -n.times(minv);
    GrassmannElement sum = GrassmannElement::constant(e.nvars(), e.odd_rank(), 1);
    GrassmannElement term = sum;
    for (int k = 1; k <= e.odd_rank() / 2 + 1; ++k) {
        term = term * step;
        if (term.is_zero()) break;
        sum += term;
    }
    return sum.times(minv);
}

}  // namespace

GrassmannElement GrassmannElement::pow(int k) const {
    if (k < 0) return invert_even(*this).pow(-k);
    GrassmannElement r = constant(nvars_, q_, 1);
    for (int i = 0; i < k; ++i) r = r * *this;
    return r;
}

GrassmannElement GrassmannElement::substitute(const std::vector<GrassmannElement>& even_images,
                                              const std::vector<GrassmannElement>& odd_images) const {
    if (even_images.size() != nvars_) throw ContextError("substitution needs one image per even coordinate");
    if (odd_images.size() != static_cast<std::size_t>(q_))
        throw ContextError("substitution needs one image per odd generator");
    const GrassmannElement* ref = !even_images.empty() ? &even_images.front()
                                  : !odd_images.empty() ? &odd_images.front()
                                                        : nullptr;
    if (!ref) return *this;
    const std::size_t tn = ref->nvars();
    const int tq = ref->odd_rank();
    for (const auto& im : even_images) {
        if (im.nvars() != tn || im.odd_rank() != tq) throw ContextError("substitution images in different contexts");
        const auto p = im.parity();
        if (p != Parity::even && p != Parity::zero) throw ContextError("even substitution image is not even");
    }
    for (const auto& im : odd_images) {
        if (im.nvars() != tn || im.odd_rank() != tq) throw ContextError("substitution images in different contexts");
        const auto p = im.parity();
        if (p != Parity::odd && p != Parity::zero) throw ContextError("odd substitution image is not odd");
    }

    std::vector<bool> used(nvars_, false);
    for (const auto& [I, c] : terms_)
        for (const auto& [e, v] : c.terms())
            for (std::size_t i = 0; i < nvars_; ++i)
                if (e[i] != 0) used[i] = true;
    bool pure = true;
    std::vector<LaurentPoly> reduced_images;
    for (std::size_t i = 0; i < nvars_; ++i) {
        reduced_images.push_back(even_images[i].reduced());
        if (used[i] && !reduced_images[i].is_monomial())
            throw UnsupportedSubstitution("reduced part of the image of even coordinate " + std::to_string(i + 1) +
                                          " is not an invertible Laurent monomial");
        if (used[i] && even_images[i].terms().size() > 1) pure = false;
    }

    std::vector<std::map<int, GrassmannElement>> cache(nvars_);
    auto power = [&](std::size_t i, int k) -> const GrassmannElement& {
        auto it = cache[i].find(k);
        if (it != cache[i].end()) return it->second;
        GrassmannElement v;
        if (k == 1)
            v = even_images[i];
        else if (k == -1)
            v = invert_even(even_images[i]);
        else if (k > 0)
            v = even_images[i].pow(k);
        else
            v = invert_even(even_images[i]).pow(-k);
        return cache[i].emplace(k, std::move(v)).first->second;
    };

    GrassmannElement result(tn, tq);
    for (const auto& [I, c] : terms_) {
        GrassmannElement coeff(tn, tq);
        if (pure) {
            coeff = scalar(c.substitute(reduced_images), tq);
        } else {
            for (const auto& [e, v] : c.terms()) {
                GrassmannElement t = constant(tn, tq, v);
                for (std::size_t i = 0; i < nvars_; ++i)
                    if (e[i] != 0) t = t * power(i, e[i]);
                coeff += t;
            }
        }
        if (coeff.is_zero()) continue;
        GrassmannElement odd = constant(tn, tq, 1);
        for (int g : I.indices()) odd = odd * odd_images[static_cast<std::size_t>(g - 1)];
        result += coeff * odd;
    }
    return result;
}

GrassmannElement GrassmannElement::map_coefficients(const std::function<LaurentPoly(const LaurentPoly&)>& f,
                                                    std::size_t new_nvars) const {
    GrassmannElement r(new_nvars, q_);
    for (const auto& [I, c] : terms_) r.add_term(I, f(c));
    return r;
}

GrassmannElement GrassmannElement::remap_generators(const std::vector<int>& new_index, int new_rank) const {
    if (new_index.size() != static_cast<std::size_t>(q_)) throw ContextError("generator remap size mismatch");
    GrassmannElement r(nvars_, new_rank);
    for (const auto& [I, c] : terms_) {
        GrassmannElement t = scalar(c, new_rank);
        bool dead = false;
        for (int g : I.indices()) {
            const int ng = new_index[static_cast<std::size_t>(g - 1)];
            if (ng == 0) {
                dead = true;
                break;
            }
            t = t * generator(nvars_, new_rank, ng);
        }
        if (!dead) r += t;
    }
    return r;
}

std::string GrassmannElement::to_string(const std::vector<std::string>& names, bool fraction_form) const {
    if (terms_.empty()) return fraction_form ? "0/1" : "0";
    struct Piece {
        bool neg;
        std::string body;
    };
    std::vector<Piece> pieces;
    for (const auto& [I, c] : terms_) {
        std::string thetas;
        for (int g : I.indices()) thetas += (thetas.empty() ? "" : "*") + std::string("theta_") + std::to_string(g);
        if (I.empty()) {
            for (const auto& [e, v] : c.terms()) {
                const bool neg = v < 0;
                pieces.push_back({neg, LaurentPoly::monomial(e, neg ? Q(-v) : v).to_string(names, fraction_form)});
            }
            continue;
        }
        if (c.is_monomial()) {
            const auto& [e, v] = *c.terms().begin();
            const bool neg = v < 0;
            const std::string m = LaurentPoly::monomial(e, neg ? Q(-v) : v).to_string(names, fraction_form);
            pieces.push_back({neg, m == "1" ? thetas : m + "*" + thetas});
        } else {
            pieces.push_back({false, "(" + c.to_string(names, fraction_form) + ")*" + thetas});
        }
    }
    std::string out;
    for (std::size_t k = 0; k < pieces.size(); ++k) {
        if (k == 0)
            out += pieces[k].neg ? "-" : "";
        else
            out += pieces[k].neg ? " - " : " + ";
        out += pieces[k].body;
    }
    return out;
}

GrassmannElement gr_mul(const GrassmannElement& a, const GrassmannElement& b) { return a * b; }
GrassmannElement gr_odd_derivative(const GrassmannElement& a, int g) { return a.odd_derivative(g); }
GrassmannElement gr_substitute(const GrassmannElement& a, const std::vector<GrassmannElement>& even_images,
                               const std::vector<GrassmannElement>& odd_images) {
    return a.substitute(even_images, odd_images);
}
GrassmannElement gr_truncate(const GrassmannElement& a, int min_odd_degree) { return a.truncate(min_odd_degree); }
GrassmannElement gr_component(const GrassmannElement& a, int odd_degree) { return a.component(odd_degree); }

GrassmannElement euler_projection(const GrassmannElement& a, int j) {
    const int q = a.odd_rank();
    if (j < 0) throw RangeError("negative Euler order");
    GrassmannElement sum(a.nvars(), q);
    if (j == 0) return a;
    // enumerate ordered j-tuples of distinct generators recursively
    std::vector<int> tuple;
    std::function<void(const GrassmannElement&)> rec = [&](const GrassmannElement& derived) {
        if (static_cast<int>(tuple.size()) == j) {
            GrassmannElement mult = GrassmannElement::constant(a.nvars(), q, 1);
            for (int g : tuple) mult = mult * GrassmannElement::generator(a.nvars(), q, g);
            sum += mult * derived;
            return;
        }
        for (int g = 1; g <= q; ++g) {
            if (std::find(tuple.begin(), tuple.end(), g) != tuple.end()) continue;
            tuple.push_back(g);
            rec(derived.odd_derivative(g));
            tuple.pop_back();
        }
    };
    // theta_{a1}..theta_{aj} d_{aj}..d_{a1}: the first derivative applied is d_{a1}
    rec(a);
    Q factorial = 1;
    for (int k = 2; k <= j; ++k) factorial *= k;
    return sum * (Q(1) / factorial);
}

}  // namespace sg
