#include "supergluing/rational.hpp"

#include "supergluing/errors.hpp"

namespace sg {

std::string q_to_string(const Q& q, bool fraction_form) {
    if (fraction_form) return q.get_num().get_str() + "/" + q.get_den().get_str();
    return q.get_str();
}

Q q_parse(const std::string& text) {
    Q q;
    if (text.empty() || q.set_str(text, 10) != 0) throw InvalidInput("bad rational literal '" + text + "'");
    if (q.get_den() == 0) throw InvalidInput("zero denominator in '" + text + "'");
    q.canonicalize();
    return q;
}

Q q_pow(const Q& base, int exponent) {
    if (exponent < 0) {
        if (base == 0) throw PoleError("negative power of zero");
        return q_pow(Q(1) / base, -exponent);
    }
    Q r = 1;
    Q b = base;
    for (unsigned e = static_cast<unsigned>(exponent); e; e >>= 1) {
        if (e & 1u) r *= b;
        b *= b;
    }
    return r;
}

}  // namespace sg
