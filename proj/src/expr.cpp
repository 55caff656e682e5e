#include "supergluing/expr.hpp"

#include <cctype>

#include "supergluing/errors.hpp"

namespace sg {

namespace {

class Parser {
public:
    Parser(const std::string& text, const std::vector<std::string>& names, int q, int line, int column)
        : s_(text), names_(names), q_(q), line_(line), col0_(column) {}

    GrassmannElement parse() {
        GrassmannElement e = expr();
        skip_ws();
        if (pos_ < s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
        throw ParseError(msg, line_, col0_ + static_cast<int>(at));
    }
    [[noreturn]] void fail(const std::string& msg) const { fail(msg, pos_); }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    std::string digits() {
        skip_ws();
        std::size_t b = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (b == pos_) fail("expected integer");
        return s_.substr(b, pos_ - b);
    }

    GrassmannElement expr() {
        skip_ws();
        bool neg = false;
        if (accept('-'))
            neg = true;
        else
            accept('+');
        GrassmannElement r = term();
        if (neg) r = -r;
        while (true) {
            if (accept('+'))
                r += term();
            else if (accept('-'))
                r -= term();
            else
                break;
        }
        return r;
    }

    GrassmannElement term() {
        GrassmannElement r = factor();
        while (accept('*')) r = r * factor();
        return r;
    }

    GrassmannElement factor() {
        skip_ws();
        const std::size_t start = pos_;
        bool powerable = false;
        GrassmannElement base = primary(powerable);
        if (accept('^')) {
            if (!powerable) fail("exponent allowed only on even coordinates or parenthesized expressions", start);
            bool neg = accept('-');
            const std::size_t at = pos_;
            const std::string d = digits();
            if (d.size() > 6) fail("exponent too large", at);
            int k = std::stoi(d);
            try {
                return base.pow(neg ? -k : k);
            } catch (const Error& e) {
                fail(e.what(), start);
            }
        }
        return base;
    }

    GrassmannElement primary(bool& powerable) {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of expression");
        const std::size_t start = pos_;
        const char c = s_[pos_];
        const std::size_t n = names_.size();
        if (c == '(') {
            ++pos_;
            GrassmannElement e = expr();
            if (!accept(')')) fail("expected ')'");
            powerable = true;
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num = digits();
            std::string den = "1";
            if (accept('/')) den = digits();
            if (den.find_first_not_of('0') == std::string::npos) fail("zero denominator", start);
            return GrassmannElement::constant(n, q_, q_parse(num + "/" + den));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            const std::string id = s_.substr(start, pos_ - start);
            for (std::size_t i = 0; i < n; ++i)
                if (names_[i] == id) {
                    powerable = true;
                    return GrassmannElement::even_coordinate(n, q_, i);
                }
            if (id.rfind("theta_", 0) == 0 && id.size() > 6 &&
                id.find_first_not_of("0123456789", 6) == std::string::npos) {
                if (id.size() > 9) fail("odd generator index out of range", start);
                const int g = std::stoi(id.substr(6));
                if (g < 1 || g > q_) fail("odd generator " + id + " out of range (odd rank " + std::to_string(q_) + ")", start);
                return GrassmannElement::generator(n, q_, g);
            }
            fail("unknown identifier '" + id + "'", start);
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    const std::string& s_;
    const std::vector<std::string>& names_;
    int q_;
    int line_;
    int col0_;
    std::size_t pos_ = 0;
};

}  // namespace

GrassmannElement parse_element(const std::string& text, const std::vector<std::string>& even_names, int odd_rank,
                               int line, int column) {
    return Parser(text, even_names, odd_rank, line, column).parse();
}

LaurentPoly parse_laurent(const std::string& text, const std::vector<std::string>& even_names, int line, int column) {
    GrassmannElement e = parse_element(text, even_names, 0, line, column);
    return e.reduced();
}

}  // namespace sg
