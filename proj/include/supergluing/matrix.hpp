#pragma once

#include <string>
#include <vector>

#include "supergluing/laurent.hpp"

namespace sg {

// Dense rational matrix; used for constant sheaf maps.
class QMatrix {
public:
    QMatrix() = default;
    QMatrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols) {}
    static QMatrix identity(std::size_t n);

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    Q& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const Q& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

    friend QMatrix operator*(const QMatrix& a, const QMatrix& b);
    friend QMatrix operator+(const QMatrix& a, const QMatrix& b);
    bool operator==(const QMatrix& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }
    bool operator!=(const QMatrix& o) const { return !(*this == o); }
    QMatrix transpose() const;
    bool is_zero() const;

private:
    std::size_t r_ = 0, c_ = 0;
    std::vector<Q> a_;
};

QMatrix kron(const QMatrix& a, const QMatrix& b);

// Dense matrix of Laurent polynomials over a fixed variable count.
class LMatrix {
public:
    LMatrix() = default;
    LMatrix(std::size_t rows, std::size_t cols, std::size_t nvars);
    static LMatrix identity(std::size_t n, std::size_t nvars);
    static LMatrix from_q(const QMatrix& q, std::size_t nvars);

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    std::size_t nvars() const { return n_; }
    LaurentPoly& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const LaurentPoly& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

    friend LMatrix operator*(const LMatrix& a, const LMatrix& b);
    friend LMatrix operator+(const LMatrix& a, const LMatrix& b);
    friend LMatrix operator-(const LMatrix& a, const LMatrix& b);
    LMatrix operator-() const;
    LMatrix times(const LaurentPoly& p) const;
    bool operator==(const LMatrix& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }
    bool operator!=(const LMatrix& o) const { return !(*this == o); }

    std::vector<LaurentPoly> apply(const std::vector<LaurentPoly>& v) const;
    LMatrix transpose() const;
    LMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    void set_block(std::size_t r0, std::size_t c0, const LMatrix& b);
    LMatrix select(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;
    LMatrix substitute(const std::vector<LaurentPoly>& images) const;
    bool is_zero() const;
    bool is_identity() const;

    LaurentPoly determinant() const;
    // Needs a monomial determinant.
    LMatrix inverse() const;
    int max_abs_exponent() const;

    std::string to_string(const std::vector<std::string>& names, bool fraction_form = false) const;

private:
    std::size_t r_ = 0, c_ = 0, n_ = 0;
    std::vector<LaurentPoly> a_;
};

LMatrix kron(const LMatrix& a, const LMatrix& b);

}  // namespace sg
