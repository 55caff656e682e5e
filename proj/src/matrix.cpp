#include "supergluing/matrix.hpp"

#include <algorithm>

#include "supergluing/errors.hpp"

namespace sg {

QMatrix QMatrix::identity(std::size_t n) {
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
    if (a.c_ != b.r_) throw ContextError("matrix shape mismatch in product");
    QMatrix r(a.r_, b.c_);
    for (std::size_t i = 0; i < a.r_; ++i)
        for (std::size_t k = 0; k < a.c_; ++k) {
            const Q& x = a(i, k);
            if (x == 0) continue;
            for (std::size_t j = 0; j < b.c_; ++j) r(i, j) += x * b(k, j);
        }
    return r;
}

QMatrix operator+(const QMatrix& a, const QMatrix& b) {
    if (a.r_ != b.r_ || a.c_ != b.c_) throw ContextError("matrix shape mismatch in sum");
    QMatrix r = a;
    for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] += b.a_[i];
    return r;
}

QMatrix QMatrix::transpose() const {
    QMatrix t(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

bool QMatrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const Q& q) { return q == 0; });
}

QMatrix kron(const QMatrix& a, const QMatrix& b) {
    QMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a(i, j) == 0) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l) r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
        }
    return r;
}

LMatrix::LMatrix(std::size_t rows, std::size_t cols, std::size_t nvars)
    : r_(rows), c_(cols), n_(nvars), a_(rows * cols, LaurentPoly(nvars)) {}

LMatrix LMatrix::identity(std::size_t n, std::size_t nvars) {
    LMatrix m(n, n, nvars);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = LaurentPoly::constant(nvars, 1);
    return m;
}

LMatrix LMatrix::from_q(const QMatrix& q, std::size_t nvars) {
    LMatrix m(q.rows(), q.cols(), nvars);
    for (std::size_t i = 0; i < q.rows(); ++i)
        for (std::size_t j = 0; j < q.cols(); ++j) m(i, j) = LaurentPoly::constant(nvars, q(i, j));
    return m;
}

LMatrix operator*(const LMatrix& a, const LMatrix& b) {
    if (a.c_ != b.r_) throw ContextError("matrix shape mismatch in product");
    if (a.n_ != b.n_) throw ContextError("matrix variable contexts differ");
    LMatrix r(a.r_, b.c_, a.n_);
    for (std::size_t i = 0; i < a.r_; ++i)
        for (std::size_t k = 0; k < a.c_; ++k) {
            const LaurentPoly& x = a(i, k);
            if (x.is_zero()) continue;
            for (std::size_t j = 0; j < b.c_; ++j)
                if (!b(k, j).is_zero()) r(i, j) += x * b(k, j);
        }
    return r;
}

LMatrix operator+(const LMatrix& a, const LMatrix& b) {
    if (a.r_ != b.r_ || a.c_ != b.c_) throw ContextError("matrix shape mismatch in sum");
    LMatrix r = a;
    for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] += b.a_[i];
    return r;
}

LMatrix operator-(const LMatrix& a, const LMatrix& b) { return a + (-b); }

LMatrix LMatrix::operator-() const {
    LMatrix r = *this;
    for (auto& x : r.a_) x = -x;
    return r;
}

LMatrix LMatrix::times(const LaurentPoly& p) const {
    LMatrix r = *this;
    for (auto& x : r.a_) x = x * p;
    return r;
}

std::vector<LaurentPoly> LMatrix::apply(const std::vector<LaurentPoly>& v) const {
    if (v.size() != c_) throw ContextError("vector length does not match matrix");
    std::vector<LaurentPoly> r(r_, LaurentPoly(n_));
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j)
            if (!(*this)(i, j).is_zero() && !v[j].is_zero()) r[i] += (*this)(i, j) * v[j];
    return r;
}

LMatrix LMatrix::transpose() const {
    LMatrix t(c_, r_, n_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

LMatrix LMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    LMatrix b(nr, nc, n_);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
}

void LMatrix::set_block(std::size_t r0, std::size_t c0, const LMatrix& b) {
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

LMatrix LMatrix::select(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const {
    LMatrix b(rows.size(), cols.size(), n_);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) b(i, j) = (*this)(rows[i], cols[j]);
    return b;
}

LMatrix LMatrix::substitute(const std::vector<LaurentPoly>& images) const {
    const std::size_t target = images.empty() ? 0 : images.front().nvars();
    LMatrix r(r_, c_, target);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i].substitute(images);
    return r;
}

bool LMatrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const LaurentPoly& p) { return p.is_zero(); });
}

bool LMatrix::is_identity() const {
    if (r_ != c_) return false;
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j) {
            const LaurentPoly& x = (*this)(i, j);
            if (i == j ? x != LaurentPoly::constant(n_, 1) : !x.is_zero()) return false;
        }
    return true;
}

// Laplace expansion along the sparsest row; sizes here stay small.
LaurentPoly LMatrix::determinant() const {
    if (r_ != c_) throw ContextError("determinant of a non-square matrix");
    if (r_ == 0) return LaurentPoly::constant(n_, 1);
    if (r_ == 1) return a_[0];
    std::size_t best = 0, best_nz = c_ + 1;
    for (std::size_t i = 0; i < r_; ++i) {
        std::size_t nz = 0;
        for (std::size_t j = 0; j < c_; ++j) nz += !(*this)(i, j).is_zero();
        if (nz < best_nz) best = i, best_nz = nz;
    }
    LaurentPoly d(n_);
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < r_; ++i)
        if (i != best) rows.push_back(i);
    for (std::size_t j = 0; j < c_; ++j) {
        if ((*this)(best, j).is_zero()) continue;
        std::vector<std::size_t> cols;
        for (std::size_t k = 0; k < c_; ++k)
            if (k != j) cols.push_back(k);
        LaurentPoly term = (*this)(best, j) * select(rows, cols).determinant();
        d += ((best + j) % 2) ? -term : term;
    }
    return d;
}

LMatrix LMatrix::inverse() const {
    const LaurentPoly det = determinant();
    if (!det.is_monomial()) throw InvalidInput("matrix is not invertible over Laurent polynomials");
    const LaurentPoly dinv = det.inverse();
    LMatrix inv(r_, c_, n_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j) {
            std::vector<std::size_t> rows, cols;
            for (std::size_t k = 0; k < r_; ++k)
                if (k != j) rows.push_back(k);
            for (std::size_t k = 0; k < c_; ++k)
                if (k != i) cols.push_back(k);
            LaurentPoly cof = select(rows, cols).determinant() * dinv;
            inv(i, j) = ((i + j) % 2) ? -cof : cof;
        }
    return inv;
}

int LMatrix::max_abs_exponent() const {
    int m = 0;
    for (const auto& p : a_)
        for (std::size_t v = 0; v < n_; ++v) m = std::max(m, p.max_abs_exponent(v));
    return m;
}

std::string LMatrix::to_string(const std::vector<std::string>& names, bool fraction_form) const {
    std::string s = "[";
    for (std::size_t i = 0; i < r_; ++i) {
        if (i) s += "; ";
        for (std::size_t j = 0; j < c_; ++j) {
            if (j) s += ", ";
            s += (*this)(i, j).to_string(names, fraction_form);
        }
    }
    return s + "]";
}

LMatrix kron(const LMatrix& a, const LMatrix& b) {
    if (a.nvars() != b.nvars()) throw ContextError("matrix variable contexts differ");
    LMatrix r(a.rows() * b.rows(), a.cols() * b.cols(), a.nvars());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a(i, j).is_zero()) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    if (!b(k, l).is_zero()) r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
        }
    return r;
}

}  // namespace sg
