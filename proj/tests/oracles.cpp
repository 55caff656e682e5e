#include "oracles.hpp"

#include <algorithm>
#include <stdexcept>

#ifndef SG_GOLDEN_DIR
#define SG_GOLDEN_DIR "golden"
#endif

namespace oracle {

namespace {

std::vector<int> indices_of(std::size_t mask, int q) {
    std::vector<int> r;
    for (int g = 1; g <= q; ++g)
        if (mask >> (g - 1) & 1u) r.push_back(g);
    return r;
}

std::vector<std::vector<int>> lex_subsets(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i < n; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

}  // namespace

int concat_sign(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> v = a;
    v.insert(v.end(), b.begin(), b.end());
    int swaps = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j + 1 < v.size() - i; ++j) {
            if (v[j] == v[j + 1]) return 0;
            if (v[j] > v[j + 1]) {
                std::swap(v[j], v[j + 1]);
                ++swaps;
            }
        }
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
        if (v[i] == v[i + 1]) return 0;
    return swaps % 2 ? -1 : 1;
}

DenseGrassmann DenseGrassmann::operator*(const DenseGrassmann& o) const {
    DenseGrassmann r(q);
    for (std::size_t a = 0; a < c.size(); ++a) {
        if (c[a] == 0) continue;
        for (std::size_t b = 0; b < o.c.size(); ++b) {
            if (o.c[b] == 0) continue;
            const int s = concat_sign(indices_of(a, q), indices_of(b, q));
            if (s != 0) r.c[a | b] += s * c[a] * o.c[b];
        }
    }
    return r;
}

DenseGrassmann DenseGrassmann::operator+(const DenseGrassmann& o) const {
    DenseGrassmann r = *this;
    for (std::size_t i = 0; i < c.size(); ++i) r.c[i] += o.c[i];
    return r;
}

DenseGrassmann DenseGrassmann::from(const sg::GrassmannElement& e) {
    if (e.nvars() != 0) throw std::logic_error("dense oracle takes scalar coefficients only");
    DenseGrassmann r(e.odd_rank());
    for (const auto& [I, p] : e.terms()) r.c[I.mask()] = p.constant_term();
    return r;
}

sg::GrassmannElement DenseGrassmann::to_element() const {
    sg::GrassmannElement r(0, q);
    for (std::size_t m = 0; m < c.size(); ++m)
        r.add_term(sg::MultiIndex::from_mask(static_cast<std::uint32_t>(m)), sg::LaurentPoly::constant(0, c[m]));
    return r;
}

std::size_t rank(std::vector<std::vector<Q>> rows) {
    std::size_t r = 0;
    if (rows.empty()) return 0;
    const std::size_t cols = rows.front().size();
    for (std::size_t col = 0; col < cols && r < rows.size(); ++col) {
        std::size_t piv = r;
        while (piv < rows.size() && rows[piv][col] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[r]);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][col] == 0) continue;
            const Q f = rows[i][col] / rows[r][col];
            for (std::size_t j = col; j < cols; ++j) rows[i][j] -= f * rows[r][j];
        }
        ++r;
    }
    return r;
}

WindowCohomology line_bundle_cohomology(int e, int W) {
    const int K = W + std::abs(e) + 2;
    // overlap exponents reachable by any truncated 0-cochain
    const int lo = std::min(-K, e - K), hi = std::max(K, e + K);
    const std::size_t width = static_cast<std::size_t>(hi - lo + 1);
    auto unit = [&](int m) {
        std::vector<Q> v(width);
        v[static_cast<std::size_t>(m - lo)] = 1;
        return v;
    };
    // columns of delta: f = x^k on U0 gives -x^k; g = y^k on U1 gives x^e * x^-k
    std::vector<std::vector<Q>> image;
    for (int k = 0; k <= K; ++k) {
        auto v = unit(k);
        for (auto& x : v) x = -x;
        image.push_back(v);
    }
    for (int k = 0; k <= K; ++k) image.push_back(unit(e - k));

    WindowCohomology out;
    out.h0 = image.size() - rank(image);

    // H^1 inside the window: window monomials modulo the image
    std::vector<std::vector<Q>> in_window;
    for (const auto& v : image) {
        bool inside = true;
        for (std::size_t i = 0; i < width; ++i)
            if (v[i] != 0 && (static_cast<int>(i) + lo < -W || static_cast<int>(i) + lo > W)) inside = false;
        if (inside) in_window.push_back(v);
    }
    const std::size_t base = rank(in_window);
    out.h1 = static_cast<std::size_t>(2 * W + 1) - base;
    for (int m = -W; m <= W; ++m) {
        auto trial = in_window;
        trial.push_back(unit(m));
        if (rank(trial) > base) out.gap.insert(m);
    }
    return out;
}

sg::LaurentPoly det_laplace(const sg::LMatrix& m) {
    const std::size_t n = m.rows();
    if (n == 0) return sg::LaurentPoly::constant(m.nvars(), 1);
    if (n == 1) return m(0, 0);
    sg::LaurentPoly r(m.nvars());
    std::vector<std::size_t> rows;
    for (std::size_t i = 1; i < n; ++i) rows.push_back(i);
    for (std::size_t j = 0; j < n; ++j) {
        if (m(0, j).is_zero()) continue;
        std::vector<std::size_t> cols;
        for (std::size_t k = 0; k < n; ++k)
            if (k != j) cols.push_back(k);
        const sg::LaurentPoly term = m(0, j) * det_laplace(m.select(rows, cols));
        if (j % 2)
            r -= term;
        else
            r += term;
    }
    return r;
}

sg::LMatrix compound(const sg::LMatrix& m, int k) {
    const auto rs = lex_subsets(static_cast<int>(m.rows()), k);
    const auto cs = lex_subsets(static_cast<int>(m.cols()), k);
    sg::LMatrix out(rs.size(), cs.size(), m.nvars());
    auto conv = [](const std::vector<int>& s) { return std::vector<std::size_t>(s.begin(), s.end()); };
    for (std::size_t i = 0; i < rs.size(); ++i)
        for (std::size_t j = 0; j < cs.size(); ++j) out(i, j) = det_laplace(m.select(conv(rs[i]), conv(cs[j])));
    return out;
}

std::string golden_path(const std::string& name) { return std::string(SG_GOLDEN_DIR) + "/" + name; }

sg::ModelFile golden(const std::string& name) { return sg::load_model(golden_path(name)); }

}  // namespace oracle
