#include "supergluing/sheaf.hpp"

#include <algorithm>

#include "supergluing/errors.hpp"

namespace sg {

const LMatrix& SheafSpec::matrix(int a, int b) const {
    auto it = matrices.find({a, b});
    if (it == matrices.end()) throw ContextError("sheaf has no transition on " + cover().simplex_name({a, b}));
    return it->second;
}

std::vector<LaurentPoly> SheafSpec::transport(const std::vector<LaurentPoly>& v, int a, int b) const {
    if (a == b) return v;
    return atlas->pull(matrix(b, a), a, b).apply(atlas->pull(v, a, b));
}

int SheafSpec::max_abs_exponent() const {
    int m = 0;
    for (const auto& [k, mat] : matrices) m = std::max(m, mat.max_abs_exponent());
    return m;
}

void verify_sheaf(const SheafSpec& s) {
    const Atlas& at = *s.atlas;
    for (const auto& [a, b] : at.cover.overlaps()) {
        const LMatrix& m = s.matrix(a, b);
        if (m.rows() != static_cast<std::size_t>(s.rank) || m.cols() != static_cast<std::size_t>(s.rank))
            throw InvalidInput("sheaf matrix on " + at.cover.simplex_name({a, b}) + " has wrong shape");
        if (!(at.pull(s.matrix(b, a), a, b) * m).is_identity())
            throw InvalidInput("sheaf matrices on " + at.cover.simplex_name({a, b}) + " are not inverse");
    }
    for (const auto& t : at.cover.triples()) {
        if (at.pull(s.matrix(t[1], t[2]), t[0], t[1]) * s.matrix(t[0], t[1]) != s.matrix(t[0], t[2]))
            throw InvalidInput("sheaf matrices violate the cocycle law on " + at.cover.simplex_name({t[0], t[1], t[2]}));
    }
}

SheafPtr make_sheaf(AtlasPtr atlas, int rank, std::map<Pair, LMatrix> matrices, std::vector<std::string> labels) {
    auto s = std::make_shared<SheafSpec>();
    s->atlas = atlas;
    s->rank = rank;
    for (const auto& [a, b] : atlas->cover.overlaps()) {
        if (matrices.count({a, b})) continue;
        auto it = matrices.find({b, a});
        if (it == matrices.end())
            throw InvalidInput("sheaf lacks a matrix on " + atlas->cover.simplex_name({a, b}));
        matrices[{a, b}] = it->second.inverse().substitute(atlas->map(a, b));
    }
    s->matrices = std::move(matrices);
    s->labels = std::move(labels);
    verify_sheaf(*s);
    return s;
}

SheafPtr trivial_sheaf(AtlasPtr atlas, int rank) {
    std::map<Pair, LMatrix> m;
    for (const auto& [a, b] : atlas->cover.overlaps())
        m[{a, b}] = LMatrix::identity(static_cast<std::size_t>(rank), atlas->cover.charts[static_cast<std::size_t>(a)].nvars());
    auto s = std::make_shared<SheafSpec>();
    s->atlas = atlas;
    s->rank = rank;
    s->matrices = std::move(m);
    return s;
}

namespace {

SheafPtr derived(const AtlasPtr& atlas, int rank, std::map<Pair, LMatrix> m) {
    auto s = std::make_shared<SheafSpec>();
    s->atlas = atlas;
    s->rank = rank;
    s->matrices = std::move(m);
    return s;
}

void same_atlas(const SheafPtr& a, const SheafPtr& b) {
    if (a->atlas != b->atlas && a->atlas->maps != b->atlas->maps) throw ContextError("sheaves live on different atlases");
}

}  // namespace

SheafPtr sheaf_dual(const SheafPtr& a) {
    std::map<Pair, LMatrix> m;
    for (const auto& [x, y] : a->cover().overlaps()) m[{x, y}] = a->atlas->pull(a->matrix(y, x), x, y).transpose();
    return derived(a->atlas, a->rank, std::move(m));
}

SheafPtr sheaf_tensor(const SheafPtr& a, const SheafPtr& b) {
    same_atlas(a, b);
    std::map<Pair, LMatrix> m;
    for (const auto& [x, y] : a->cover().overlaps()) m[{x, y}] = kron(a->matrix(x, y), b->matrix(x, y));
    return derived(a->atlas, a->rank * b->rank, std::move(m));
}

SheafPtr sheaf_hom(const SheafPtr& a, const SheafPtr& b) { return sheaf_tensor(sheaf_dual(a), b); }

std::vector<std::vector<int>> subsets(int n, int k) {
    std::vector<std::vector<int>> r;
    if (k < 0 || k > n) return r;
    std::vector<int> cur(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) cur[static_cast<std::size_t>(i)] = i;
    while (true) {
        r.push_back(cur);
        int i = k - 1;
        while (i >= 0 && cur[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) break;
        ++cur[static_cast<std::size_t>(i)];
        for (int l = i + 1; l < k; ++l) cur[static_cast<std::size_t>(l)] = cur[static_cast<std::size_t>(l - 1)] + 1;
    }
    return r;
}

SheafPtr sheaf_exterior_power(const SheafPtr& a, int k) {
    const auto sets = subsets(a->rank, k);
    std::map<Pair, LMatrix> m;
    for (const auto& [x, y] : a->cover().overlaps()) {
        const LMatrix& src = a->matrix(x, y);
        LMatrix w(sets.size(), sets.size(), src.nvars());
        for (std::size_t r = 0; r < sets.size(); ++r)
            for (std::size_t c = 0; c < sets.size(); ++c) {
                std::vector<std::size_t> rows(sets[r].begin(), sets[r].end()), cols(sets[c].begin(), sets[c].end());
                w(r, c) = src.select(rows, cols).determinant();
            }
        m[{x, y}] = std::move(w);
    }
    return derived(a->atlas, static_cast<int>(sets.size()), std::move(m));
}

SheafPtr sheaf_direct_sum(const SheafPtr& a, const SheafPtr& b) {
    same_atlas(a, b);
    std::map<Pair, LMatrix> m;
    const auto ra = static_cast<std::size_t>(a->rank), rb = static_cast<std::size_t>(b->rank);
    for (const auto& [x, y] : a->cover().overlaps()) {
        LMatrix s(ra + rb, ra + rb, a->matrix(x, y).nvars());
        s.set_block(0, 0, a->matrix(x, y));
        s.set_block(ra, ra, b->matrix(x, y));
        m[{x, y}] = std::move(s);
    }
    return derived(a->atlas, a->rank + b->rank, std::move(m));
}

SheafPtr extension_sheaf(const SheafPtr& sub, const SheafPtr& quot, const RawCochain& cocycle) {
    same_atlas(sub, quot);
    const Atlas& at = *sub->atlas;
    const auto rs = static_cast<std::size_t>(sub->rank), rq = static_cast<std::size_t>(quot->rank);
    std::map<Pair, LMatrix> m;
    for (const auto& [a, b] : at.cover.overlaps()) {
        if (a > b) continue;
        const std::size_t n = at.cover.charts[static_cast<std::size_t>(a)].nvars();
        LMatrix c(rs, rq, n);
        auto it = cocycle.find({a, b});
        if (it != cocycle.end()) {
            if (it->second.size() != rs * rq) throw InvalidInput("extension cocycle has wrong rank");
            for (std::size_t q = 0; q < rq; ++q)
                for (std::size_t s = 0; s < rs; ++s) c(s, q) = it->second[q * rs + s];
        }
        const LMatrix& A = sub->matrix(a, b);
        LMatrix fwd(rs + rq, rs + rq, n);
        fwd.set_block(0, 0, A);
        fwd.set_block(0, rs, -(A * c));
        fwd.set_block(rs, rs, quot->matrix(a, b));
        const LMatrix& Ab = sub->matrix(b, a);
        const LMatrix& Db = quot->matrix(b, a);
        LMatrix back(rs + rq, rs + rq, Ab.nvars());
        back.set_block(0, 0, Ab);
        back.set_block(0, rs, c.substitute(at.map(b, a)) * Db);
        back.set_block(rs, rs, Db);
        m[{a, b}] = std::move(fwd);
        m[{b, a}] = std::move(back);
    }
    auto s = std::make_shared<SheafSpec>();
    s->atlas = sub->atlas;
    s->rank = sub->rank + quot->rank;
    s->matrices = std::move(m);
    auto info = std::make_shared<ExtensionInfo>();
    info->sub = sub;
    info->quot = quot;
    info->cocycle = cocycle;
    s->extension = info;
    try {
        verify_sheaf(*s);
    } catch (const InvalidInput& e) {
        throw InvalidInput(std::string("invalid extension: ") + e.what());
    }
    return s;
}

namespace {

QMatrix coordinate_map(const std::vector<std::size_t>& to, const std::vector<std::size_t>& from) {
    QMatrix m(to.size(), from.size());
    for (std::size_t i = 0; i < to.size(); ++i)
        for (std::size_t j = 0; j < from.size(); ++j)
            if (to[i] == from[j]) m(i, j) = 1;
    return m;
}

SheafPtr restricted(const SheafPtr& amb, const std::vector<std::size_t>& idx) {
    std::map<Pair, LMatrix> m;
    for (const auto& [k, mat] : amb->matrices) m[k] = mat.select(idx, idx);
    return derived(amb->atlas, static_cast<int>(idx.size()), std::move(m));
}

}  // namespace

QMatrix FilteredSheaf::inclusion(int k) const {
    std::vector<std::size_t> all(basis.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return coordinate_map(all, piece_index.at(static_cast<std::size_t>(k)));
}

QMatrix FilteredSheaf::piece_map(int k_from, int k_to) const {
    return coordinate_map(piece_index.at(static_cast<std::size_t>(k_to)), piece_index.at(static_cast<std::size_t>(k_from)));
}

QMatrix FilteredSheaf::projection(int k) const {
    return coordinate_map(quotient_index.at(static_cast<std::size_t>(k)), piece_index.at(static_cast<std::size_t>(k)));
}

QMatrix FilteredSheaf::lift(int k) const {
    return coordinate_map(piece_index.at(static_cast<std::size_t>(k)), quotient_index.at(static_cast<std::size_t>(k)));
}

FilteredSheaf filtration(const SheafPtr& ext, int j) {
    if (!ext->extension) throw InvalidInput("filtration needs a sheaf built as an extension");
    FilteredSheaf f;
    f.j = j;
    f.source = ext;
    f.sub_rank = ext->extension->sub->rank;
    f.ambient = sheaf_exterior_power(ext, j);
    f.basis = subsets(ext->rank, j);
    for (int k = 0; k <= j + 1; ++k) {
        std::vector<std::size_t> piece, quot;
        for (std::size_t i = 0; i < f.basis.size(); ++i) {
            const int n = static_cast<int>(std::count_if(f.basis[i].begin(), f.basis[i].end(),
                                                         [&](int g) { return g < f.sub_rank; }));
            if (n >= k) piece.push_back(i);
            if (n == k) quot.push_back(i);
        }
        f.piece_index.push_back(piece);
        f.quotient_index.push_back(quot);
        f.pieces.push_back(restricted(f.ambient, piece));
        f.quotients.push_back(restricted(f.ambient, quot));
    }
    return f;
}

std::string check_filtration(const FilteredSheaf& f) {
    const auto& amb = *f.ambient;
    const Cover& cov = amb.cover();
    const auto& info = *f.source->extension;
    for (const auto& [a, b] : cov.overlaps()) {
        const LMatrix& m = amb.matrix(a, b);
        for (int k = 0; k <= f.j; ++k) {
            const auto& in = f.piece_index[static_cast<std::size_t>(k)];
            for (std::size_t r = 0; r < f.basis.size(); ++r) {
                if (std::find(in.begin(), in.end(), r) != in.end()) continue;
                for (std::size_t c : in)
                    if (!m(r, c).is_zero())
                        return "F_" + std::to_string(k) + " not preserved on " + cov.simplex_name({a, b});
            }
            const auto& qi = f.quotient_index[static_cast<std::size_t>(k)];
            if (qi.empty()) continue;
            const LMatrix expect = kron(sheaf_exterior_power(info.sub, k)->matrix(a, b),
                                        sheaf_exterior_power(info.quot, f.j - k)->matrix(a, b));
            if (m.select(qi, qi) != expect)
                return "quotient F_" + std::to_string(k) + "/F_" + std::to_string(k + 1) +
                       " differs from the product of exterior powers on " + cov.simplex_name({a, b});
        }
    }
    return {};
}

}  // namespace sg
