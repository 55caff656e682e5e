#include "supergluing/model_file.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "supergluing/errors.hpp"
#include "supergluing/expr.hpp"

namespace sg {

namespace {

struct Line {
    int no = 0;
    std::string text;  // comment stripped, trailing space trimmed
    int indent = 0;    // column offset of text[0]
};

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

class ModelParser {
public:
    explicit ModelParser(const std::string& text) {
        std::istringstream in(text);
        std::string raw;
        int no = 0;
        while (std::getline(in, raw)) {
            ++no;
            if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
            while (!raw.empty() && std::isspace(static_cast<unsigned char>(raw.back()))) raw.pop_back();
            std::size_t b = 0;
            while (b < raw.size() && std::isspace(static_cast<unsigned char>(raw[b]))) ++b;
            if (b == raw.size()) continue;
            lines_.push_back({no, raw.substr(b), static_cast<int>(b)});
        }
    }

    ModelFile parse() {
        if (lines_.empty()) throw ParseError("empty model file", 1, 1);
        const auto head = split_ws(lines_[0].text);
        if (head.size() != 2 || head[0] != "format-version") fail(lines_[0], "expected 'format-version 1'");
        if (head[1] != "1") fail(lines_[0], "unsupported format version " + head[1]);
        pos_ = 1;
        while (pos_ < lines_.size()) {
            const Line& l = lines_[pos_];
            if (l.text.front() != '[' || l.text.back() != ']') fail(l, "expected a section header");
            const auto words = split_ws(l.text.substr(1, l.text.size() - 2));
            if (words.empty()) fail(l, "empty section header");
            ++pos_;
            const std::string& kind = words[0];
            if (kind == "gluing")
                gluing(l, words.size() > 1 ? words[1] : "");
            else if (kind == "atlas")
                atlas(l);
            else if (kind == "sheaf") {
                if (words.size() != 2) fail(l, "sheaf section needs a name");
                sheaf(l, words[1]);
            } else if (kind == "gt-model")
                gt_model(l);
            else if (kind == "base-atlas")
                base_atlas(l);
            else if (kind == "witness") {
                if (words.size() != 3) fail(l, "witness section needs two base charts");
                witness(l, words[1], words[2]);
            } else
                fail(l, "unknown section '" + kind + "'");
        }
        return std::move(out_);
    }

private:
    [[noreturn]] static void fail(const Line& l, const std::string& msg, int col = 0) {
        throw ParseError(msg, l.no, l.indent + col + 1);
    }

    static int col_of(const Line& l, const std::string& word) {
        const auto at = l.text.find(word);
        return at == std::string::npos ? 0 : static_cast<int>(at);
    }

    bool section_done() const { return pos_ >= lines_.size() || lines_[pos_].text.front() == '['; }

    // chart NAME [even a,b] [base t] [odd q]
    static Chart chart_line(const Line& l, const std::vector<std::string>& w) {
        if (w.size() < 2) fail(l, "chart needs a name");
        Chart c;
        c.name = w[1];
        for (std::size_t i = 2; i < w.size(); i += 2) {
            if (i + 1 >= w.size()) fail(l, "missing value after '" + w[i] + "'", col_of(l, w[i]));
            if (w[i] == "even")
                c.fiber = split_list(w[i + 1]);
            else if (w[i] == "base")
                c.base = split_list(w[i + 1]);
            else if (w[i] == "odd") {
                const std::string& v = w[i + 1];
                const auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), c.odd_rank);
                if (ec != std::errc() || end != v.data() + v.size())
                    fail(l, "odd rank must be an integer", col_of(l, v));
                if (c.odd_rank < 0 || c.odd_rank > kMaxOddRank) fail(l, "odd rank out of range", col_of(l, v));
            } else
                fail(l, "unknown chart attribute '" + w[i] + "'", col_of(l, w[i]));
        }
        return c;
    }

    static int chart_index(const Cover& cov, const Line& l, const std::string& name) {
        const int i = cov.index(name);
        if (i < 0) fail(l, "unknown chart '" + name + "'");
        return i;
    }

    // Reads "lhs = rhs" lines up to "end".
    std::vector<std::pair<Line, std::size_t>> block(const Line& open) {
        std::vector<std::pair<Line, std::size_t>> out;
        while (true) {
            if (pos_ >= lines_.size()) fail(open, "missing 'end'");
            const Line& l = lines_[pos_++];
            if (l.text == "end") return out;
            if (l.text.front() == '[') fail(l, "missing 'end' before section header");
            out.emplace_back(l, l.text.find('='));
        }
    }

    SuperTransition transition_block(const Cover& cov, const Line& open, int a, int b, int base_odd) {
        const Chart& src = cov.charts[static_cast<std::size_t>(a)];
        const Chart& tgt = cov.charts[static_cast<std::size_t>(b)];
        const auto sn = src.names();
        const auto tn = tgt.names();
        SuperTransition t;
        t.source = a;
        t.target = b;
        std::vector<std::optional<GrassmannElement>> even(tn.size()), odd(static_cast<std::size_t>(tgt.odd_rank));
        for (const auto& [l, eq] : block(open)) {
            if (eq == std::string::npos) fail(l, "expected 'coordinate = expression'");
            std::string lhs = l.text.substr(0, eq);
            while (!lhs.empty() && std::isspace(static_cast<unsigned char>(lhs.back()))) lhs.pop_back();
            const std::string rhs = l.text.substr(eq + 1);
            GrassmannElement e = parse_element(rhs, sn, src.odd_rank, l.no, l.indent + static_cast<int>(eq) + 2);
            bool found = false;
            for (std::size_t k = 0; k < tn.size(); ++k)
                if (tn[k] == lhs) {
                    if (even[k]) fail(l, "coordinate '" + lhs + "' assigned twice");
                    even[k] = std::move(e);
                    found = true;
                    break;
                }
            if (!found) {
                if (lhs.rfind("theta_", 0) != 0) fail(l, "unknown target coordinate '" + lhs + "'");
                int g = 0;
                try {
                    g = std::stoi(lhs.substr(6));
                } catch (...) {
                    fail(l, "bad odd generator '" + lhs + "'");
                }
                if (g < 1 || g > tgt.odd_rank) fail(l, "odd generator '" + lhs + "' out of range");
                if (odd[static_cast<std::size_t>(g - 1)]) fail(l, "coordinate '" + lhs + "' assigned twice");
                odd[static_cast<std::size_t>(g - 1)] = std::move(e);
            }
        }
        for (std::size_t k = 0; k < tn.size(); ++k) {
            if (even[k]) {
                t.even.push_back(*even[k]);
            } else if (k >= tgt.fiber.size()) {
                t.even.push_back(GrassmannElement::even_coordinate(src.nvars(), src.odd_rank, src.fiber.size() + (k - tgt.fiber.size())));
            } else {
                fail(open, "transition " + src.name + " -> " + tgt.name + " lacks a map for '" + tn[k] + "'");
            }
        }
        for (int k = 0; k < tgt.odd_rank; ++k) {
            if (odd[static_cast<std::size_t>(k)])
                t.odd.push_back(*odd[static_cast<std::size_t>(k)]);
            else if (k < base_odd)
                t.odd.push_back(GrassmannElement::generator(src.nvars(), src.odd_rank, k + 1));
            else
                fail(open, "transition " + src.name + " -> " + tgt.name + " lacks a map for theta_" + std::to_string(k + 1));
        }
        return t;
    }

    void gluing(const Line& head, const std::string& name) {
        SuperGluingData g;
        g.name = name;
        std::vector<std::pair<Line, std::vector<std::string>>> triples;
        while (!section_done()) {
            const Line& l = lines_[pos_++];
            const auto w = split_ws(l.text);
            if (w[0] == "chart") {
                if (!g.transitions.empty()) fail(l, "charts must precede transitions");
                Chart c = chart_line(l, w);
                if (g.cover.index(c.name) >= 0) fail(l, "duplicate chart '" + c.name + "'");
                g.cover.charts.push_back(std::move(c));
            } else if (w[0] == "base-odd") {
                if (w.size() != 2) fail(l, "base-odd needs a count");
                g.base_odd = std::stoi(w[1]);
            } else if (w[0] == "splitting-type") {
                if (w.size() != 2) fail(l, "splitting-type needs a value");
                g.declared_splitting_type = w[1] == "inf" ? kInfinity : std::stoi(w[1]);
            } else if (w[0] == "triple") {
                if (w.size() != 4) fail(l, "triple needs three charts");
                triples.emplace_back(l, w);
            } else if (w[0] == "transition") {
                if (w.size() != 3) fail(l, "transition needs source and target charts");
                const int a = chart_index(g.cover, l, w[1]), b = chart_index(g.cover, l, w[2]);
                if (a == b) fail(l, "transition from a chart to itself");
                if (g.transitions.count({a, b})) fail(l, "duplicate transition");
                g.cover.add_overlap(a, b);
                g.transitions[{a, b}] = transition_block(g.cover, l, a, b, g.base_odd);
            } else {
                fail(l, "unknown gluing directive '" + w[0] + "'");
            }
        }
        if (g.cover.charts.empty()) fail(head, "gluing section without charts");
        const auto& c0 = g.cover.charts.front();
        for (const auto& c : g.cover.charts)
            if (c.fiber.size() != c0.fiber.size() || c.base.size() != c0.base.size() || c.odd_rank != c0.odd_rank)
                fail(head, "chart " + c.name + " has a different dimension from " + c0.name);
        for (const auto& [l, w] : triples) {
            try {
                g.cover.add_triple(chart_index(g.cover, l, w[1]), chart_index(g.cover, l, w[2]), chart_index(g.cover, l, w[3]));
            } catch (const InvalidInput& e) {
                fail(l, e.what());
            }
        }
        try {
            complete_inverses(g);
        } catch (const Error& e) {
            fail(head, std::string("cannot complete inverse transitions: ") + e.what());
        }
        out_.gluings.push_back(std::move(g));
    }

    Atlas atlas_body(const Line& head, bool base_charts) {
        Atlas at;
        std::vector<std::pair<Line, std::vector<std::string>>> triples;
        while (!section_done()) {
            const Line& l = lines_[pos_++];
            const auto w = split_ws(l.text);
            if (w[0] == "chart") {
                Chart c = chart_line(l, w);
                if (base_charts) {
                    c.fiber = c.base;
                    c.base.clear();
                }
                if (c.odd_rank != 0) fail(l, "atlas charts carry no odd generators");
                at.cover.charts.push_back(std::move(c));
            } else if (w[0] == "triple") {
                if (w.size() != 4) fail(l, "triple needs three charts");
                triples.emplace_back(l, w);
            } else if (w[0] == "map") {
                if (w.size() != 3) fail(l, "map needs source and target charts");
                const int a = chart_index(at.cover, l, w[1]), b = chart_index(at.cover, l, w[2]);
                at.cover.add_overlap(a, b);
                const SuperTransition t = transition_block(at.cover, l, a, b, 0);
                std::vector<LaurentPoly> f;
                for (const auto& e : t.even) f.push_back(e.reduced());
                at.maps[{a, b}] = std::move(f);
            } else {
                fail(l, "unknown atlas directive '" + w[0] + "'");
            }
        }
        if (at.cover.charts.empty()) fail(head, "atlas without charts");
        for (const auto& [l, w] : triples) {
            try {
                at.cover.add_triple(chart_index(at.cover, l, w[1]), chart_index(at.cover, l, w[2]), chart_index(at.cover, l, w[3]));
            } catch (const InvalidInput& e) {
                fail(l, e.what());
            }
        }
        for (const auto& [a, b] : at.cover.overlaps()) {
            if (at.maps.count({a, b})) continue;
            const auto& f = at.maps.at({b, a});
            SuperTransition t;
            t.source = b;
            t.target = a;
            for (const auto& p : f) t.even.push_back(GrassmannElement::scalar(p, 0));
            try {
                const SuperTransition inv = invert_transition(t, at.cover.charts[static_cast<std::size_t>(b)],
                                                              at.cover.charts[static_cast<std::size_t>(a)]);
                std::vector<LaurentPoly> g;
                for (const auto& e : inv.even) g.push_back(e.reduced());
                at.maps[{a, b}] = std::move(g);
            } catch (const Error& e) {
                fail(head, e.what());
            }
        }
        try {
            at.verify();
        } catch (const Error& e) {
            fail(head, e.what());
        }
        return at;
    }

    void atlas(const Line& head) {
        if (out_.atlas) fail(head, "duplicate atlas section");
        out_.atlas = std::make_shared<Atlas>(atlas_body(head, false));
    }

    std::vector<LaurentPoly> row(const Line& l, const std::vector<std::string>& names, std::size_t expect) {
        std::vector<LaurentPoly> out;
        std::size_t start = 0;
        while (true) {
            std::size_t comma = l.text.find(',', start);
            const std::string piece = l.text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            out.push_back(parse_laurent(piece, names, l.no, l.indent + static_cast<int>(start) + 1));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (out.size() != expect) fail(l, "expected " + std::to_string(expect) + " entries, found " + std::to_string(out.size()));
        return out;
    }

    LMatrix matrix_block(const Line& open, const Chart& src, std::size_t rows, std::size_t cols) {
        LMatrix m(rows, cols, src.nvars());
        std::size_t r = 0;
        while (true) {
            if (pos_ >= lines_.size()) fail(open, "missing 'end'");
            const Line& l = lines_[pos_++];
            if (l.text == "end") break;
            if (r >= rows) fail(l, "too many matrix rows");
            const auto v = row(l, src.names(), cols);
            for (std::size_t c = 0; c < cols; ++c) m(r, c) = v[c];
            ++r;
        }
        if (r != rows) fail(open, "expected " + std::to_string(rows) + " matrix rows");
        return m;
    }

    void sheaf(const Line& head, const std::string& name) {
        if (!out_.atlas) fail(head, "sheaf section needs a preceding atlas section");
        if (out_.sheaves.count(name)) fail(head, "duplicate sheaf '" + name + "'");
        int rank = -1;
        std::map<Pair, LMatrix> mats;
        while (!section_done()) {
            const Line& l = lines_[pos_++];
            const auto w = split_ws(l.text);
            if (w[0] == "rank") {
                if (w.size() != 2) fail(l, "rank needs a value");
                rank = std::stoi(w[1]);
            } else if (w[0] == "matrix") {
                if (rank < 0) fail(l, "rank must precede matrices");
                if (w.size() != 3) fail(l, "matrix needs source and target charts");
                const int a = chart_index(out_.atlas->cover, l, w[1]), b = chart_index(out_.atlas->cover, l, w[2]);
                if (!out_.atlas->cover.has_overlap(a, b)) fail(l, "no overlap between " + w[1] + " and " + w[2]);
                const auto r = static_cast<std::size_t>(rank);
                mats[{a, b}] = matrix_block(l, out_.atlas->cover.charts[static_cast<std::size_t>(a)], r, r);
            } else {
                fail(l, "unknown sheaf directive '" + w[0] + "'");
            }
        }
        if (rank < 0) fail(head, "sheaf without rank");
        try {
            out_.sheaves[name] = make_sheaf(out_.atlas, rank, std::move(mats));
        } catch (const Error& e) {
            fail(head, e.what());
        }
        out_.sheaf_order.push_back(name);
    }

    void gt_model(const Line& head) {
        if (!out_.atlas) fail(head, "gt-model section needs a preceding atlas section");
        GtModelDecl d;
        d.line = head.no;
        while (!section_done()) {
            const Line& l = lines_[pos_++];
            const auto w = split_ws(l.text);
            if (w[0] == "fiber") {
                if (w.size() != 2 || !out_.sheaves.count(w[1])) fail(l, "fiber must name a declared sheaf");
                d.fiber = w[1];
            } else if (w[0] == "base-rank") {
                if (w.size() != 2) fail(l, "base-rank needs a value");
                d.base_rank = std::stoi(w[1]);
            } else if (w[0] == "theta") {
                if (d.fiber.empty() || d.base_rank <= 0) fail(l, "fiber and base-rank must precede theta");
                if (w.size() != 3) fail(l, "theta needs source and target charts");
                const int a = chart_index(out_.atlas->cover, l, w[1]), b = chart_index(out_.atlas->cover, l, w[2]);
                if (a > b) fail(l, "theta entries are given on increasing chart pairs");
                const auto m = static_cast<std::size_t>(out_.sheaves.at(d.fiber)->rank);
                const auto n = static_cast<std::size_t>(d.base_rank);
                const LMatrix phi = matrix_block(l, out_.atlas->cover.charts[static_cast<std::size_t>(a)], n, m);
                std::vector<LaurentPoly> v(n * m);
                for (std::size_t s = 0; s < n; ++s)
                    for (std::size_t q = 0; q < m; ++q) v[q * n + s] = phi(s, q);
                d.theta[{a, b}] = std::move(v);
            } else {
                fail(l, "unknown gt-model directive '" + w[0] + "'");
            }
        }
        if (d.fiber.empty() || d.base_rank <= 0) fail(head, "gt-model needs fiber and base-rank");
        out_.gt_model = std::move(d);
    }

    void base_atlas(const Line& head) {
        BaseAtlasDecl b;
        b.atlas = atlas_body(head, true);
        out_.base_atlas = std::move(b);
    }

    void witness(const Line& head, const std::string& from, const std::string& to) {
        if (!out_.base_atlas) fail(head, "witness section needs a preceding base-atlas section");
        const Cover& cov = out_.base_atlas->atlas.cover;
        const int a = chart_index(cov, head, from);
        chart_index(cov, head, to);
        WitnessDecl w;
        w.from = from;
        w.to = to;
        w.line = head.no;
        bool have = false;
        while (!section_done()) {
            const Line& l = lines_[pos_++];
            const auto ws = split_ws(l.text);
            if (ws[0] != "scale" || ws.size() < 2) fail(l, "expected 'scale EXPR'");
            const std::size_t at = l.text.find("scale") + 5;
            w.scale = parse_laurent(l.text.substr(at), cov.charts[static_cast<std::size_t>(a)].names(), l.no, l.indent + static_cast<int>(at) + 1);
            have = true;
        }
        if (!have) fail(head, "witness without scale");
        out_.witnesses.push_back(std::move(w));
    }

    std::vector<Line> lines_;
    std::size_t pos_ = 0;
    ModelFile out_;
};

}  // namespace

ModelFile parse_model(const std::string& text) { return ModelParser(text).parse(); }

ModelFile load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_model(ss.str());
}

namespace {

std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
    return s;
}

}  // namespace

std::string write_gluing(const SuperGluingData& g) {
    std::string out = "[gluing" + (g.name.empty() ? std::string() : " " + g.name) + "]\n";
    for (const auto& c : g.cover.charts) {
        out += "chart " + c.name;
        if (!c.fiber.empty()) out += " even " + join(c.fiber);
        if (!c.base.empty()) out += " base " + join(c.base);
        out += " odd " + std::to_string(c.odd_rank) + "\n";
    }
    if (g.base_odd > 0) out += "base-odd " + std::to_string(g.base_odd) + "\n";
    if (g.declared_splitting_type) out += "splitting-type " + splitting_type_string(*g.declared_splitting_type) + "\n";
    for (const auto& [key, t] : g.transitions) {
        out += "transition " + g.cover.charts[static_cast<std::size_t>(key.first)].name + " " +
               g.cover.charts[static_cast<std::size_t>(key.second)].name + "\n";
        out += transition_to_string(g, t);
        out += "end\n";
    }
    for (const auto& t : g.cover.triples())
        out += "triple " + g.cover.charts[static_cast<std::size_t>(t[0])].name + " " +
               g.cover.charts[static_cast<std::size_t>(t[1])].name + " " + g.cover.charts[static_cast<std::size_t>(t[2])].name + "\n";
    return out;
}

}  // namespace sg
