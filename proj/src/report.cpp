#include "supergluing/report.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

#include "supergluing/errors.hpp"
#include "supergluing/family.hpp"
#include "supergluing/model_file.hpp"
#include "supergluing/obstruction.hpp"
#include "supergluing/secondary.hpp"

namespace sg {

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = {"verify",        "splitting-type", "obstruction", "attempt-split",
                                                   "rothstein",     "scale",          "glue-p1",     "secondary",
                                                   "a1-check",      "report-all"};
    return names;
}

bool is_command(const std::string& name) {
    const auto& n = command_names();
    return std::find(n.begin(), n.end(), name) != n.end();
}

void Report::add(const std::string& key, const std::string& value) { lines_.emplace_back(key, value); }

void Report::add(const std::string& key, const Q& q) { add(key, q_to_string(q, structured_)); }

void Report::add(const std::string& key, const Cochain& c) {
    if (!structured_) {
        std::string text = c.to_string(false);
        if (!text.empty() && text.back() == '\n') text.pop_back();
        if (text.find('\n') == std::string::npos) {
            add(key, text);
            return;
        }
        std::string indented = "\n";
        std::istringstream in(text);
        for (std::string line; std::getline(in, line);) indented += "    " + line + "\n";
        indented.pop_back();
        add(key, indented);
        return;
    }
    std::string text = c.to_string(true), flat;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        if (!flat.empty()) flat += "; ";
        const auto colon = line.find(": ");
        flat += colon == std::string::npos ? line : line.substr(0, colon) + "=" + line.substr(colon + 2);
    }
    add(key, flat);
}

std::string Report::str() const {
    std::string out;
    for (const auto& [k, v] : lines_) out += k + (structured_ ? "=" : ": ") + v + "\n";
    return out;
}

namespace {

struct Ctx {
    const RunConfig& cfg;
    const ModelFile& mf;
    Report& rep;
    int status = 0;
    void fail() { status = std::max(status, static_cast<int>(ExitCode::check_failed)); }
};

std::string poly_text(const LaurentPoly& p, const std::vector<std::string>& names, bool structured) {
    return p.to_string(names, structured);
}

std::string prefix(const SuperGluingData& g) { return "gluing." + (g.name.empty() ? std::string("unnamed") : g.name); }

std::vector<std::vector<Q>> sample_points(std::uint64_t seed, std::size_t dim, int count) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> num(-6, 6), den(1, 4);
    std::vector<std::vector<Q>> pts;
    pts.emplace_back(dim, Q(0));
    while (static_cast<int>(pts.size()) < count) {
        std::vector<Q> p;
        for (std::size_t i = 0; i < dim; ++i) {
            Q v(num(rng), den(rng));
            v.canonicalize();
            p.push_back(v);
        }
        pts.push_back(std::move(p));
    }
    return pts;
}

void verify_gluing(Ctx& c, const SuperGluingData& g) {
    const std::string k = prefix(g);
    const CocycleReport cr = verify_cocycle(g);
    if (!cr.ok) {
        c.rep.add(k + ".cocycle", "failed (" + cr.kind + " at " + cr.location + ": " + cr.detail + ")");
        c.fail();
        return;
    }
    c.rep.add(k + ".cocycle", "ok");
    const int j = presentation_splitting_type(g);
    if (g.declared_splitting_type) {
        const bool same = *g.declared_splitting_type == j;
        c.rep.add(k + ".declared-splitting-type",
                  same ? std::string("ok") : "mismatch (declared " + splitting_type_string(*g.declared_splitting_type) +
                                                 ", found " + splitting_type_string(j) + ")");
        if (!same) c.fail();
    }
    if (g.is_family()) {
        const auto pts = sample_points(c.cfg.seed, g.base_vars(), 10);
        std::string bad;
        for (const auto& p : pts) {
            const SplittingTriple t = embedding_splitting_triple(g, p);
            if (!t.lemma_holds()) {
                bad = "at point";
                for (const auto& v : p) bad += " " + q_to_string(v, c.rep.structured());
            }
        }
        c.rep.add(k + ".splitting-type-inequality", bad.empty() ? "ok (" + std::to_string(pts.size()) + " points)" : "failed " + bad);
        if (!bad.empty()) c.fail();
    }
}

void verify_gt(Ctx& c, const GtModel& m) {
    for (int J = 1; J <= m.rank(); ++J) {
        const std::string msg = check_filtration(m.filtrations.at(J));
        c.rep.add("gt-model.filtration." + std::to_string(J), msg.empty() ? std::string("ok") : "failed (" + msg + ")");
        if (!msg.empty()) c.fail();
    }
    const ModelClass mc = model_class(m);
    c.rep.add("gt-model.model-class.trivial", mc.cls.trivial);
    c.rep.add("gt-model.model-class.cross-check", mc.cross_check ? "ok" : "failed");
    if (!mc.cross_check) c.fail();
}

void cmd_verify(Ctx& c) {
    if (c.mf.atlas) c.rep.add("atlas", "ok");
    for (const auto& name : c.mf.sheaf_order) {
        verify_sheaf(*c.mf.sheaves.at(name));
        c.rep.add("sheaf." + name, "ok");
    }
    for (const auto& g : c.mf.gluings) verify_gluing(c, g);
    if (c.mf.gt_model) verify_gt(c, gt_model_from_file(c.mf));
    if (c.mf.base_atlas && !c.mf.witnesses.empty()) {
        const ConjugationCheck ck = verify_glued(glued_from_model(c.mf));
        c.rep.add("glued.witness", ck.ok ? std::string("ok") : "failed (" + ck.location + ")");
        if (!ck.ok) c.fail();
    }
}

void cmd_splitting_type(Ctx& c) {
    for (const auto& g : c.mf.gluings) {
        const std::string k = prefix(g);
        const CocycleReport cr = verify_cocycle(g);
        if (!cr.ok) {
            c.rep.add(k + ".cocycle", "failed (" + cr.kind + " at " + cr.location + ": " + cr.detail + ")");
            c.fail();
            continue;
        }
        if (c.cfg.at && g.is_family()) {
            const SplittingTriple t = embedding_splitting_triple(g, *c.cfg.at);
            c.rep.add(k + ".fiber.splitting-type", splitting_type_string(t.fiber));
            c.rep.add(k + ".embedding.splitting-type", splitting_type_string(t.embedding));
            c.rep.add(k + ".family.splitting-type", splitting_type_string(t.family));
            c.rep.add(k + ".inequality", t.lemma_holds() ? "ok" : "failed");
            if (!t.lemma_holds()) c.fail();
        } else {
            c.rep.add(k + ".splitting-type", splitting_type_string(presentation_splitting_type(g)));
        }
    }
}

void report_class(Ctx& c, const std::string& k, const ObstructionClass& w) {
    c.rep.add(k + ".level", w.level);
    c.rep.add(k + ".sheaf-rank", w.sheaf->rank);
    c.rep.add(k + ".representative", w.representative);
    c.rep.add(k + ".canonical", w.canonical());
    c.rep.add(k + ".trivial", w.trivial());
}

void cmd_obstruction(Ctx& c) {
    for (const auto& g : c.mf.gluings) {
        const std::string k = prefix(g);
        const int j = c.cfg.level ? *c.cfg.level : presentation_splitting_type(g);
        if (j == kInfinity) {
            c.rep.add(k + ".level", "inf");
            c.rep.add(k + ".class", "zero (split presentation)");
            if (g.is_family()) c.rep.add(k + ".characteristic-section", "0 (omega undefined)");
            continue;
        }
        const ObstructionClass w = obstruction_cocycle(g, j);
        report_class(c, k, w);
        if (g.is_family()) {
            c.rep.add(k + ".base-direction-components", w.base_components_zero ? "zero" : "nonzero");
            if (!w.base_components_zero) c.fail();
            const CharacteristicFactorization f = characteristic_factorization(g);
            if (f.omega) {
                c.rep.add(k + ".characteristic-section", poly_text(f.s, f.base_names, c.rep.structured()));
                c.rep.add(k + ".omega", f.omega->canonical());
            } else if (f.rank_one) {
                c.rep.add(k + ".characteristic-section", "0 (omega undefined)");
            }
            c.rep.add(k + ".rank-one", f.rank_one ? std::string("ok") : "failed (" + f.violation + ")");
            c.rep.add(k + ".residual-certified", f.residual_certified);
            if (!f.rank_one || !f.residual_certified) c.fail();
            if (c.cfg.at) {
                const SplittingTypeDifferential d = splitting_type_differential(g);
                c.rep.add(k + ".differential-at-point", d.evaluate(*c.cfg.at));
            }
        }
        if (g.base_odd > 0) {
            const Compatibility cp = compatibility_check(g);
            c.rep.add(k + ".compatibility", cp.ok ? std::string("ok") : "failed (" + cp.detail + ")");
            c.rep.add(k + ".compatibility.underlying", cp.underlying);
            c.rep.add(k + ".compatibility.projected", cp.projected);
            if (!cp.ok) c.fail();
            const RefinedType rt = refined_splitting_type(g);
            c.rep.add(k + ".refined-splitting-type", "(" + std::to_string(rt.a) + "," + std::to_string(rt.b) + ")");
        }
    }
}

void cmd_attempt_split(Ctx& c) {
    for (const auto& g : c.mf.gluings) {
        const std::string k = prefix(g);
        const SplitAttempt a = attempt_split(g);
        c.rep.add(k + ".split", a.split);
        std::string levels;
        for (int j : a.cleared_levels) levels += (levels.empty() ? "" : ",") + std::to_string(j);
        c.rep.add(k + ".cleared-levels", levels.empty() ? std::string("none") : levels);
        if (!a.adjusted_levels.empty()) {
            std::string adj;
            for (int j : a.adjusted_levels) adj += (adj.empty() ? "" : ",") + std::to_string(j);
            c.rep.add(k + ".adjusted-levels", adj);
        }
        if (a.fatal) {
            c.rep.add(k + ".fatal-level", a.fatal->level);
            c.rep.add(k + ".fatal-class", a.fatal->canonical());
        }
        for (const auto& [chart, t] : a.witness) {
            std::string text = transition_to_string(g, t, c.rep.structured());
            std::string flat;
            std::istringstream in(text);
            for (std::string line; std::getline(in, line);) {
                line.erase(0, line.find_first_not_of(' '));
                flat += (flat.empty() ? "" : "; ") + line;
            }
            c.rep.add(k + ".witness." + g.cover.charts[static_cast<std::size_t>(chart)].name, flat);
        }
    }
}

std::string as_comments(const Report& r) {
    std::string out;
    std::istringstream in(r.str());
    for (std::string line; std::getline(in, line);) out += "# " + line + "\n";
    return out;
}

void emit(Ctx& c, const std::string& body, std::ostream& out) {
    if (c.cfg.output.empty()) {
        out << as_comments(c.rep) << body;
        return;
    }
    std::ofstream f(c.cfg.output);
    if (!f) throw InvalidInput("cannot write '" + c.cfg.output + "'");
    f << body;
    c.rep.add("output", c.cfg.output);
    out << c.rep.str();
}

void cmd_rothstein(Ctx& c, std::ostream& out) {
    std::string body = "format-version 1\n";
    for (const auto& g : c.mf.gluings) {
        const SuperGluingData r = rothstein_family(g);
        c.rep.add(prefix(r) + ".cocycle", verify_cocycle(r).ok ? "ok" : "failed");
        body += "\n" + write_gluing(r);
    }
    emit(c, body, out);
}

void cmd_scale(Ctx& c, std::ostream& out) {
    if (!c.cfg.lambda) throw InvalidInput("scale needs --lambda");
    const Q lambda = *c.cfg.lambda;
    std::string body = "format-version 1\n";
    for (const auto& g : c.mf.gluings) {
        SuperGluingData s = scaling_action(g, lambda);
        s.name = g.name + "_scaled";
        const int j = presentation_splitting_type(g);
        if (j != kInfinity) {
            const ObstructionClass w = obstruction_cocycle(g, j);
            const ObstructionClass ws = obstruction_cocycle(s, j);
            const bool ok = ws.canonical() == scale_class(w, lambda).canonical();
            c.rep.add(prefix(g) + ".scale-factor", scale_factor(j, lambda));
            c.rep.add(prefix(g) + ".scaling-law", ok ? "ok" : "failed");
            if (!ok) c.fail();
        }
        body += "\n" + write_gluing(s);
    }
    emit(c, body, out);
}

void cmd_glue(Ctx& c, std::ostream& out) {
    if (c.mf.gluings.empty()) throw InvalidInput("glue-p1 needs a gluing section");
    const GluedFamily f = glue_over_p1(c.mf.gluings.front());
    const ConjugationCheck ck = verify_glued(f);
    c.rep.add("glued.witness", ck.ok ? std::string("ok") : "failed (" + ck.location + ")");
    if (!ck.ok) c.fail();
    emit(c, write_glued(f), out);
}

void cmd_secondary(Ctx& c) {
    const GtModel m = gt_model_from_file(c.mf);
    const ModelClass mc = model_class(m);
    c.rep.add("model-class.trivial", mc.cls.trivial);
    c.rep.add("model-class.canonical", mc.cls.residue);
    c.rep.add("model-class.cross-check", mc.cross_check ? "ok" : "failed");
    if (!mc.cross_check) c.fail();
    bool complex_ok = true;
    for (int J = 1; J <= m.rank(); ++J)
        for (int b = 0; b <= J; ++b)
            for (int p = 0; p <= 1; ++p) {
                const int a = J - b;
                const std::string k = "H[" + std::to_string(a) + "," + std::to_string(b) + "]_" + std::to_string(p);
                const SecondarySpace s = secondary_space(m, a, b, p, c.cfg.window);
                c.rep.add(k + ".dim", s.basis.size());
                if (p != 0 || a < 1) continue;
                for (std::size_t i = 0; i < s.basis.size(); ++i) {
                    const SecondaryImage d = secondary_differential(m, a, b, p, s.basis[i]);
                    const std::string ki = k + ".basis" + std::to_string(i);
                    c.rep.add(ki + ".differential", d.is_zero() ? std::string("0") : "nonzero");
                    if (!d.is_zero()) c.rep.add(ki + ".differential.canonical", d.cls.residue);
                    if (!d.is_zero() && a >= 2) {
                        const SecondaryImage dd = secondary_differential(m, a - 1, b + 1, p + 1, d.cls.residue);
                        if (!dd.is_zero()) complex_ok = false;
                    }
                }
            }
    c.rep.add("complex", complex_ok ? "ok" : "failed");
    if (!complex_ok) c.fail();
}

void cmd_a1(Ctx& c) {
    const GtModel m = gt_model_from_file(c.mf);
    for (int b = 0; b < m.rank(); ++b) {
        const A1Report r = verify_a1_containment(m, b, c.cfg.window);
        const std::string k = "a1.b" + std::to_string(b);
        c.rep.add(k + ".status", r.status);
        c.rep.add(k + ".basis", r.entries.size());
        for (std::size_t i = 0; i < r.entries.size(); ++i) {
            const A1Entry& e = r.entries[i];
            if (e.model_map.is_zero() && e.equal) continue;
            const std::string ki = k + ".nu" + std::to_string(i);
            c.rep.add(ki + ".model-class-map", e.model_map.cls.residue);
            c.rep.add(ki + ".differential-of-nu-prime", e.differential.cls.residue);
            c.rep.add(ki + ".equal", e.equal);
        }
        if (!r.ok) c.fail();
    }
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (!is_command(cfg.command)) {
        err << "error: unknown command '" << cfg.command << "'\n";
        return static_cast<int>(ExitCode::input_error);
    }
    try {
        const ModelFile mf = load_model(cfg.input);
        Report rep(cfg.structured);
        Ctx c{cfg, mf, rep};
        rep.add("command", cfg.command);
        const std::string& cmd = cfg.command;
        if (cmd == "verify") {
            cmd_verify(c);
        } else if (cmd == "splitting-type") {
            cmd_splitting_type(c);
        } else if (cmd == "obstruction") {
            cmd_obstruction(c);
        } else if (cmd == "attempt-split") {
            cmd_attempt_split(c);
        } else if (cmd == "rothstein") {
            cmd_rothstein(c, out);
            return c.status;
        } else if (cmd == "scale") {
            cmd_scale(c, out);
            return c.status;
        } else if (cmd == "glue-p1") {
            cmd_glue(c, out);
            return c.status;
        } else if (cmd == "secondary") {
            cmd_secondary(c);
        } else if (cmd == "a1-check") {
            cmd_a1(c);
        } else {
            cmd_verify(c);
            if (!mf.gluings.empty()) {
                cmd_splitting_type(c);
                cmd_obstruction(c);
                cmd_attempt_split(c);
            }
            if (mf.gt_model) {
                cmd_secondary(c);
                cmd_a1(c);
            }
        }
        rep.add("status", c.status == 0 ? "pass" : "fail");
        out << rep.str();
        return c.status;
    } catch (const ParseError& e) {
        err << cfg.input << ":" << e.what() << "\n";
        return static_cast<int>(ExitCode::input_error);
    } catch (const NeedsWindow& e) {
        err << "undecidable: " << e.what() << " (pass --window-lo/--window-hi)\n";
        return static_cast<int>(ExitCode::undecidable);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return static_cast<int>(ExitCode::input_error);
    }
}

}  // namespace sg
