#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <sstream>

#include "supergluing/errors.hpp"
#include "supergluing/family.hpp"
#include "supergluing/model_file.hpp"
#include "supergluing/obstruction.hpp"
#include "supergluing/report.hpp"
#include "supergluing/secondary.hpp"

namespace py = pybind11;
using namespace sg;

namespace {

// Rationals cross the boundary as "num/den" strings; Python's Fraction parses them.
std::string rat(const Q& q) { return q_to_string(q, true); }

std::string cochain_text(const Cochain& c) {
    std::string s = c.to_string(true);
    if (!s.empty() && s.back() == '\n') s.pop_back();
    return s;
}

py::object level_value(int j) {
    if (j == kInfinity) return py::float_(INFINITY);
    return py::int_(j);
}

py::dict class_dict(const ObstructionClass& w) {
    py::dict d;
    d["level"] = w.level;
    d["even"] = w.even;
    d["trivial"] = w.trivial();
    d["representative"] = cochain_text(w.representative);
    d["canonical"] = cochain_text(w.canonical());
    d["base_components_zero"] = w.base_components_zero;
    return d;
}

std::vector<Q> parse_point(const std::vector<std::string>& p) {
    std::vector<Q> out;
    for (const auto& s : p) out.push_back(q_parse(s));
    return out;
}

GtModel gt_of(const ModelFile& m) {
    if (!m.gt_model) throw InvalidInput("model file has no [gt-model] section");
    return gt_model_from_file(m);
}

}  // namespace

PYBIND11_MODULE(_supergluing, mod) {
    mod.doc() = "Exact gluing data, obstruction classes and secondary obstructions for supermanifolds";

    // translators run newest first, so the base class is registered first
    auto& base_exc = py::register_exception<Error>(mod, "Error", PyExc_RuntimeError);
    py::register_exception<ParseError>(mod, "ParseError", base_exc.ptr());
    py::register_exception<LevelError>(mod, "LevelError", base_exc.ptr());

    py::class_<SuperGluingData>(mod, "Gluing")
        .def_readonly("name", &SuperGluingData::name)
        .def_readonly("base_odd", &SuperGluingData::base_odd)
        .def_property_readonly("odd_rank", &SuperGluingData::odd_rank)
        .def_property_readonly("is_family", &SuperGluingData::is_family)
        .def_property_readonly("charts",
                               [](const SuperGluingData& g) {
                                   std::vector<std::string> n;
                                   for (const auto& c : g.cover.charts) n.push_back(c.name);
                                   return n;
                               })
        .def("to_text", &write_gluing)
        .def("__repr__", [](const SuperGluingData& g) { return "<Gluing " + g.name + ">"; });

    py::class_<ModelFile>(mod, "Model")
        .def_readonly("gluings", &ModelFile::gluings)
        .def_property_readonly("has_gt_model", [](const ModelFile& m) { return m.gt_model.has_value(); })
        .def_property_readonly("is_glued", [](const ModelFile& m) { return m.base_atlas.has_value(); })
        .def("gluing", [](const ModelFile& m, const std::string& name) {
            for (const auto& g : m.gluings)
                if (g.name == name) return g;
            throw py::key_error(name);
        });

    mod.def("parse_model", &parse_model, py::arg("text"));
    mod.def("load_model", &load_model, py::arg("path"));

    mod.def(
        "verify_cocycle",
        [](const SuperGluingData& g) {
            auto r = verify_cocycle(g);
            py::dict d;
            d["ok"] = r.ok;
            d["kind"] = r.kind;
            d["location"] = r.location;
            d["detail"] = r.detail;
            return d;
        },
        py::arg("gluing"));

    mod.def("splitting_type", [](const SuperGluingData& g) { return level_value(splitting_type(g)); });
    mod.def("presentation_splitting_type",
            [](const SuperGluingData& g) { return level_value(presentation_splitting_type(g)); });
    mod.def(
        "splitting_triple",
        [](const SuperGluingData& g, const std::vector<std::string>& at) {
            auto t = embedding_splitting_triple(g, parse_point(at));
            return py::make_tuple(level_value(t.embedding), level_value(t.fiber), level_value(t.family));
        },
        py::arg("gluing"), py::arg("at"));
    mod.def(
        "restrict_fiber",
        [](const SuperGluingData& g, const std::vector<std::string>& at) { return restrict_fiber(g, parse_point(at)); },
        py::arg("gluing"), py::arg("at"));

    mod.def(
        "obstruction",
        [](const SuperGluingData& g, int level) { return class_dict(obstruction_cocycle(g, level)); },
        py::arg("gluing"), py::arg("level"));

    mod.def(
        "attempt_split",
        [](const SuperGluingData& g) {
            auto a = attempt_split(g);
            py::dict d;
            d["split"] = a.split;
            d["cleared_levels"] = a.cleared_levels;
            d["result"] = a.result;
            d["fatal"] = a.fatal ? py::object(class_dict(*a.fatal)) : py::object(py::none());
            return d;
        },
        py::arg("gluing"));

    mod.def(
        "scale",
        [](const SuperGluingData& g, const std::string& lambda) { return scaling_action(g, q_parse(lambda)); },
        py::arg("gluing"), py::arg("lam"));
    mod.def("scale_factor", [](int level, const std::string& lambda) { return rat(scale_factor(level, q_parse(lambda))); });

    mod.def("rothstein", &rothstein_family, py::arg("gluing"), py::arg("base") = "t");

    mod.def(
        "characteristic_factorization",
        [](const SuperGluingData& family) {
            auto f = characteristic_factorization(family);
            py::dict d;
            d["level"] = level_value(f.level);
            d["s"] = f.s.to_string(f.base_names);
            d["omega"] = f.omega ? py::object(py::str(cochain_text(f.omega->canonical()))) : py::object(py::none());
            d["rank_one"] = f.rank_one;
            d["violation"] = f.violation;
            d["certified"] = f.residual_certified;
            return d;
        },
        py::arg("family"));

    mod.def(
        "isotriviality",
        [](const SuperGluingData& family, const std::string& t0, const std::string& t1) {
            auto w = isotriviality_witness(family, q_parse(t0), q_parse(t1));
            return py::make_tuple(w.check.ok, rat(w.lambda), w.check.location);
        },
        py::arg("family"), py::arg("t0"), py::arg("t1"));

    mod.def(
        "glue_over_p1",
        [](const SuperGluingData& g) {
            auto f = glue_over_p1(g);
            auto check = verify_glued(f);
            return py::make_tuple(write_glued(f), check.ok);
        },
        py::arg("gluing"));

    mod.def(
        "secondary_dimension",
        [](const ModelFile& m, int a, int b, int p) {
            return secondary_space(gt_of(m), a, b, p).basis.size();
        },
        py::arg("model"), py::arg("a"), py::arg("b"), py::arg("p"));

    mod.def(
        "a1_check",
        [](const ModelFile& m, int b) {
            auto r = verify_a1_containment(gt_of(m), b);
            py::dict d;
            d["decided"] = r.decided;
            d["ok"] = r.ok;
            d["status"] = r.status;
            d["basis"] = r.entries.size();
            return d;
        },
        py::arg("model"), py::arg("b"));

    mod.def(
        "compatibility",
        [](const SuperGluingData& g) {
            auto c = compatibility_check(g);
            return py::make_tuple(c.ok, cochain_text(c.underlying), cochain_text(c.projected));
        },
        py::arg("gluing"));

    mod.def("commands", &command_names);
    mod.def(
        "run",
        [](const std::string& command, const std::string& input, bool structured, std::uint64_t seed,
           std::optional<int> level, std::optional<std::string> lambda) {
            RunConfig cfg;
            cfg.command = command;
            cfg.input = input;
            cfg.structured = structured;
            cfg.seed = seed;
            cfg.level = level;
            if (lambda) cfg.lambda = q_parse(*lambda);
            std::ostringstream out, err;
            int code = run(cfg, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("command"), py::arg("input"), py::arg("structured") = false, py::arg("seed") = 1,
        py::arg("level") = py::none(), py::arg("lam") = py::none());
}
