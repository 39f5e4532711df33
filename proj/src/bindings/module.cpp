#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "dglift/json_io.hpp"

namespace py = pybind11;
using namespace dglift;

namespace {

std::string op_check(const std::string& text) {
    Problem P = load_problem_text(text);
    json report = json::object();
    ValidationReport ar = P.algebra->validate();
    report["algebra"] = ar.ok() ? "ok" : ar.first_failure();
    bool ok = ar.ok();
    if (P.module) report["module"] = "valid";
    if (P.module2) report["module2"] = "valid";
    if (P.generic) {
        ValidationReport gr = P.generic->validate();
        report["complex"] = gr.ok() ? "valid" : gr.first_failure();
        ok = ok && gr.ok();
    }
    report["ok"] = ok;
    return report.dump();
}

std::string op_homology(const std::string& text) {
    Problem P = load_problem_text(text);
    std::map<int, std::vector<int>> h;
    if (P.module) {
        int lo = P.module->lo_component() - 1, hi = P.module->hi_component() + 1;
        if (P.module->truncated()) hi = std::min(hi, P.module->truncation_top() - 1);
        if (hi < lo) hi = lo;
        if (P.window) lo = P.window->first, hi = P.window->second;
        h = homology(*P.module, lo, hi);
    } else if (P.generic) {
        const RComplex& C = P.generic->components;
        int lo = C.lo - 1, hi = P.generic->truncated_above ? C.hi() - 1 : C.hi() + 1;
        if (P.window) lo = P.window->first, hi = P.window->second;
        h = C.homology(lo, hi);
    } else {
        throw SchemaError("homology needs a module or a complex");
    }
    json hj = json::object();
    for (const auto& [d, inv] : h) hj[std::to_string(d)] = json(inv);
    json report = json::object();
    report["homology"] = std::move(hj);
    return report.dump();
}

std::string op_ext(const std::string& text, std::optional<int> degree) {
    Problem P = load_problem_text(text);
    if (!P.module) throw SchemaError("ext needs a module");
    if (degree) P.degree = degree;
    if (!P.degree) throw SchemaError("ext needs a degree");
    ModulePtr N = P.module2 ? P.module2 : P.module;
    return ext_status_to_json(ext_is_zero(*P.degree, P.module, N)).dump();
}

json lifted_problem(const TruncatedRing& R, const ModulePtr& M) {
    json out = json::object();
    out["ring"] = ring_to_json(R);
    out["algebra"] = algebra_to_json(*M->algebra());
    out["module"] = module_to_json(*M);
    return out;
}

std::string op_lift(const std::string& text) {
    Problem P = load_problem_text(text);
    if (!P.module) throw SchemaError("lift needs a module");
    try {
        LiftResult r = lift(P.module);
        json report = json::object();
        report["status"] = "lifted";
        json tr = json::array();
        for (const StageRecord& s : r.transcript) tr.push_back(stage_record_to_json(s));
        report["transcript"] = std::move(tr);
        report["lifted"] = lifted_problem(P.ring, r.lifted);
        report["iso"] = hom_to_json(r.iso);
        return report.dump();
    } catch (const ObstructionNonzero& e) {
        json report = json::object();
        report["status"] = "obstruction";
        report["stage"] = e.stage;
        report["message"] = e.what();
        return report.dump();
    }
}

std::string op_lift_iterated(const std::string& text) {
    Problem P = load_problem_text(text);
    try {
        IteratedResult r = [&] {
            if (P.module) return lift_iterated(P.module);
            if (P.generic) {
                int top = P.generic->components.hi() + P.algebra->top_degree() + 2;
                if (P.window) top = P.window->second;
                return lift_iterated(*P.generic, top);
            }
            throw SchemaError("lift_iterated needs a module or a complex");
        }();
        json report = json::object();
        report["status"] = "lifted";
        report["resolved"] = r.resolved;
        json stages = json::array();
        for (const IteratedStage& s : r.stages) {
            json e = json::object();
            e["variable"] = s.variable;
            e["ext2"] = ext_status_to_json(s.ext2);
            stages.push_back(std::move(e));
        }
        report["stages"] = std::move(stages);
        report["lifted"] = lifted_problem(P.ring, r.final_module);
        report["complex"] = complex_to_json(r.complex);
        return report.dump();
    } catch (const ObstructionNonzero& e) {
        json report = json::object();
        report["status"] = "obstruction";
        report["stage"] = e.stage;
        if (e.variable >= 0) report["variable"] = e.variable;
        report["message"] = e.what();
        return report.dump();
    }
}

std::string op_unique(const std::string& text) {
    Problem P = load_problem_text(text);
    if (!P.module || !P.module2 || !P.map)
        throw SchemaError("unique needs module, module2 and map");
    try {
        UniquenessResult r = uniqueness_iso(P.module, P.module2, *P.map);
        json report = json::object();
        report["status"] = "isomorphic";
        report["iso"] = hom_to_json(r.iso);
        report["iso_inverse"] = hom_to_json(r.iso_inverse);
        report["correction_stages"] = static_cast<int>(r.xi_terms.size());
        return report.dump();
    } catch (const Ext1Obstruction& e) {
        json report = json::object();
        report["status"] = "obstruction";
        report["stage"] = e.stage;
        report["message"] = e.what();
        return report.dump();
    }
}

std::string op_semidualizing(const std::string& text) {
    Problem P = load_problem_text(text);
    if (!P.module) throw SchemaError("semidualizing needs a module");
    return homothety_status_to_json(homothety_check(P.module, P.window)).dump();
}

std::string op_resolve(const std::string& text, std::optional<int> window_top) {
    Problem P = load_problem_text(text);
    if (!P.generic) throw SchemaError("resolve needs a complex");
    int top = P.generic->components.hi() + P.algebra->top_degree() + 2;
    if (P.window) top = P.window->second;
    if (window_top) top = *window_top;
    Resolution r = semi_free_resolution(*P.generic, top);
    json report = json::object();
    report["complete"] = r.complete;
    report["resolution"] = lifted_problem(P.ring, r.module);
    json maps = json::object();
    for (const auto& [d, m] : r.to_target) maps[std::to_string(d)] = matrix_to_json(m);
    report["to_target"] = std::move(maps);
    return report.dump();
}

std::string op_verify_quasilift(const std::string& problem_text,
                                const std::string& candidate_text,
                                bool allow_shift) {
    Problem P = load_problem_text(problem_text);
    Problem C = load_problem_text(candidate_text);
    if (!P.module) throw SchemaError("the problem document needs the target module");
    if (!C.module) throw SchemaError("the candidate document needs a module");
    bool ok = verify_quasilift(C.module, P.module, P.window, allow_shift);
    json report = json::object();
    report["quasilift"] = ok;
    return report.dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact liftings of DG modules along Koszul extensions";

    py::register_exception<SchemaError>(m, "SchemaError", PyExc_ValueError);

    m.def("check", &op_check, py::arg("problem"),
          "validate the algebra, modules and complex of a problem document");
    m.def("homology", &op_homology, py::arg("problem"),
          "homology invariants per degree");
    m.def("ext", &op_ext, py::arg("problem"), py::arg("degree") = std::nullopt,
          "decide Ext^i(M, N) = 0 with an honest three-way answer");
    m.def("lift", &op_lift, py::arg("problem"),
          "lift a block module to the inner algebra");
    m.def("lift_iterated", &op_lift_iterated, py::arg("problem"),
          "peel all Koszul variables down to the base ring");
    m.def("unique", &op_unique, py::arg("problem"),
          "descend an isomorphism of base changes to the lifts");
    m.def("semidualizing", &op_semidualizing, py::arg("problem"),
          "homothety quasi-isomorphism check");
    m.def("resolve", &op_resolve, py::arg("problem"),
          py::arg("window_top") = std::nullopt,
          "semi-free resolution of a complex inside a window");
    m.def("verify_quasilift", &op_verify_quasilift, py::arg("problem"),
          py::arg("candidate"), py::arg("allow_shift") = false,
          "compare homology of the candidate's base change against the target");
}
