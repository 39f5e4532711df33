#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "lifting.hpp"

namespace dglift {

using json = nlohmann::ordered_json;

// {"field": "Q" | {"Fp": p}, "precision": N}  or  {"Zp": p, "precision": N}
TruncatedRing ring_from_json(const json& j);
json ring_to_json(const TruncatedRing& R);
// command-line style: "Q[t]", "F2[t]", "GF(2)[t]", "Z/3"
TruncatedRing ring_from_spec(const std::string& spec, int precision);

// polynomial rings: digit array (numbers over F_p, "a/b" strings over Q),
// or a single digit for constants; Z/p^N: decimal string or number
RingElement element_from_json(const TruncatedRing& R, const json& j);
json element_to_json(const TruncatedRing& R, const RingElement& x);

// array of rows
RMatrix matrix_from_json(const TruncatedRing& R, const json& j);
json matrix_to_json(const RMatrix& m);

// {"koszul": [elements...]} or {"basis": ..., "differential": ..., "mult": ...}
AlgebraPtr algebra_from_json(const TruncatedRing& R, const json& j);
json algebra_to_json(const DGAlgebra& X);

// {"semibasis": {"0": 1, ...}, "alpha": {"d,k": [term...]}, "delta": {...}}
// term = {"coeff": element, "gamma": [i, s], "target": [deg, index]}, indices
// 0-based; delta only over block algebras; optional "truncated_above": top
ModulePtr module_from_json(const AlgebraPtr& X, const json& j);
json module_to_json(const DGModule& M);

// {"degree": p, "values": {"d,k": [term...]}}, terms over the target
GradedHom hom_from_json(const ModulePtr& src, const ModulePtr& tgt, const json& j);
json hom_to_json(const GradedHom& f);

// {"lo": d, "ranks": [...], "differentials": [matrix...],
//  "action": [{"gamma": [i, s], "from_degree": d, "matrix": ...}...],
//  "truncated_above": bool}
GenericDGModule generic_from_json(const AlgebraPtr& X, const json& j);
json generic_to_json(const GenericDGModule& D);
json complex_to_json(const RComplex& C);

json stage_record_to_json(const StageRecord& r);
json ext_status_to_json(const ExtStatus& s);
json homothety_status_to_json(const HomothetyStatus& s);

// One problem file: {"ring": ..., "algebra": ..., "module": ...} plus the
// optional keys module2, map, complex, window ([lo, hi]), degree and
// modules_over ("algebra" | "inner"; "inner" parses the modules over the
// inner algebra and the map between their base changes).
struct Problem {
    TruncatedRing ring;
    AlgebraPtr algebra;
    ModulePtr module;
    ModulePtr module2;
    std::optional<GenericDGModule> generic;
    std::optional<GradedHom> map;
    std::optional<std::pair<int, int>> window;
    std::optional<int> degree;
};

Problem problem_from_json(const json& j);
Problem load_problem_text(const std::string& text);
Problem load_problem_file(const std::string& path);  // "-" reads stdin

}  // namespace dglift
