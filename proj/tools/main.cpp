#include <climits>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "dglift/json_io.hpp"

using namespace dglift;

namespace {

struct Options {
    std::string file = "-";
    std::string ring;
    int precision = 0;
    std::string window;
    std::string json_out;
    std::string transcript_out;
    int degree = INT_MIN;
};

void add_common(CLI::App* sub, Options& o, bool with_window = true) {
    sub->add_option("file", o.file, "problem file (\"-\" reads stdin)");
    auto* r = sub->add_option("--ring", o.ring,
                              "override the ring: Q[t], F<p>[t], GF(<p>)[t], Z/<p>");
    auto* p = sub->add_option("--precision", o.precision,
                              "override the ring precision (t^N = 0)");
    r->needs(p);
    if (with_window)
        sub->add_option("--window", o.window, "window of degrees LO..HI");
    sub->add_option("--json", o.json_out,
                    "write the machine-readable report here (\"-\" = stdout)");
}

std::optional<std::pair<int, int>> parse_window(const std::string& w) {
    if (w.empty()) return std::nullopt;
    static const std::regex re(R"((-?\d+)\.\.(-?\d+))");
    std::smatch m;
    if (!std::regex_match(w, m, re))
        throw SchemaError("window must look like LO..HI, got \"" + w + "\"");
    int lo = std::stoi(m[1]), hi = std::stoi(m[2]);
    if (lo > hi) throw SchemaError("window lo exceeds hi");
    return std::make_pair(lo, hi);
}

Problem load(const Options& o) {
    std::string text;
    if (o.file == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        text = ss.str();
    } else {
        std::ifstream in(o.file, std::ios::binary);
        if (!in) throw SchemaError("cannot open problem file: " + o.file);
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw SchemaError(std::string("invalid JSON: ") + e.what());
    }
    if (!o.ring.empty()) {
        json rj = json::object();
        rj["spec"] = o.ring;
        rj["precision"] = o.precision;
        j["ring"] = std::move(rj);
    } else if (o.precision > 0) {
        if (!j.contains("ring") || !j.at("ring").is_object())
            throw SchemaError("--precision given but the file has no ring object");
        j["ring"]["precision"] = o.precision;
    }
    Problem P = problem_from_json(j);
    if (auto w = parse_window(o.window)) P.window = w;
    if (o.degree != INT_MIN) P.degree = o.degree;
    return P;
}

void emit(const Options& o, const json& report, const std::string& text) {
    if (o.json_out == "-") {
        std::cout << report.dump(2) << "\n";
        return;
    }
    if (!o.json_out.empty()) {
        std::ofstream out(o.json_out, std::ios::binary);
        if (!out) throw SchemaError("cannot write report to " + o.json_out);
        out << report.dump(2) << "\n";
    }
    std::cout << text;
}

void write_transcript(const std::string& path, const std::vector<StageRecord>& recs) {
    if (path.empty()) return;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw SchemaError("cannot write transcript to " + path);
    for (const StageRecord& r : recs) out << stage_record_to_json(r).dump() << "\n";
}

std::string invariants_text(const TruncatedRing& R, const std::vector<int>& inv) {
    if (inv.empty()) return "0";
    std::ostringstream ss;
    for (std::size_t i = 0; i < inv.size(); ++i) {
        if (i) ss << " + ";
        if (inv[i] >= R.precision())
            ss << "R";
        else
            ss << "R/t^" << inv[i];
    }
    return ss.str();
}

std::pair<int, int> module_window(const DGModule& M,
                                  std::optional<std::pair<int, int>> w) {
    if (w) return *w;
    int lo = M.lo_component() - 1;
    int hi = M.hi_component() + 1;
    if (M.truncated()) hi = std::min(hi, M.truncation_top() - 1);
    if (hi < lo) hi = lo;
    return {lo, hi};
}

json module_problem_json(const TruncatedRing& R, const AlgebraPtr& X,
                         const DGModule& M) {
    json out = json::object();
    out["ring"] = ring_to_json(R);
    out["algebra"] = algebra_to_json(*X);
    out["module"] = module_to_json(M);
    return out;
}

int cmd_check(const Options& o) {
    Problem P = load(o);
    json report = json::object();
    ValidationReport ar = P.algebra->validate();
    json checks = json::array();
    for (const CheckResult& c : ar.checks) {
        json e = json::object();
        e["name"] = c.name;
        e["pass"] = c.pass;
        if (!c.pass) e["witness"] = c.witness;
        checks.push_back(std::move(e));
    }
    report["algebra_checks"] = std::move(checks);
    bool ok = ar.ok();
    std::ostringstream text;
    text << "algebra: " << (ar.ok() ? "ok" : "FAILED (" + ar.first_failure() + ")")
         << "\n";
    if (P.module) {
        // construction already validated the structure equations
        report["module"] = "valid";
        text << "module: valid (" << P.module->generators() << " generators)\n";
    }
    if (P.module2) {
        report["module2"] = "valid";
        text << "module2: valid (" << P.module2->generators() << " generators)\n";
    }
    if (P.generic) {
        ValidationReport gr = P.generic->validate();
        report["complex"] = gr.ok() ? "valid" : gr.first_failure();
        ok = ok && gr.ok();
        text << "complex: " << (gr.ok() ? "valid" : "FAILED (" + gr.first_failure() + ")")
             << "\n";
    }
    report["ok"] = ok;
    emit(o, report, text.str());
    return ok ? 0 : 1;
}

int cmd_homology(const Options& o) {
    Problem P = load(o);
    std::map<int, std::vector<int>> h;
    const TruncatedRing& R = P.ring;
    if (P.module) {
        auto [lo, hi] = module_window(*P.module, P.window);
        h = homology(*P.module, lo, hi);
    } else if (P.generic) {
        const RComplex& C = P.generic->components;
        int lo = C.lo - 1, hi = C.hi() + 1;
        if (P.generic->truncated_above) hi = C.hi() - 1;
        if (P.window) lo = P.window->first, hi = P.window->second;
        h = C.homology(lo, hi);
    } else {
        throw SchemaError("homology needs a module or a complex");
    }
    json report = json::object();
    json hj = json::object();
    std::ostringstream text;
    for (const auto& [d, inv] : h) {
        hj[std::to_string(d)] = json(inv);
        text << "H_" << d << " = " << invariants_text(R, inv) << "\n";
    }
    report["homology"] = std::move(hj);
    emit(o, report, text.str());
    return 0;
}

int cmd_ext(const Options& o) {
    Problem P = load(o);
    if (!P.module) throw SchemaError("ext needs a module");
    if (!P.degree) throw SchemaError("ext needs --degree");
    ModulePtr N = P.module2 ? P.module2 : P.module;
    ExtStatus s = ext_is_zero(*P.degree, P.module, N);
    json report = ext_status_to_json(s);
    std::ostringstream text;
    text << "Ext^" << *P.degree << " is ";
    switch (s.state) {
        case ExtTriState::Zero:
            text << "zero (certified on generator degrees " << s.window_lo << ".."
                 << s.window_hi << ")\n";
            break;
        case ExtTriState::Nonzero:
            text << "nonzero (witness cycle attached to the JSON report)\n";
            break;
        case ExtTriState::Inconclusive:
            text << "inconclusive: " << s.reason << "\n";
            break;
    }
    emit(o, report, text.str());
    if (s.state == ExtTriState::Nonzero) return 2;
    return s.state == ExtTriState::Zero ? 0 : 1;
}

int cmd_lift(const Options& o) {
    Problem P = load(o);
    if (!P.module) throw SchemaError("lift needs a module");
    try {
        LiftResult r = lift(P.module);
        write_transcript(o.transcript_out, r.transcript);
        json report = json::object();
        report["status"] = "lifted";
        json tr = json::array();
        for (const StageRecord& s : r.transcript)
            tr.push_back(stage_record_to_json(s));
        report["transcript"] = std::move(tr);
        AlgebraPtr inner = P.algebra->block()->inner;
        report["lifted"] = module_problem_json(P.ring, inner, *r.lifted);
        report["iso"] = hom_to_json(r.iso);
        std::ostringstream text;
        for (const StageRecord& s : r.transcript)
            text << "stage " << s.stage << ": solved, entering delta valuation "
                 << s.delta_valuation << ", " << s.params << " unknowns\n";
        text << "lifted to the inner algebra; generators:";
        for (const auto& [d, c] : r.lifted->semibasis())
            text << " " << c << "@" << d;
        text << "\n";
        emit(o, report, text.str());
        return 0;
    } catch (const ObstructionNonzero& e) {
        json report = json::object();
        report["status"] = "obstruction";
        report["stage"] = e.stage;
        report["message"] = e.what();
        emit(o, report, std::string("obstruction: ") + e.what() + "\n");
        return 2;
    }
}

int cmd_lift_iterated(const Options& o) {
    Problem P = load(o);
    try {
        IteratedResult r = [&] {
            if (P.module) return lift_iterated(P.module);
            if (P.generic) {
                const RComplex& C = P.generic->components;
                int top = C.hi() + P.algebra->top_degree() + 2;
                if (P.window) top = P.window->second;
                return lift_iterated(*P.generic, top);
            }
            throw SchemaError("lift-iterated needs a module or a complex");
        }();
        std::vector<StageRecord> all;
        for (const IteratedStage& s : r.stages)
            all.insert(all.end(), s.transcript.begin(), s.transcript.end());
        write_transcript(o.transcript_out, all);
        json report = json::object();
        report["status"] = "lifted";
        report["resolved"] = r.resolved;
        json stages = json::array();
        for (const IteratedStage& s : r.stages) {
            json e = json::object();
            e["variable"] = s.variable;
            e["ext2"] = ext_status_to_json(s.ext2);
            json tr = json::array();
            for (const StageRecord& rec : s.transcript)
                tr.push_back(stage_record_to_json(rec));
            e["transcript"] = std::move(tr);
            stages.push_back(std::move(e));
        }
        report["stages"] = std::move(stages);
        report["lifted"] =
            module_problem_json(P.ring, r.final_module->algebra(), *r.final_module);
        report["complex"] = complex_to_json(r.complex);
        std::ostringstream text;
        for (const IteratedStage& s : r.stages)
            text << "variable " << s.variable << ": lifted in "
                 << s.transcript.size() << " stages\n";
        text << "final complex over R: degrees " << r.complex.lo << ".."
             << r.complex.hi() << "\n";
        emit(o, report, text.str());
        return 0;
    } catch (const ObstructionNonzero& e) {
        json report = json::object();
        report["status"] = "obstruction";
        report["stage"] = e.stage;
        if (e.variable >= 0) report["variable"] = e.variable;
        report["message"] = e.what();
        emit(o, report, std::string("obstruction: ") + e.what() + "\n");
        return 2;
    }
}

int cmd_unique(const Options& o) {
    Problem P = load(o);
    if (!P.module || !P.module2 || !P.map)
        throw SchemaError(
            "unique needs module, module2 (over the inner algebra) and map");
    try {
        UniquenessResult r = uniqueness_iso(P.module, P.module2, *P.map);
        json report = json::object();
        report["status"] = "isomorphic";
        report["iso"] = hom_to_json(r.iso);
        report["iso_inverse"] = hom_to_json(r.iso_inverse);
        report["correction_stages"] = static_cast<int>(r.xi_terms.size());
        std::ostringstream text;
        text << "descended isomorphism found after " << r.xi_terms.size()
             << " correction stages\n";
        emit(o, report, text.str());
        return 0;
    } catch (const Ext1Obstruction& e) {
        json report = json::object();
        report["status"] = "obstruction";
        report["stage"] = e.stage;
        report["message"] = e.what();
        emit(o, report, std::string("obstruction: ") + e.what() + "\n");
        return 2;
    }
}

int cmd_semidualizing(const Options& o) {
    Problem P = load(o);
    if (!P.module) throw SchemaError("semidualizing needs a module");
    HomothetyStatus s = homothety_check(P.module, P.window);
    json report = homothety_status_to_json(s);
    std::ostringstream text;
    switch (s.state) {
        case HomothetyTriState::Semidualizing:
            text << "semidualizing: yes\n";
            break;
        case HomothetyTriState::No:
            text << "semidualizing: no (cone homology " << s.witness_degree
                 << " has invariants " << invariants_text(P.ring, s.witness_invariants)
                 << ")\n";
            break;
        case HomothetyTriState::Inconclusive:
            text << "semidualizing: inconclusive: " << s.reason << "\n";
            break;
    }
    emit(o, report, text.str());
    if (s.state == HomothetyTriState::No) return 2;
    return s.state == HomothetyTriState::Semidualizing ? 0 : 1;
}

int cmd_resolve(const Options& o) {
    Problem P = load(o);
    if (!P.generic) throw SchemaError("resolve needs a complex");
    const RComplex& C = P.generic->components;
    int top = C.hi() + P.algebra->top_degree() + 2;
    if (P.window) top = P.window->second;
    Resolution r = semi_free_resolution(*P.generic, top);
    json report = json::object();
    report["complete"] = r.complete;
    report["resolution"] = module_problem_json(P.ring, P.algebra, *r.module);
    json maps = json::object();
    for (const auto& [d, m] : r.to_target) maps[std::to_string(d)] = matrix_to_json(m);
    report["to_target"] = std::move(maps);
    std::ostringstream text;
    text << "semi-free resolution " << (r.complete ? "complete" : "truncated")
         << "; generators:";
    for (const auto& [d, c] : r.module->semibasis()) text << " " << c << "@" << d;
    text << "\n";
    emit(o, report, text.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact liftings of DG modules along Koszul extensions"};
    app.require_subcommand(1);

    Options o;
    int (*fn)(const Options&) = nullptr;

    auto* check = app.add_subcommand("check", "validate a problem file");
    add_common(check, o, false);
    check->callback([&] { fn = cmd_check; });

    auto* hom = app.add_subcommand("homology", "homology invariants per degree");
    add_common(hom, o);
    hom->callback([&] { fn = cmd_homology; });

    auto* ext = app.add_subcommand("ext", "decide Ext^i(M, N) = 0");
    add_common(ext, o, false);
    ext->add_option("--degree", o.degree, "Ext degree i");
    ext->callback([&] { fn = cmd_ext; });

    auto* lift = app.add_subcommand("lift", "lift a block module to the inner algebra");
    add_common(lift, o, false);
    lift->add_option("--transcript", o.transcript_out, "stage records as JSON lines");
    lift->callback([&] { fn = cmd_lift; });

    auto* iter = app.add_subcommand("lift-iterated",
                                    "peel all Koszul variables down to the base ring");
    add_common(iter, o);
    iter->add_option("--transcript", o.transcript_out, "stage records as JSON lines");
    iter->callback([&] { fn = cmd_lift_iterated; });

    auto* uniq = app.add_subcommand("unique", "descend an isomorphism of base changes");
    add_common(uniq, o, false);
    uniq->callback([&] { fn = cmd_unique; });

    auto* semi = app.add_subcommand("semidualizing", "homothety quasi-isomorphism check");
    add_common(semi, o);
    semi->callback([&] { fn = cmd_semidualizing; });

    auto* res = app.add_subcommand("resolve", "semi-free resolution of a complex");
    add_common(res, o);
    res->callback([&] { fn = cmd_resolve; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int c = app.exit(e);
        return c == 0 ? 0 : 1;
    }

    try {
        return fn(o);
    } catch (const NotNullHomotopic& e) {
        std::cerr << "obstruction: " << e.what() << "\n";
        return 2;
    } catch (const ObstructionNonzero& e) {
        std::cerr << "obstruction: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
