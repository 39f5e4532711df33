#include "dglift/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

namespace dglift {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw SchemaError(msg); }

const json& need(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        fail(std::string("missing key \"") + key + "\"");
    return j.at(key);
}

int need_int(const json& j, const char* what) {
    if (!j.is_number_integer()) fail(std::string(what) + " must be an integer");
    return j.get<int>();
}

std::pair<int, int> parse_dk(const std::string& key) {
    auto comma = key.find(',');
    if (comma != std::string::npos) {
        try {
            return {std::stoi(key.substr(0, comma)), std::stoi(key.substr(comma + 1))};
        } catch (const std::exception&) {
        }
    }
    fail("value keys must look like \"degree,index\", got \"" + key + "\"");
}

std::string dk_key(int d, int k) {
    return std::to_string(d) + "," + std::to_string(k);
}

Scalar scalar_from_json(const Field& f, const json& j) {
    if (j.is_number_integer()) return f.from_int(j.get<long long>());
    if (j.is_string()) {
        try {
            return f.parse(j.get<std::string>());
        } catch (const Error& e) {
            fail(std::string("bad coefficient: ") + e.what());
        }
    }
    fail("coefficients must be integers or strings");
}

json scalar_to_json(const Field& f, const Scalar& s) {
    if (f.kind() == Field::Kind::PrimeField)
        return json(std::get<std::uint64_t>(s.v));
    return json(f.to_string(s));
}

// terms -> expanded coordinate vector of `layout` in degree e
RVector terms_to_vector(const DGModule& layout, int e, const json& terms,
                        const std::string& where) {
    const TruncatedRing& R = layout.ring();
    RVector v = vec_zero(R, layout.dim(e));
    if (!terms.is_array()) fail(where + ": terms must be an array");
    for (const json& t : terms) {
        const json& g = need(t, "gamma");
        const json& tg = need(t, "target");
        if (!g.is_array() || g.size() != 2 || !tg.is_array() || tg.size() != 2)
            fail(where + ": gamma and target must be [degree, index] pairs");
        int gd = need_int(g[0], "gamma degree");
        int gi = need_int(g[1], "gamma index");
        int md = need_int(tg[0], "target degree");
        int mi = need_int(tg[1], "target index");
        if (gd < 0 || gi < 0 || gi >= layout.algebra()->rank(gd))
            fail(where + ": no algebra basis element [" + std::to_string(gd) +
                 ", " + std::to_string(gi) + "]");
        auto it = layout.semibasis().find(md);
        if (it == layout.semibasis().end() || mi < 0 || mi >= it->second)
            fail(where + ": no semi-basis element [" + std::to_string(md) +
                 ", " + std::to_string(mi) + "]");
        if (gd + md != e)
            fail(where + ": term has degree " + std::to_string(gd + md) +
                 ", expected " + std::to_string(e));
        int pos = layout.slot_position(e, Slot{gd, gi, md, mi});
        v[pos] = R.add(v[pos], element_from_json(R, need(t, "coeff")));
    }
    return v;
}

json vector_to_terms(const DGModule& layout, int e, const RVector& v) {
    const TruncatedRing& R = layout.ring();
    json terms = json::array();
    const auto& sl = layout.slots(e);
    for (std::size_t i = 0; i < sl.size(); ++i) {
        if (R.is_zero(v[i])) continue;
        json t = json::object();
        t["coeff"] = element_to_json(R, v[i]);
        t["gamma"] = json::array({sl[i].gdeg, sl[i].gidx});
        t["target"] = json::array({sl[i].mdeg, sl[i].midx});
        terms.push_back(std::move(t));
    }
    return terms;
}

std::map<int, int> semibasis_from_json(const json& j) {
    const json& sb = need(j, "semibasis");
    if (!sb.is_object()) fail("semibasis must map degree strings to counts");
    std::map<int, int> counts;
    for (auto it = sb.begin(); it != sb.end(); ++it) {
        int d;
        try {
            d = std::stoi(it.key());
        } catch (const std::exception&) {
            fail("semibasis keys must be integer strings, got \"" + it.key() + "\"");
        }
        if (!it.value().is_number_integer() || it.value().get<int>() < 0)
            fail("semibasis counts must be nonnegative integers");
        counts[d] = it.value().get<int>();
    }
    return counts;
}

}  // namespace

TruncatedRing ring_from_json(const json& j) {
    if (!j.is_object()) fail("ring description must be an object");
    if (j.contains("spec"))
        return ring_from_spec(need(j, "spec").get<std::string>(),
                              need_int(need(j, "precision"), "precision"));
    int prec = need_int(need(j, "precision"), "precision");
    if (prec < 1) fail("precision must be >= 1");
    if (j.contains("Zp")) {
        long long p = need_int(j.at("Zp"), "Zp");
        if (p < 2) fail("Zp must name a prime");
        return TruncatedRing::integers_mod_prime_power(
            static_cast<std::uint64_t>(p), prec);
    }
    const json& fj = need(j, "field");
    if (fj.is_string() && fj.get<std::string>() == "Q")
        return TruncatedRing::poly_over_q(prec);
    if (fj.is_object() && fj.contains("Fp")) {
        long long p = need_int(fj.at("Fp"), "Fp");
        if (p < 2) fail("Fp must name a prime");
        return TruncatedRing::poly_over_fp(static_cast<std::uint64_t>(p), prec);
    }
    fail("field must be \"Q\" or {\"Fp\": p}");
}

json ring_to_json(const TruncatedRing& R) {
    json out = json::object();
    switch (R.kind()) {
        case TruncatedRing::Kind::PolyOverQ:
            out["field"] = "Q";
            break;
        case TruncatedRing::Kind::PolyOverFp: {
            json f = json::object();
            f["Fp"] = R.prime();
            out["field"] = std::move(f);
            break;
        }
        case TruncatedRing::Kind::IntegersModPrimePower:
            out["Zp"] = R.prime();
            break;
    }
    out["precision"] = R.precision();
    return out;
}

TruncatedRing ring_from_spec(const std::string& spec, int precision) {
    if (precision < 1) fail("precision must be >= 1");
    static const std::regex q_re(R"(Q(\[t\])?)");
    static const std::regex fp_re(R"(F(\d+)(\[t\])?)");
    static const std::regex gf_re(R"(GF\((\d+)\)(\[t\])?)");
    static const std::regex zp_re(R"(Z/(\d+))");
    std::smatch m;
    if (std::regex_match(spec, q_re)) return TruncatedRing::poly_over_q(precision);
    if (std::regex_match(spec, m, fp_re) || std::regex_match(spec, m, gf_re))
        return TruncatedRing::poly_over_fp(std::stoull(m[1]), precision);
    if (std::regex_match(spec, m, zp_re))
        return TruncatedRing::integers_mod_prime_power(std::stoull(m[1]), precision);
    fail("unrecognized ring \"" + spec +
         "\" (expected Q[t], F<p>[t], GF(<p>)[t] or Z/<p>)");
}

RingElement element_from_json(const TruncatedRing& R, const json& j) {
    if (R.kind() == TruncatedRing::Kind::IntegersModPrimePower) {
        if (j.is_number_integer()) return R.from_int(j.get<long long>());
        if (j.is_string()) {
            BigInt b;
            try {
                b = BigInt(j.get<std::string>());
            } catch (const std::exception&) {
                fail("bad ring element \"" + j.get<std::string>() + "\"");
            }
            BigInt m = boost::multiprecision::pow(
                BigInt(R.prime()), static_cast<unsigned>(R.precision()));
            b %= m;
            if (b < 0) b += m;
            RingElement e;
            e.v = std::move(b);
            return e;
        }
        fail("ring elements of Z/p^N must be integers or decimal strings");
    }
    const Field& f = R.residue_field();
    std::vector<Scalar> digits;
    if (j.is_array()) {
        if (static_cast<int>(j.size()) > R.precision())
            fail("more digits than the ring precision allows");
        for (const json& d : j) digits.push_back(scalar_from_json(f, d));
    } else {
        digits.push_back(scalar_from_json(f, j));
    }
    return R.from_digits(digits);
}

json element_to_json(const TruncatedRing& R, const RingElement& x) {
    if (R.kind() == TruncatedRing::Kind::IntegersModPrimePower)
        return json(std::get<BigInt>(x.v).str());
    const Field& f = R.residue_field();
    int top = -1;
    for (int d = 0; d < R.precision(); ++d)
        if (!f.is_zero(R.digit(x, d))) top = d;
    json out = json::array();
    for (int d = 0; d <= top; ++d) out.push_back(scalar_to_json(f, R.digit(x, d)));
    return out;
}

RMatrix matrix_from_json(const TruncatedRing& R, const json& j) {
    if (j.is_object()) {
        int rows = need_int(need(j, "rows"), "rows");
        int cols = need_int(need(j, "cols"), "cols");
        if (rows < 0 || cols < 0) fail("negative matrix shape");
        const json& e = need(j, "entries");
        if (!e.is_array() || static_cast<int>(e.size()) != rows)
            fail("entries must hold one array per matrix row");
        RMatrix m(R, rows, cols);
        for (int i = 0; i < rows; ++i) {
            if (!e[i].is_array() || static_cast<int>(e[i].size()) != cols)
                fail("matrix row " + std::to_string(i) + " has the wrong length");
            for (int c = 0; c < cols; ++c)
                m.at(i, c) = element_from_json(R, e[i][c]);
        }
        return m;
    }
    if (!j.is_array() || j.empty() || !j[0].is_array())
        fail("matrices are {\"rows\", \"cols\", \"entries\"} or a nonempty array of rows");
    int rows = static_cast<int>(j.size());
    int cols = static_cast<int>(j[0].size());
    RMatrix m(R, rows, cols);
    for (int i = 0; i < rows; ++i) {
        if (!j[i].is_array() || static_cast<int>(j[i].size()) != cols)
            fail("matrix row " + std::to_string(i) + " has the wrong length");
        for (int c = 0; c < cols; ++c) m.at(i, c) = element_from_json(R, j[i][c]);
    }
    return m;
}

json matrix_to_json(const RMatrix& m) {
    json out = json::object();
    out["rows"] = m.rows;
    out["cols"] = m.cols;
    json entries = json::array();
    for (int i = 0; i < m.rows; ++i) {
        json row = json::array();
        for (int c = 0; c < m.cols; ++c) row.push_back(element_to_json(m.ring, m.at(i, c)));
        entries.push_back(std::move(row));
    }
    out["entries"] = std::move(entries);
    return out;
}

AlgebraPtr algebra_from_json(const TruncatedRing& R, const json& j) {
    if (!j.is_object()) fail("algebra description must be an object");
    if (j.contains("koszul")) {
        const json& l = j.at("koszul");
        if (!l.is_array()) fail("koszul must list ring elements");
        std::vector<RingElement> elems;
        for (const json& e : l) elems.push_back(element_from_json(R, e));
        return DGAlgebra::koszul(R, elems);
    }
    const json& bj = need(j, "basis");
    if (!bj.is_array() || bj.empty()) fail("basis must list the names per degree");
    std::vector<std::vector<std::string>> basis;
    for (const json& deg : bj) {
        if (!deg.is_array()) fail("each basis degree must be an array of names");
        std::vector<std::string> names;
        for (const json& n : deg) {
            if (!n.is_string()) fail("basis names must be strings");
            names.push_back(n.get<std::string>());
        }
        basis.push_back(std::move(names));
    }
    int top = static_cast<int>(basis.size()) - 1;
    const json& dj = need(j, "differential");
    if (!dj.is_array() || static_cast<int>(dj.size()) != top)
        fail("differential must list one matrix per degree 1..top");
    std::vector<RMatrix> diffs;
    for (const json& m : dj) diffs.push_back(matrix_from_json(R, m));
    const json& mj = need(j, "mult");
    if (!mj.is_array() || static_cast<int>(mj.size()) != top + 1)
        fail("mult must be indexed by the left degree 0..top");
    std::vector<std::vector<std::vector<RVector>>> mult;
    for (int d1 = 0; d1 <= top; ++d1) {
        const json& row = mj[d1];
        if (!row.is_array() || static_cast<int>(row.size()) != top - d1 + 1)
            fail("mult[" + std::to_string(d1) + "] must cover right degrees 0.." +
                 std::to_string(top - d1));
        std::vector<std::vector<RVector>> per_d2;
        for (int d2 = 0; d2 + d1 <= top; ++d2) {
            const json& cell = row[d2];
            std::size_t want = basis[d1].size() * basis[d2].size();
            if (!cell.is_array() || cell.size() != want)
                fail("mult[" + std::to_string(d1) + "][" + std::to_string(d2) +
                     "] must hold " + std::to_string(want) + " product vectors");
            std::vector<RVector> prods;
            for (const json& pv : cell) {
                if (!pv.is_array() || pv.size() != basis[d1 + d2].size())
                    fail("product vectors in degree " + std::to_string(d1 + d2) +
                         " must have length " + std::to_string(basis[d1 + d2].size()));
                RVector v;
                for (const json& c : pv) v.push_back(element_from_json(R, c));
                prods.push_back(std::move(v));
            }
            per_d2.push_back(std::move(prods));
        }
        per_d2.resize(top + 1);
        mult.push_back(std::move(per_d2));
    }
    return DGAlgebra::make_explicit(R, std::move(basis), std::move(diffs),
                                    std::move(mult));
}

json algebra_to_json(const DGAlgebra& X) {
    const TruncatedRing& R = X.ring();
    std::vector<RingElement> ts;
    const DGAlgebra* a = &X;
    while (a->block()) {
        ts.push_back(a->block()->t);
        a = a->block()->inner.get();
    }
    if (a->top_degree() == 0 && a->rank(0) == 1) {
        std::reverse(ts.begin(), ts.end());  // constructor order: innermost first
        json l = json::array();
        for (const RingElement& t : ts) l.push_back(element_to_json(R, t));
        json out = json::object();
        out["koszul"] = std::move(l);
        return out;
    }
    json out = json::object();
    int top = X.top_degree();
    json basis = json::array();
    for (int d = 0; d <= top; ++d) {
        json names = json::array();
        for (int i = 0; i < X.rank(d); ++i) names.push_back(X.basis_name(d, i));
        basis.push_back(std::move(names));
    }
    out["basis"] = std::move(basis);
    json diffs = json::array();
    for (int d = 1; d <= top; ++d) diffs.push_back(matrix_to_json(X.diff(d)));
    out["differential"] = std::move(diffs);
    json mult = json::array();
    for (int d1 = 0; d1 <= top; ++d1) {
        json row = json::array();
        for (int d2 = 0; d2 + d1 <= top; ++d2) {
            json cell = json::array();
            for (int i1 = 0; i1 < X.rank(d1); ++i1) {
                for (int i2 = 0; i2 < X.rank(d2); ++i2) {
                    RVector p = X.product(d1, i1, d2, i2);
                    json pv = json::array();
                    for (const RingElement& c : p) pv.push_back(element_to_json(R, c));
                    cell.push_back(std::move(pv));
                }
            }
            row.push_back(std::move(cell));
        }
        mult.push_back(std::move(row));
    }
    out["mult"] = std::move(mult);
    return out;
}

ModulePtr module_from_json(const AlgebraPtr& X, const json& j) {
    if (!X) throw PreconditionError("module_from_json: null algebra");
    if (!j.is_object()) fail("module description must be an object");
    std::map<int, int> counts = semibasis_from_json(j);
    const auto& blk = X->block();
    AlgebraPtr inner = blk ? blk->inner : X;
    ModulePtr layout = free_module(inner, counts);
    int trunc = kComplete;
    if (j.contains("truncated_above"))
        trunc = need_int(j.at("truncated_above"), "truncated_above");

    auto read_values = [&](const char* key, int shift) {
        std::map<std::pair<int, int>, RVector> out;
        if (!j.contains(key)) return out;
        const json& vj = j.at(key);
        if (!vj.is_object())
            fail(std::string(key) + " must map \"degree,index\" keys to term lists");
        for (auto it = vj.begin(); it != vj.end(); ++it) {
            auto [d, k] = parse_dk(it.key());
            auto sit = counts.find(d);
            if (sit == counts.end() || k < 0 || k >= sit->second)
                fail(std::string(key) + " refers to missing semi-basis element \"" +
                     it.key() + "\"");
            out[{d, k}] = terms_to_vector(*layout, d + shift, it.value(),
                                          std::string(key) + "[" + it.key() + "]");
        }
        return out;
    };

    auto alpha = read_values("alpha", -1);
    if (blk) {
        auto delta = read_values("delta", -2);
        return make_block_module(X, std::move(counts), std::move(alpha),
                                 std::move(delta), trunc);
    }
    if (j.contains("delta") && !j.at("delta").empty())
        fail("delta requires a block (Koszul) algebra");
    return make_semifree(X, std::move(counts), std::move(alpha), trunc);
}

json module_to_json(const DGModule& M) {
    json out = json::object();
    json sb = json::object();
    for (const auto& [d, c] : M.semibasis()) sb[std::to_string(d)] = c;
    out["semibasis"] = std::move(sb);
    ModulePtr layout = M.inner_carrier();
    bool block = M.algebra()->block().has_value();
    json alpha = json::object();
    for (const auto& [d, c] : M.semibasis()) {
        for (int k = 0; k < c; ++k) {
            RVector v = block ? M.alpha_part(d, k) : M.value(d, k);
            json terms = vector_to_terms(*layout, d - 1, v);
            if (!terms.empty()) alpha[dk_key(d, k)] = std::move(terms);
        }
    }
    out["alpha"] = std::move(alpha);
    if (block) {
        json delta = json::object();
        for (const auto& [d, c] : M.semibasis()) {
            for (int k = 0; k < c; ++k) {
                json terms = vector_to_terms(*layout, d - 2, M.delta_part(d, k));
                if (!terms.empty()) delta[dk_key(d, k)] = std::move(terms);
            }
        }
        out["delta"] = std::move(delta);
    }
    if (M.truncated()) out["truncated_above"] = M.truncation_top();
    return out;
}

GradedHom hom_from_json(const ModulePtr& src, const ModulePtr& tgt, const json& j) {
    if (!src || !tgt) throw PreconditionError("hom_from_json: null module");
    int p = need_int(need(j, "degree"), "degree");
    GradedHom f(src, tgt, p);
    if (j.contains("values")) {
        const json& vj = j.at("values");
        if (!vj.is_object())
            fail("hom values must map \"degree,index\" keys to term lists");
        for (auto it = vj.begin(); it != vj.end(); ++it) {
            auto [d, k] = parse_dk(it.key());
            auto sit = src->semibasis().find(d);
            if (sit == src->semibasis().end() || k < 0 || k >= sit->second)
                fail("hom value refers to missing semi-basis element \"" + it.key() +
                     "\"");
            f.set_value(d, k,
                        terms_to_vector(*tgt, d + p, it.value(),
                                        "values[" + it.key() + "]"));
        }
    }
    return f;
}

json hom_to_json(const GradedHom& f) {
    json out = json::object();
    out["degree"] = f.degree();
    json values = json::object();
    for (const auto& [d, c] : f.source()->semibasis()) {
        for (int k = 0; k < c; ++k) {
            json terms = vector_to_terms(*f.target(), d + f.degree(), f.value(d, k));
            if (!terms.empty()) values[dk_key(d, k)] = std::move(terms);
        }
    }
    out["values"] = std::move(values);
    return out;
}

GenericDGModule generic_from_json(const AlgebraPtr& X, const json& j) {
    if (!X) throw PreconditionError("generic_from_json: null algebra");
    if (!j.is_object()) fail("complex description must be an object");
    const TruncatedRing& R = X->ring();
    int lo = need_int(need(j, "lo"), "lo");
    const json& rj = need(j, "ranks");
    if (!rj.is_array()) fail("ranks must be an array");
    std::vector<int> ranks;
    for (const json& r : rj) {
        int x = need_int(r, "rank");
        if (x < 0) fail("ranks must be nonnegative");
        ranks.push_back(x);
    }
    RComplex C{R, lo, std::move(ranks), {}};
    int steps = std::max(0, static_cast<int>(C.ranks.size()) - 1);
    const json* dj = j.contains("differentials") ? &j.at("differentials") : nullptr;
    if (dj && (!dj->is_array() || static_cast<int>(dj->size()) != steps))
        fail("differentials must list one matrix per degree lo+1..hi");
    for (int i = 0; i < steps; ++i) {
        int d = lo + i + 1;
        RMatrix m = dj ? matrix_from_json(R, (*dj)[i])
                       : RMatrix(R, C.rank(d - 1), C.rank(d));
        if (m.rows != C.rank(d - 1) || m.cols != C.rank(d))
            fail("differential at degree " + std::to_string(d) +
                 " has the wrong shape");
        C.diffs.push_back(std::move(m));
    }
    GenericDGModule D{X, std::move(C), {}, false};
    if (j.contains("truncated_above")) {
        const json& tj = j.at("truncated_above");
        if (!tj.is_boolean()) fail("truncated_above must be a boolean");
        D.truncated_above = tj.get<bool>();
    }
    if (j.contains("action")) {
        const json& aj = j.at("action");
        if (!aj.is_array()) fail("action must be a list of matrix records");
        int n = static_cast<int>(D.components.ranks.size());
        for (const json& entry : aj) {
            const json& g = need(entry, "gamma");
            if (!g.is_array() || g.size() != 2)
                fail("action gamma must be [degree, index]");
            int gd = need_int(g[0], "gamma degree");
            int gi = need_int(g[1], "gamma index");
            if (gd < 0 || gi < 0 || gi >= X->rank(gd))
                fail("action refers to a missing algebra basis element");
            int d = need_int(need(entry, "from_degree"), "from_degree");
            if (d < lo || d - lo >= n) fail("action from_degree outside the complex");
            auto& vec = D.action[{gd, gi}];
            if (vec.empty())
                for (int i = 0; i < n; ++i)
                    vec.emplace_back(R, D.components.rank(lo + i + gd),
                                     D.components.rank(lo + i));
            RMatrix m = matrix_from_json(R, need(entry, "matrix"));
            if (m.rows != D.components.rank(d + gd) || m.cols != D.components.rank(d))
                fail("action matrix at degree " + std::to_string(d) +
                     " has the wrong shape");
            vec[d - lo] = std::move(m);
        }
    }
    return D;
}

json complex_to_json(const RComplex& C) {
    json out = json::object();
    out["lo"] = C.lo;
    out["ranks"] = json(C.ranks);
    json diffs = json::array();
    for (const RMatrix& m : C.diffs) diffs.push_back(matrix_to_json(m));
    out["differentials"] = std::move(diffs);
    return out;
}

json generic_to_json(const GenericDGModule& D) {
    json out = complex_to_json(D.components);
    json action = json::array();
    for (const auto& [key, mats] : D.action) {
        for (std::size_t i = 0; i < mats.size(); ++i) {
            if (mats[i].is_zero()) continue;
            json entry = json::object();
            entry["gamma"] = json::array({key.first, key.second});
            entry["from_degree"] = D.components.lo + static_cast<int>(i);
            entry["matrix"] = matrix_to_json(mats[i]);
            action.push_back(std::move(entry));
        }
    }
    out["action"] = std::move(action);
    out["truncated_above"] = D.truncated_above;
    return out;
}

json stage_record_to_json(const StageRecord& r) {
    json out = json::object();
    out["n"] = r.stage;
    out["solved"] = r.solved;
    out["delta_valuation"] = r.delta_valuation;
    out["params"] = r.params;
    return out;
}

json ext_status_to_json(const ExtStatus& s) {
    json out = json::object();
    switch (s.state) {
        case ExtTriState::Zero: out["status"] = "zero"; break;
        case ExtTriState::Nonzero: out["status"] = "nonzero"; break;
        case ExtTriState::Inconclusive: out["status"] = "inconclusive"; break;
    }
    out["witness"] = s.witness ? hom_to_json(*s.witness) : json(nullptr);
    out["window"] = json::array({s.window_lo, s.window_hi});
    if (!s.reason.empty()) out["reason"] = s.reason;
    return out;
}

json homothety_status_to_json(const HomothetyStatus& s) {
    json out = json::object();
    switch (s.state) {
        case HomothetyTriState::Semidualizing: out["status"] = "semidualizing"; break;
        case HomothetyTriState::No: out["status"] = "no"; break;
        case HomothetyTriState::Inconclusive: out["status"] = "inconclusive"; break;
    }
    if (s.state == HomothetyTriState::No) {
        out["degree"] = s.witness_degree;
        out["invariants"] = json(s.witness_invariants);
    }
    if (!s.reason.empty()) out["reason"] = s.reason;
    return out;
}

Problem problem_from_json(const json& j) {
    if (!j.is_object()) fail("problem file must hold a JSON object");
    TruncatedRing R = ring_from_json(need(j, "ring"));
    AlgebraPtr X = algebra_from_json(R, need(j, "algebra"));
    Problem P{R, X, nullptr, nullptr, std::nullopt, std::nullopt,
              std::nullopt, std::nullopt};

    std::string over = "algebra";
    if (j.contains("modules_over")) {
        const json& oj = j.at("modules_over");
        if (!oj.is_string()) fail("modules_over must be \"algebra\" or \"inner\"");
        over = oj.get<std::string>();
    }
    AlgebraPtr modX = X;
    if (over == "inner") {
        if (!X->block()) fail("modules_over \"inner\" requires a Koszul algebra");
        modX = X->block()->inner;
    } else if (over != "algebra") {
        fail("modules_over must be \"algebra\" or \"inner\"");
    }

    if (j.contains("module")) P.module = module_from_json(modX, j.at("module"));
    if (j.contains("module2")) P.module2 = module_from_json(modX, j.at("module2"));
    if (j.contains("complex")) P.generic = generic_from_json(X, j.at("complex"));
    if (j.contains("map")) {
        if (!P.module || !P.module2) fail("map requires module and module2");
        ModulePtr src = P.module, tgt = P.module2;
        if (over == "inner") {
            src = base_change(*P.module, X);
            tgt = base_change(*P.module2, X);
        }
        P.map = hom_from_json(src, tgt, j.at("map"));
    }
    if (j.contains("window")) {
        const json& w = j.at("window");
        if (!w.is_array() || w.size() != 2) fail("window must be [lo, hi]");
        int lo = need_int(w[0], "window lo");
        int hi = need_int(w[1], "window hi");
        if (lo > hi) fail("window lo exceeds hi");
        P.window = {lo, hi};
    }
    if (j.contains("degree")) P.degree = need_int(j.at("degree"), "degree");
    return P;
}

Problem load_problem_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        fail(std::string("invalid JSON: ") + e.what());
    }
    return problem_from_json(j);
}

Problem load_problem_file(const std::string& path) {
    std::string text;
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        text = ss.str();
    } else {
        std::ifstream in(path, std::ios::binary);
        if (!in) fail("cannot open problem file: " + path);
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    return load_problem_text(text);
}

}  // namespace dglift
