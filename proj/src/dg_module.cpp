#include "dglift/dg_module.hpp"

#include <algorithm>
#include <sstream>

namespace dglift {

namespace {

bool algebras_compatible(const AlgebraPtr& a, const AlgebraPtr& b) {
    return a == b || a->structurally_equal(*b);
}

void build_slots_for(const DGAlgebra& X, const std::map<int, int>& sb, int e,
                     std::vector<Slot>& out) {
    if (X.block()) {
        const DGAlgebra& A = *X.block()->inner;
        size_t start = out.size();
        build_slots_for(A, sb, e - 1, out);
        for (size_t i = start; i < out.size(); ++i)
            out[i].gdeg += 1;  // wedge block keeps the inner index
        size_t mid = out.size();
        build_slots_for(A, sb, e, out);
        for (size_t i = mid; i < out.size(); ++i)
            out[i].gidx += A.rank(out[i].gdeg - 1);  // skip the wedge block
        return;
    }
    for (const auto& [d, count] : sb) {
        int j = e - d;
        if (j < 0 || j > X.top_degree())
            continue;
        for (int k = 0; k < count; ++k)
            for (int s = 0; s < X.rank(j); ++s)
                out.push_back(Slot{j, s, d, k});
    }
}

std::string gen_label(int d, int k) {
    return "b(" + std::to_string(d) + "," + std::to_string(k) + ")";
}

}  // namespace

// ---------------- RComplex ----------------

RMatrix RComplex::diff(int d) const {
    int i = d - lo - 1;
    if (i >= 0 && i < static_cast<int>(diffs.size()))
        return diffs[i];
    return RMatrix(ring, rank(d - 1), rank(d));
}

bool RComplex::is_complex() const {
    for (int d = lo + 2; d <= hi(); ++d)
        if (!(diff(d - 1) * diff(d)).is_zero())
            return false;
    return true;
}

std::map<int, std::vector<int>> RComplex::homology(int wlo, int whi) const {
    std::map<int, std::vector<int>> h;
    for (int d = wlo; d <= whi; ++d)
        h[d] = homology_invariants(diff(d), diff(d + 1));
    return h;
}

RComplex mapping_cone(const RComplex& C, const RComplex& D, const std::map<int, RMatrix>& f) {
    if (C.ring != D.ring)
        throw RingMismatch("cone of complexes over different rings");
    const TruncatedRing& R = C.ring;
    int lo = std::min(C.lo + 1, D.lo);
    int hi = std::max(C.hi() + 1, D.hi());
    RComplex cone{R, lo, {}, {}};
    for (int d = lo; d <= hi; ++d)
        cone.ranks.push_back(C.rank(d - 1) + D.rank(d));
    for (int d = lo + 1; d <= hi; ++d) {
        int rc = C.rank(d - 1), rd = D.rank(d);
        RMatrix m(R, C.rank(d - 2) + D.rank(d - 1), rc + rd);
        RMatrix dc = C.diff(d - 1);
        for (int i = 0; i < dc.rows; ++i)
            for (int j = 0; j < dc.cols; ++j)
                m.at(i, j) = R.neg(dc.at(i, j));
        auto it = f.find(d - 1);
        RMatrix fm = it != f.end() ? it->second : RMatrix(R, D.rank(d - 1), C.rank(d - 1));
        if (fm.rows != D.rank(d - 1) || fm.cols != C.rank(d - 1))
            throw DimensionMismatch("chain map component shape at degree " + std::to_string(d - 1));
        for (int i = 0; i < fm.rows; ++i)
            for (int j = 0; j < fm.cols; ++j)
                m.at(C.rank(d - 2) + i, j) = fm.at(i, j);
        RMatrix dd = D.diff(d);
        for (int i = 0; i < dd.rows; ++i)
            for (int j = 0; j < dd.cols; ++j)
                m.at(C.rank(d - 2) + i, rc + j) = dd.at(i, j);
        cone.diffs.push_back(std::move(m));
    }
    return cone;
}

// ---------------- DGModule ----------------

int DGModule::generators() const {
    int n = 0;
    for (const auto& [d, c] : semibasis_)
        n += c;
    return n;
}

int DGModule::semibasis_lo() const {
    return semibasis_.empty() ? 0 : semibasis_.begin()->first;
}

int DGModule::semibasis_hi() const {
    return semibasis_.empty() ? 0 : semibasis_.rbegin()->first;
}

bool DGModule::truncated() const { return trunc_top_ != kComplete; }

const RVector& DGModule::value(int d, int k) const {
    auto it = values_.find({d, k});
    if (it == values_.end())
        throw PreconditionError("no semi-basis element " + gen_label(d, k));
    return it->second;
}

void DGModule::build_slots(int e) const {
    if (slot_cache_.count(e))
        return;
    std::vector<Slot> s;
    build_slots_for(*algebra_, semibasis_, e, s);
    auto& pos = slot_pos_[e];
    for (size_t i = 0; i < s.size(); ++i)
        pos[s[i]] = static_cast<int>(i);
    slot_cache_[e] = std::move(s);
}

const std::vector<Slot>& DGModule::slots(int e) const {
    build_slots(e);
    return slot_cache_[e];
}

int DGModule::slot_position(int e, const Slot& s) const {
    build_slots(e);
    auto& pos = slot_pos_[e];
    auto it = pos.find(s);
    if (it == pos.end())
        throw Error("internal: missing slot lookup");
    return it->second;
}

int DGModule::lo_component() const { return semibasis_lo(); }

int DGModule::hi_component() const {
    return semibasis_.empty() ? -1 : semibasis_hi() + algebra_->top_degree();
}

const RMatrix& DGModule::action_matrix(int gdeg, int gidx, int e) const {
    auto key = std::make_tuple(gdeg, gidx, e);
    auto it = action_cache_.find(key);
    if (it != action_cache_.end())
        return it->second;
    const TruncatedRing& R = ring();
    RMatrix m(R, dim(e + gdeg), dim(e));
    const auto& src = slots(e);
    for (size_t c = 0; c < src.size(); ++c) {
        const Slot& s = src[c];
        RVector p = algebra_->product(gdeg, gidx, s.gdeg, s.gidx);
        for (size_t w = 0; w < p.size(); ++w) {
            if (R.is_zero(p[w]))
                continue;
            int r = slot_position(e + gdeg, Slot{gdeg + s.gdeg, static_cast<int>(w), s.mdeg, s.midx});
            m.at(r, static_cast<int>(c)) = p[w];
        }
    }
    return action_cache_.emplace(key, std::move(m)).first->second;
}

const RMatrix& DGModule::diff_matrix(int e) const {
    auto it = diff_cache_.find(e);
    if (it != diff_cache_.end())
        return it->second;
    const TruncatedRing& R = ring();
    RMatrix m(R, dim(e - 1), dim(e));
    const auto& src = slots(e);
    for (size_t c = 0; c < src.size(); ++c) {
        const Slot& s = src[c];
        // d(g b) = (dg) b + (-1)^{|g|} g (d b)
        if (s.gdeg >= 1) {
            const RMatrix& dA = algebra_->diff(s.gdeg);
            for (int r = 0; r < dA.rows; ++r) {
                const RingElement& cval = dA.at(r, s.gidx);
                if (R.is_zero(cval))
                    continue;
                int pos = slot_position(e - 1, Slot{s.gdeg - 1, r, s.mdeg, s.midx});
                m.at(pos, static_cast<int>(c)) = R.add(m.at(pos, static_cast<int>(c)), cval);
            }
        }
        const RVector& val = value(s.mdeg, s.midx);
        if (!val.empty()) {
            const RMatrix& act = action_matrix(s.gdeg, s.gidx, s.mdeg - 1);
            RVector img = dglift::apply(act, val);
            for (size_t r = 0; r < img.size(); ++r) {
                if (R.is_zero(img[r]))
                    continue;
                RingElement term = (s.gdeg % 2 == 0) ? img[r] : R.neg(img[r]);
                m.at(static_cast<int>(r), static_cast<int>(c)) =
                    R.add(m.at(static_cast<int>(r), static_cast<int>(c)), term);
            }
        }
    }
    return diff_cache_.emplace(e, std::move(m)).first->second;
}

int DGModule::inner_dim(int e) const {
    const auto& blk = algebra_->block();
    std::vector<Slot> s;
    build_slots_for(blk ? *blk->inner : *algebra_, semibasis_, e, s);
    return static_cast<int>(s.size());
}

RVector DGModule::delta_part(int d, int k) const {
    if (!algebra_->block()) return {};
    const RVector& v = value(d, k);
    int nd = inner_dim(d - 2);
    return RVector(v.begin(), v.begin() + nd);
}

RVector DGModule::alpha_part(int d, int k) const {
    if (!algebra_->block()) return value(d, k);
    const RVector& v = value(d, k);
    int nd = inner_dim(d - 2);
    return RVector(v.begin() + nd, v.end());
}

ModulePtr DGModule::inner_carrier() const {
    const auto& blk = algebra_->block();
    if (!carrier_cache_)
        carrier_cache_ = free_module(blk ? blk->inner : algebra_, semibasis_);
    return carrier_cache_;
}

bool DGModule::same_shape(const DGModule& o) const {
    return algebras_compatible(algebra_, o.algebra_) && semibasis_ == o.semibasis_;
}

// ---------------- constructors ----------------

ModulePtr make_semifree(AlgebraPtr X, std::map<int, int> semibasis,
                        std::map<std::pair<int, int>, RVector> values, int trunc_top) {
    if (!X)
        throw PreconditionError("null algebra");
    for (auto it = semibasis.begin(); it != semibasis.end();) {
        if (it->second < 0)
            throw SchemaError("negative semi-basis multiplicity");
        if (it->second == 0)
            it = semibasis.erase(it);
        else
            ++it;
    }
    if (trunc_top != kComplete && !semibasis.empty() && semibasis.rbegin()->first > trunc_top)
        throw PreconditionError("semi-basis exceeds its own truncation bound");
    auto M = std::shared_ptr<DGModule>(new DGModule(std::move(X)));
    M->semibasis_ = std::move(semibasis);
    M->trunc_top_ = trunc_top;
    // fill in missing values as zero, reject unknown keys
    for (const auto& [key, v] : values) {
        auto it = M->semibasis_.find(key.first);
        if (it == M->semibasis_.end() || key.second < 0 || key.second >= it->second)
            throw SchemaError("differential value for unknown generator " +
                              gen_label(key.first, key.second));
        (void)v;
    }
    for (const auto& [d, count] : M->semibasis_)
        for (int k = 0; k < count; ++k) {
            auto it = values.find({d, k});
            RVector v = it != values.end() ? it->second : RVector{};
            size_t want = static_cast<size_t>(M->dim(d - 1));
            if (v.empty())
                v = vec_zero(M->ring(), static_cast<int>(want));
            if (v.size() != want)
                throw DimensionMismatch("differential value of " + gen_label(d, k) + " has length " +
                                        std::to_string(v.size()) + ", expected " +
                                        std::to_string(want));
            M->values_[{d, k}] = std::move(v);
        }
    // d(d(b)) = 0 for every generator; everything else follows by Leibniz
    bool block = M->algebra_->block().has_value();
    for (const auto& [d, count] : M->semibasis_)
        for (int k = 0; k < count; ++k) {
            RVector w = dglift::apply(M->diff_matrix(d - 1), M->value(d, k));
            if (vec_is_zero(M->ring(), w))
                continue;
            if (!block)
                throw SquareNonzero("square_nonzero",
                                      "d(d(" + gen_label(d, k) + ")) != 0");
            int nd = M->inner_dim(d - 3);
            bool wedge_bad = false, inner_bad = false;
            for (size_t i = 0; i < w.size(); ++i)
                if (!M->ring().is_zero(w[i]))
                    (static_cast<int>(i) < nd ? wedge_bad : inner_bad) = true;
            if (inner_bad)
                throw SquareNonzero("square_plus_t_delta",
                                      "alpha^2 + t*delta != 0 at " + gen_label(d, k));
            throw SquareNonzero("delta_commute",
                                  "delta does not commute with alpha at " + gen_label(d, k));
        }
    return M;
}

ModulePtr make_block_module(AlgebraPtr B, std::map<int, int> semibasis,
                            std::map<std::pair<int, int>, RVector> alpha,
                            std::map<std::pair<int, int>, RVector> delta, int trunc_top) {
    if (!B || !B->block())
        throw PreconditionError("block module requires an algebra with block structure");
    const AlgebraPtr& A = B->block()->inner;
    std::map<std::pair<int, int>, RVector> values;
    for (const auto& [d, count] : semibasis)
        for (int k = 0; k < count; ++k) {
            std::vector<Slot> sd2, sd1;
            build_slots_for(*A, semibasis, d - 2, sd2);
            build_slots_for(*A, semibasis, d - 1, sd1);
            RVector dv, av;
            if (auto it = delta.find({d, k}); it != delta.end())
                dv = it->second;
            else
                dv = vec_zero(B->ring(), static_cast<int>(sd2.size()));
            if (auto it = alpha.find({d, k}); it != alpha.end())
                av = it->second;
            else
                av = vec_zero(B->ring(), static_cast<int>(sd1.size()));
            if (dv.size() != sd2.size())
                throw DimensionMismatch("delta value of " + gen_label(d, k) + " has length " +
                                        std::to_string(dv.size()) + ", expected " +
                                        std::to_string(sd2.size()));
            if (av.size() != sd1.size())
                throw DimensionMismatch("alpha value of " + gen_label(d, k) + " has length " +
                                        std::to_string(av.size()) + ", expected " +
                                        std::to_string(sd1.size()));
            RVector v = std::move(dv);
            v.insert(v.end(), av.begin(), av.end());
            values[{d, k}] = std::move(v);
        }
    return make_semifree(B, std::move(semibasis), std::move(values), trunc_top);
}

ModulePtr zero_module(AlgebraPtr X) { return make_semifree(std::move(X), {}, {}); }

ModulePtr free_module(AlgebraPtr X, std::map<int, int> semibasis) {
    return make_semifree(std::move(X), std::move(semibasis), {});
}

ModulePtr base_change(const DGModule& M, const AlgebraPtr& B) {
    if (!B || !B->block())
        throw PreconditionError("base change requires an algebra with block structure");
    if (!algebras_compatible(B->block()->inner, M.algebra()))
        throw AlgebraMismatch("module is not defined over the inner algebra");
    std::map<std::pair<int, int>, RVector> alpha;
    for (const auto& [d, count] : M.semibasis())
        for (int k = 0; k < count; ++k)
            alpha[{d, k}] = M.value(d, k);
    return make_block_module(B, M.semibasis(), std::move(alpha), {}, M.truncation_top());
}

ModulePtr restrict_to_inner(const DGModule& N) {
    if (!N.algebra()->block())
        throw PreconditionError("module algebra has no block structure");
    std::map<std::pair<int, int>, RVector> values;
    for (const auto& [d, count] : N.semibasis())
        for (int k = 0; k < count; ++k) {
            if (!vec_is_zero(N.ring(), N.delta_part(d, k)))
                throw PreconditionError("wedge component of the differential is nonzero at " +
                                        gen_label(d, k));
            values[{d, k}] = N.alpha_part(d, k);
        }
    return make_semifree(N.algebra()->block()->inner, N.semibasis(), std::move(values),
                         N.truncation_top());
}

ModulePtr shift_degrees(const DGModule& M, int shift) {
    std::map<int, int> sb;
    for (const auto& [d, c] : M.semibasis())
        sb[d + shift] = c;
    std::map<std::pair<int, int>, RVector> values;
    for (const auto& [d, c] : M.semibasis())
        for (int k = 0; k < c; ++k)
            values[{d + shift, k}] = M.value(d, k);
    int tt = M.truncation_top();
    return make_semifree(M.algebra(), std::move(sb), std::move(values),
                         tt == kComplete ? kComplete : tt + shift);
}

RComplex expand_to_r_linear(const DGModule& M) {
    RComplex c{M.ring(), M.lo_component(), {}, {}};
    if (M.semibasis().empty())
        return c;
    for (int d = M.lo_component(); d <= M.hi_component(); ++d)
        c.ranks.push_back(M.dim(d));
    for (int d = M.lo_component() + 1; d <= M.hi_component(); ++d)
        c.diffs.push_back(M.diff_matrix(d));
    return c;
}

std::map<int, std::vector<int>> homology(const DGModule& M, int wlo, int whi) {
    if (whi < wlo)
        throw PreconditionError("empty homology window");
    if (M.truncated() && whi > M.truncation_top() - 1)
        throw WindowTooWide("module truncated above degree " + std::to_string(M.truncation_top()) +
                            "; homology honest only up to " +
                            std::to_string(M.truncation_top() - 1));
    std::map<int, std::vector<int>> h;
    for (int d = wlo; d <= whi; ++d)
        h[d] = homology_invariants(M.diff_matrix(d), M.diff_matrix(d + 1));
    return h;
}

bool is_minimal(const DGModule& M) {
    if (M.algebra()->rank(0) != 1)
        throw PreconditionError("minimality test requires a local algebra with A_0 = R");
    for (const auto& [d, count] : M.semibasis())
        for (int k = 0; k < count; ++k) {
            const RVector& v = M.value(d, k);
            const auto& sl = M.slots(d - 1);
            for (size_t i = 0; i < v.size(); ++i)
                if (sl[i].gdeg == 0 && M.ring().valuation(v[i]) == 0)
                    return false;
        }
    return true;
}

// ---------------- GenericDGModule ----------------

RMatrix GenericDGModule::action_matrix(int gdeg, int gidx, int d) const {
    const TruncatedRing& R = algebra->ring();
    const RComplex& C = components;
    auto it = action.find({gdeg, gidx});
    int rows = C.rank(d + gdeg), cols = C.rank(d);
    if (it == action.end()) {
        if (gdeg == 0 && gidx == 0)
            return rows == cols ? RMatrix::identity(R, rows) : RMatrix(R, rows, cols);
        return RMatrix(R, rows, cols);
    }
    int i = d - C.lo;
    if (i < 0 || i >= static_cast<int>(it->second.size()))
        return RMatrix(R, rows, cols);
    const RMatrix& m = it->second[i];
    if (m.rows != rows || m.cols != cols)
        throw DimensionMismatch("action matrix shape for basis (" + std::to_string(gdeg) +
                                "," + std::to_string(gidx) + ") at degree " + std::to_string(d));
    return m;
}

ValidationReport GenericDGModule::validate() const {
    ValidationReport rep;
    const TruncatedRing& R = algebra->ring();
    const RComplex& C = components;
    auto add = [&](const std::string& name, bool pass, const std::string& wit) {
        rep.checks.push_back({name, pass, pass ? "" : wit});
    };
    int top_ok_degree = truncated_above ? C.hi() : INT32_MAX;

    {
        bool ok = true;
        std::string wit;
        for (int d = C.lo + 2; d <= C.hi() && ok; ++d)
            if (!(C.diff(d - 1) * C.diff(d)).is_zero()) {
                ok = false;
                wit = "d(d(-)) != 0 at degree " + std::to_string(d);
            }
        add("complex", ok, wit);
    }

    auto act = [&](int gdeg, int gidx, int d) -> RMatrix { return action_matrix(gdeg, gidx, d); };

    {
        bool ok = true;
        std::string wit;
        for (int d = C.lo; d <= C.hi() && ok; ++d) {
            RMatrix u = act(0, 0, d);
            if (u != RMatrix::identity(R, C.rank(d))) {
                ok = false;
                wit = "identity does not act as the identity at degree " + std::to_string(d);
            }
        }
        add("unit_action", ok, wit);
    }
    {
        bool ok = true;
        std::string wit;
        const DGAlgebra& A = *algebra;
        for (int gdeg = 0; gdeg <= A.top_degree() && ok; ++gdeg)
            for (int gidx = 0; gidx < A.rank(gdeg) && ok; ++gidx)
                for (int d = C.lo; d <= C.hi() && ok; ++d) {
                    if (d + gdeg > top_ok_degree || d + gdeg - 1 > top_ok_degree)
                        continue;
                    // d(g x) = (dg) x + (-1)^{|g|} g d(x)
                    RMatrix lhs = C.diff(d + gdeg) * act(gdeg, gidx, d);
                    RMatrix rhs(R, C.rank(d + gdeg - 1), C.rank(d));
                    if (gdeg >= 1) {
                        const RMatrix& dA = A.diff(gdeg);
                        for (int s = 0; s < dA.rows; ++s) {
                            if (R.is_zero(dA.at(s, gidx)))
                                continue;
                            rhs = rhs + act(gdeg - 1, s, d).scaled(dA.at(s, gidx));
                        }
                    }
                    RMatrix gd = act(gdeg, gidx, d - 1) * C.diff(d);
                    rhs = (gdeg % 2 == 0) ? rhs + gd : rhs - gd;
                    if (lhs != rhs) {
                        ok = false;
                        wit = "Leibniz fails for " + A.basis_name(gdeg, gidx) + " at degree " +
                              std::to_string(d);
                    }
                }
        add("leibniz_action", ok, wit);
    }
    {
        bool ok = true;
        std::string wit;
        const DGAlgebra& A = *algebra;
        for (int d1 = 0; d1 <= A.top_degree() && ok; ++d1)
            for (int i = 0; i < A.rank(d1) && ok; ++i)
                for (int d2 = 0; d2 <= A.top_degree() && ok; ++d2)
                    for (int j = 0; j < A.rank(d2) && ok; ++j)
                        for (int d = C.lo; d <= C.hi() && ok; ++d) {
                            if (d + d2 > top_ok_degree || d + d1 + d2 > top_ok_degree)
                                continue;
                            RMatrix lhs = act(d1, i, d + d2) * act(d2, j, d);
                            RMatrix rhs(R, C.rank(d + d1 + d2), C.rank(d));
                            RVector p = A.product(d1, i, d2, j);
                            for (size_t w = 0; w < p.size(); ++w) {
                                if (R.is_zero(p[w]))
                                    continue;
                                rhs = rhs + act(d1 + d2, static_cast<int>(w), d).scaled(p[w]);
                            }
                            if (lhs != rhs) {
                                ok = false;
                                wit = "action not multiplicative for " + A.basis_name(d1, i) +
                                      " * " + A.basis_name(d2, j) + " at degree " +
                                      std::to_string(d);
                            }
                        }
        add("associativity_action", ok, wit);
    }
    return rep;
}

GenericDGModule as_generic(const DGModule& M) {
    GenericDGModule g{M.algebra(), expand_to_r_linear(M), {}, M.truncated()};
    const DGAlgebra& A = *M.algebra();
    for (int gdeg = 0; gdeg <= A.top_degree(); ++gdeg)
        for (int gidx = 0; gidx < A.rank(gdeg); ++gidx) {
            std::vector<RMatrix> mats;
            for (int d = g.components.lo; d <= g.components.hi(); ++d)
                mats.push_back(M.action_matrix(gdeg, gidx, d));
            g.action[{gdeg, gidx}] = std::move(mats);
        }
    return g;
}

}  // namespace dglift
