#include "dglift/hom_ext.hpp"

#include <climits>

namespace dglift {

HomSlice::HomSlice(ModulePtr src, ModulePtr tgt, int degree)
    : src_(std::move(src)), tgt_(std::move(tgt)), degree_(degree), total_(0) {
    for (const auto& [d, count] : src_->semibasis()) {
        int len = tgt_->dim(d + degree_);
        blocks_.push_back({d, count, len});
        total_ += count * len;
    }
}

GradedHom HomSlice::from_params(const RVector& x) const {
    if (static_cast<int>(x.size()) != total_)
        throw DimensionMismatch("parameter vector has length " + std::to_string(x.size()) +
                                ", slice has " + std::to_string(total_));
    GradedHom f(src_, tgt_, degree_);
    auto it = x.begin();
    for (const auto& b : blocks_)
        for (int k = 0; k < b[1]; ++k) {
            f.set_value(b[0], k, RVector(it, it + b[2]));
            it += b[2];
        }
    return f;
}

RVector HomSlice::to_params(const GradedHom& f) const {
    if (f.degree() != degree_ || !f.source()->same_shape(*src_) || !f.target()->same_shape(*tgt_))
        throw DimensionMismatch("hom does not belong to this slice");
    RVector x;
    x.reserve(total_);
    for (const auto& b : blocks_)
        for (int k = 0; k < b[1]; ++k) {
            const RVector& v = f.value(b[0], k);
            x.insert(x.end(), v.begin(), v.end());
        }
    return x;
}

HomSlice hom_slice(ModulePtr src, ModulePtr tgt, int degree) {
    return HomSlice(std::move(src), std::move(tgt), degree);
}

RMatrix hom_diff_matrix(const HomSlice& from, const HomSlice& to) {
    if (to.degree() != from.degree() - 1)
        throw PreconditionError("target slice must sit one degree below the source slice");
    const TruncatedRing& R = from.source()->ring();
    std::vector<RVector> cols;
    cols.reserve(from.params());
    RVector e = vec_zero(R, from.params());
    for (int j = 0; j < from.params(); ++j) {
        e[j] = R.one();
        cols.push_back(to.to_params(hom_differential(from.from_params(e))));
        e[j] = R.zero();
    }
    return RMatrix::from_columns(R, to.params(), cols);
}

std::optional<GradedHom> try_null_homotopy(const GradedHom& f) {
    if (!is_cycle(f))
        throw NotACycle("right-hand side is not a cycle");
    HomSlice up(f.source(), f.target(), f.degree() + 1);
    HomSlice here(f.source(), f.target(), f.degree());
    RMatrix D = hom_diff_matrix(up, here);
    auto x = solve_linear(D, here.to_params(f));
    if (!x)
        return std::nullopt;
    return up.from_params(*x);
}

GradedHom null_homotopy(const GradedHom& f) {
    auto s = try_null_homotopy(f);
    if (!s)
        throw NotNullHomotopic("the homotopy system for the given cycle has no solution");
    return *s;
}

ExtStatus ext_is_zero(int i, const ModulePtr& M, const ModulePtr& N) {
    ExtStatus st;
    st.state = ExtTriState::Inconclusive;
    st.window_lo = M->semibasis_lo();
    st.window_hi = M->truncated() ? M->truncation_top() : M->semibasis_hi();
    if (M->truncated() && N->truncated()) {
        st.reason = "both modules are truncated";
        return st;
    }
    if (N->truncated() && M->semibasis_hi() - i + 1 > N->truncation_top()) {
        st.reason = "target represented through degree " + std::to_string(N->truncation_top()) +
                    "; certifying needs it through " + std::to_string(M->semibasis_hi() - i + 1);
        return st;
    }
    if (M->truncated()) {
        int need = N->hi_component() + i + 1;
        if (M->truncation_top() < need) {
            st.reason = "source generators represented through degree " +
                        std::to_string(M->truncation_top()) + "; certifying needs them through " +
                        std::to_string(need);
            return st;
        }
    }
    int p = -i;
    HomSlice up(M, N, p + 1), here(M, N, p), down(M, N, p - 1);
    RMatrix boundary_of = hom_diff_matrix(here, down);
    RMatrix boundary_into = hom_diff_matrix(up, here);
    for (const RVector& c : kernel_generators(boundary_of)) {
        if (!solve_linear(boundary_into, c)) {
            st.state = ExtTriState::Nonzero;
            st.witness = here.from_params(c);
            return st;
        }
    }
    st.state = ExtTriState::Zero;
    return st;
}

namespace {

void check_resolvable(const GenericDGModule& D) {
    ValidationReport rep = D.validate();
    for (const auto& c : rep.checks) {
        if (c.pass)
            continue;
        if (c.name == "complex")
            throw SquareNonzero("square_nonzero", c.witness);
        throw LeibnizViolation(c.name, c.witness);
    }
}

}  // namespace

Resolution semi_free_resolution(const GenericDGModule& D, int window_top, bool require_complete) {
    check_resolvable(D);
    const AlgebraPtr& X = D.algebra;
    const TruncatedRing& R = X->ring();
    const RComplex& C = D.components;
    int topX = X->top_degree();

    bool c_zero = true;
    for (int r : C.ranks)
        if (r != 0)
            c_zero = false;
    if (c_zero && !D.truncated_above)
        return {zero_module(X), {}, true};

    int cap = window_top;
    if (D.truncated_above)
        cap = std::min(cap, C.hi() - 1);
    if (cap < C.lo)
        throw WindowExhausted("window top " + std::to_string(window_top) +
                              " is below the lowest represented degree " + std::to_string(C.lo));

    std::map<int, int> counts;
    std::map<std::pair<int, int>, RVector> values;
    std::map<std::pair<int, int>, RVector> phi;

    auto phi_matrix = [&](const DGModule& F, int e) -> RMatrix {
        RMatrix m(R, C.rank(e), F.dim(e));
        const auto& sl = F.slots(e);
        for (size_t c = 0; c < sl.size(); ++c) {
            const Slot& s = sl[c];
            RVector col = dglift::apply(D.action_matrix(s.gdeg, s.gidx, s.mdeg), phi.at({s.mdeg, s.midx}));
            for (int r = 0; r < m.rows; ++r)
                m.at(r, static_cast<int>(c)) = col[r];
        }
        return m;
    };
    auto in_span = [&](std::vector<RVector>& cols, const RVector& v, int n) {
        return solve_linear(RMatrix::from_columns(R, n, cols), v).has_value();
    };

    int processed_top = C.lo - 1;
    bool complete = false;
    for (int d = C.lo; d <= cap && !complete; ++d) {
        ModulePtr F = make_semifree(X, counts, values);
        // make H_d(F) -> H_d(D) surjective: new generator with zero
        // differential mapping onto each unhit cycle class
        if (C.rank(d) > 0) {
            std::vector<RVector> span;
            RMatrix bd = C.diff(d + 1);
            for (int j = 0; j < bd.cols; ++j)
                span.push_back(bd.column(j));
            RMatrix phiD = phi_matrix(*F, d);
            for (const RVector& z : kernel_generators(F->diff_matrix(d)))
                span.push_back(dglift::apply(phiD, z));
            for (const RVector& c : kernel_generators(C.diff(d))) {
                if (in_span(span, c, C.rank(d)))
                    continue;
                int k = counts[d]++;
                values[{d, k}] = vec_zero(R, F->dim(d - 1));
                phi[{d, k}] = c;
                span.push_back(c);
            }
        }
        // make H_{d-1}(F) -> H_{d-1}(D) injective: kill cycles whose image
        // bounds, by a new generator with that cycle as differential
        auto K = kernel_generators(F->diff_matrix(d - 1));
        if (!K.empty()) {
            int nK = static_cast<int>(K.size());
            RMatrix Kmat = RMatrix::from_columns(R, F->dim(d - 1), K);
            RMatrix phiK = phi_matrix(*F, d - 1) * Kmat;
            RMatrix bd = C.diff(d);
            RMatrix P(R, C.rank(d - 1), nK + C.rank(d));
            for (int r = 0; r < P.rows; ++r) {
                for (int j = 0; j < nK; ++j)
                    P.at(r, j) = phiK.at(r, j);
                for (int j = 0; j < bd.cols; ++j)
                    P.at(r, nK + j) = R.neg(bd.at(r, j));
            }
            std::vector<RVector> span;
            RMatrix dF = F->diff_matrix(d);
            for (int j = 0; j < dF.cols; ++j)
                span.push_back(dF.column(j));
            for (const RVector& pr : kernel_generators(P)) {
                RVector cvec(pr.begin(), pr.begin() + nK);
                RVector x = dglift::apply(Kmat, cvec);
                if (vec_is_zero(R, x) || in_span(span, x, F->dim(d - 1)))
                    continue;
                int k = counts[d]++;
                values[{d, k}] = x;
                phi[{d, k}] = RVector(pr.begin() + nK, pr.end());
                span.push_back(x);
            }
        }
        processed_top = d;
        int s_top = counts.empty() ? INT_MIN : counts.rbegin()->first;
        if (!D.truncated_above && d > C.hi() && (s_top == INT_MIN || d > s_top + topX))
            complete = true;
    }

    Resolution res;
    res.complete = complete;
    res.module = make_semifree(X, counts, values, complete ? kComplete : processed_top);
    for (int d = C.lo; d <= processed_top; ++d)
        res.to_target.emplace(d, phi_matrix(*res.module, d));
    for (int d = C.lo + 1; d <= processed_top; ++d)
        if (res.to_target.at(d - 1) * res.module->diff_matrix(d) != C.diff(d) * res.to_target.at(d))
            throw Error("internal: resolution map does not commute with the differentials");
    if (require_complete && !complete)
        throw WindowExhausted("homology persists at the window top " + std::to_string(cap));
    return res;
}

HomothetyStatus homothety_check(const ModulePtr& M, std::optional<std::pair<int, int>> window) {
    HomothetyStatus st;
    if (M->truncated()) {
        st.state = HomothetyTriState::Inconclusive;
        st.reason = "module truncated; the endomorphism complex is unknown above the truncation";
        return st;
    }
    const AlgebraPtr& X = M->algebra();
    const TruncatedRing& R = X->ring();

    RComplex XC{R, 0, {}, {}};
    for (int j = 0; j <= X->top_degree(); ++j)
        XC.ranks.push_back(X->rank(j));
    for (int j = 1; j <= X->top_degree(); ++j)
        XC.diffs.push_back(X->diff(j));

    int pLo = 0, pHi = 0;
    if (!M->semibasis().empty()) {
        pLo = std::min(0, M->lo_component() - M->semibasis_hi());
        pHi = std::max(X->top_degree(), M->hi_component() - M->semibasis_lo());
    } else {
        pHi = X->top_degree();
    }
    std::vector<HomSlice> slices;
    for (int p = pLo; p <= pHi; ++p)
        slices.push_back(hom_slice(M, M, p));

    RComplex HC{R, pLo, {}, {}};
    for (const auto& s : slices)
        HC.ranks.push_back(s.params());
    for (int p = pLo + 1; p <= pHi; ++p)
        HC.diffs.push_back(hom_diff_matrix(slices[p - pLo], slices[p - 1 - pLo]));

    // left multiplication by each algebra basis element, in slice coordinates
    std::map<int, RMatrix> chi;
    for (int j = 0; j <= X->top_degree(); ++j) {
        const HomSlice& S = slices[j - pLo];
        RMatrix m(R, S.params(), X->rank(j));
        for (int s = 0; s < X->rank(j); ++s) {
            GradedHom lam(M, M, j);
            for (const auto& [d, count] : M->semibasis())
                for (int k = 0; k < count; ++k) {
                    RVector v = vec_zero(R, M->dim(d + j));
                    v[M->slot_position(d + j, Slot{j, s, d, k})] = R.one();
                    lam.set_value(d, k, std::move(v));
                }
            RVector col = S.to_params(lam);
            for (int r = 0; r < m.rows; ++r)
                m.at(r, s) = col[r];
        }
        chi.emplace(j, std::move(m));
    }

    RComplex cone = mapping_cone(XC, HC, chi);
    int full_lo = cone.lo - 1, full_hi = cone.hi() + 1;
    int wlo = window ? window->first : full_lo;
    int whi = window ? window->second : full_hi;
    for (const auto& [deg, inv] : cone.homology(wlo, whi)) {
        if (inv.empty())
            continue;
        st.state = HomothetyTriState::No;
        st.witness_degree = deg;
        st.witness_invariants = inv;
        return st;
    }
    if (wlo <= full_lo && whi >= full_hi) {
        st.state = HomothetyTriState::Semidualizing;
    } else {
        st.state = HomothetyTriState::Inconclusive;
        st.reason = "window [" + std::to_string(wlo) + ", " + std::to_string(whi) +
                    "] does not cover the cone support [" + std::to_string(full_lo) + ", " +
                    std::to_string(full_hi) + "]";
    }
    return st;
}

}  // namespace dglift
