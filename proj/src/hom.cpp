#include "dglift/hom.hpp"

namespace dglift {

namespace {

void check_compatible(const DGModule& a, const DGModule& b) {
    if (a.algebra() != b.algebra() && !a.algebra()->structurally_equal(*b.algebra()))
        throw AlgebraMismatch("modules over different algebras");
}

}  // namespace

GradedHom::GradedHom(ModulePtr src, ModulePtr tgt, int degree)
    : src_(std::move(src)), tgt_(std::move(tgt)), degree_(degree) {
    if (!src_ || !tgt_)
        throw PreconditionError("null module in hom");
    check_compatible(*src_, *tgt_);
    for (const auto& [d, count] : src_->semibasis())
        for (int k = 0; k < count; ++k)
            values_[{d, k}] = vec_zero(src_->ring(), tgt_->dim(d + degree_));
}

GradedHom GradedHom::zero(ModulePtr src, ModulePtr tgt, int degree) {
    return GradedHom(std::move(src), std::move(tgt), degree);
}

GradedHom GradedHom::identity(const ModulePtr& M) {
    GradedHom f(M, M, 0);
    for (const auto& [d, count] : M->semibasis())
        for (int k = 0; k < count; ++k) {
            RVector v = vec_zero(M->ring(), M->dim(d));
            v[M->slot_position(d, Slot{0, 0, d, k})] = M->ring().one();
            f.set_value(d, k, std::move(v));
        }
    return f;
}

GradedHom GradedHom::from_values(ModulePtr src, ModulePtr tgt, int degree,
                                 std::map<std::pair<int, int>, RVector> values) {
    GradedHom f(std::move(src), std::move(tgt), degree);
    for (auto& [key, v] : values)
        f.set_value(key.first, key.second, std::move(v));
    return f;
}

const RVector& GradedHom::value(int d, int k) const {
    auto it = values_.find({d, k});
    if (it == values_.end())
        throw PreconditionError("hom value on unknown generator");
    return it->second;
}

void GradedHom::set_value(int d, int k, RVector v) {
    auto it = values_.find({d, k});
    if (it == values_.end())
        throw PreconditionError("hom value on unknown generator");
    if (v.size() != it->second.size())
        throw DimensionMismatch("hom value length mismatch");
    it->second = std::move(v);
}

RMatrix GradedHom::matrix(int e) const {
    const TruncatedRing& R = src_->ring();
    RMatrix m(R, tgt_->dim(e + degree_), src_->dim(e));
    const auto& sl = src_->slots(e);
    for (size_t c = 0; c < sl.size(); ++c) {
        const Slot& s = sl[c];
        const RVector& val = value(s.mdeg, s.midx);
        if (vec_is_zero(R, val))
            continue;
        // f(g b) = (-1)^{p|g|} g f(b)
        const RMatrix& act = tgt_->action_matrix(s.gdeg, s.gidx, s.mdeg + degree_);
        RVector img = dglift::apply(act, val);
        bool flip = (degree_ % 2 != 0) && (s.gdeg % 2 != 0);
        for (size_t r = 0; r < img.size(); ++r) {
            if (R.is_zero(img[r]))
                continue;
            m.at(static_cast<int>(r), static_cast<int>(c)) = flip ? R.neg(img[r]) : img[r];
        }
    }
    return m;
}

RVector GradedHom::apply_to(int e, const RVector& x) const { return dglift::apply(matrix(e), x); }

GradedHom GradedHom::operator+(const GradedHom& o) const {
    if (degree_ != o.degree_ || !src_->same_shape(*o.src_) || !tgt_->same_shape(*o.tgt_))
        throw DimensionMismatch("hom addition shape mismatch");
    GradedHom f(src_, tgt_, degree_);
    for (const auto& [key, v] : values_)
        f.values_[key] = vec_add(src_->ring(), v, o.values_.at(key));
    return f;
}

GradedHom GradedHom::operator-(const GradedHom& o) const { return *this + o.negated(); }

GradedHom GradedHom::scaled(const RingElement& c) const {
    GradedHom f(src_, tgt_, degree_);
    for (const auto& [key, v] : values_)
        f.values_[key] = vec_scale(src_->ring(), c, v);
    return f;
}

GradedHom GradedHom::negated() const {
    GradedHom f(src_, tgt_, degree_);
    for (const auto& [key, v] : values_)
        f.values_[key] = vec_neg(src_->ring(), v);
    return f;
}

bool GradedHom::is_zero() const {
    for (const auto& [key, v] : values_)
        if (!vec_is_zero(src_->ring(), v))
            return false;
    return true;
}

bool GradedHom::equal_values(const GradedHom& o) const {
    return degree_ == o.degree_ && values_ == o.values_;
}

GradedHom compose(const GradedHom& g, const GradedHom& f) {
    if (!f.target()->same_shape(*g.source()))
        throw DimensionMismatch("hom composition middle modules differ");
    GradedHom h(f.source(), g.target(), f.degree() + g.degree());
    for (const auto& [d, count] : f.source()->semibasis())
        for (int k = 0; k < count; ++k)
            h.set_value(d, k, g.apply_to(d + f.degree(), f.value(d, k)));
    return h;
}

GradedHom hom_differential(const GradedHom& f) {
    const ModulePtr& M = f.source();
    const ModulePtr& N = f.target();
    int p = f.degree();
    GradedHom df(M, N, p - 1);
    for (const auto& [d, count] : M->semibasis())
        for (int k = 0; k < count; ++k) {
            RVector a = dglift::apply(N->diff_matrix(d + p), f.value(d, k));
            RVector b = f.apply_to(d - 1, M->value(d, k));
            df.set_value(d, k, (p % 2 == 0) ? vec_sub(M->ring(), a, b) : vec_add(M->ring(), a, b));
        }
    return df;
}

bool is_cycle(const GradedHom& f) { return hom_differential(f).is_zero(); }

GradedHom z_part(const GradedHom& f) {
    const ModulePtr& M = f.source();
    const ModulePtr& N = f.target();
    GradedHom z(M->inner_carrier(), N->inner_carrier(), f.degree());
    for (const auto& [d, count] : M->semibasis())
        for (int k = 0; k < count; ++k) {
            const RVector& v = f.value(d, k);
            int cut = N->inner_dim(d + f.degree() - 1);
            z.set_value(d, k, RVector(v.begin() + cut, v.end()));
        }
    return z;
}

GradedHom v_part(const GradedHom& f) {
    const ModulePtr& M = f.source();
    const ModulePtr& N = f.target();
    GradedHom v(M->inner_carrier(), N->inner_carrier(), f.degree() - 1);
    for (const auto& [d, count] : M->semibasis())
        for (int k = 0; k < count; ++k) {
            const RVector& val = f.value(d, k);
            int cut = N->inner_dim(d + f.degree() - 1);
            v.set_value(d, k, RVector(val.begin(), val.begin() + cut));
        }
    return v;
}

GradedHom join_parts(const ModulePtr& srcB, const ModulePtr& tgtB, const GradedHom& z,
                     const GradedHom& v) {
    if (z.degree() != v.degree() + 1)
        throw DimensionMismatch("wedge part must sit one degree below");
    GradedHom f(srcB, tgtB, z.degree());
    for (const auto& [d, count] : srcB->semibasis())
        for (int k = 0; k < count; ++k) {
            RVector val = v.value(d, k);
            const RVector& zz = z.value(d, k);
            val.insert(val.end(), zz.begin(), zz.end());
            f.set_value(d, k, std::move(val));
        }
    return f;
}

GradedHom base_change_hom(const GradedHom& f, const ModulePtr& srcB, const ModulePtr& tgtB) {
    GradedHom zero_v(f.source(), f.target(), f.degree() - 1);
    return join_parts(srcB, tgtB, f, zero_v);
}

GradedHom transfer(const GradedHom& f, ModulePtr src, ModulePtr tgt) {
    GradedHom g(std::move(src), std::move(tgt), f.degree());
    for (const auto& [d, count] : g.source()->semibasis())
        for (int k = 0; k < count; ++k)
            g.set_value(d, k, f.value(d, k));
    return g;
}

bool is_chain_iso(const GradedHom& f) {
    if (f.degree() != 0 || !is_cycle(f))
        return false;
    const ModulePtr& M = f.source();
    const ModulePtr& N = f.target();
    if (M->semibasis().empty() && N->semibasis().empty())
        return true;
    int lo = std::min(M->lo_component(), N->lo_component());
    int hi = std::max(M->hi_component(), N->hi_component());
    for (int e = lo; e <= hi; ++e)
        if (!is_invertible(f.matrix(e)))
            return false;
    return true;
}

GradedHom invert_iso(const GradedHom& f) {
    if (!is_chain_iso(f))
        throw NotAnIso("map is not a degree-0 chain isomorphism");
    const ModulePtr& M = f.source();
    const ModulePtr& N = f.target();
    GradedHom g(N, M, 0);
    for (const auto& [d, count] : N->semibasis()) {
        if (count == 0 || N->dim(d) == 0)
            continue;
        RMatrix inv = invert(f.matrix(d));
        for (int k = 0; k < count; ++k)
            g.set_value(d, k, inv.column(N->slot_position(d, Slot{0, 0, d, k})));
    }
    return g;
}

}  // namespace dglift
