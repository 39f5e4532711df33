#pragma once

#include "dg_module.hpp"

namespace dglift {

// Degree-p homomorphism between semi-free DG modules over the same algebra,
// determined by its values on the semi-basis of the source and extended by
// f(g m) = (-1)^{p |g|} g f(m).  Values are expanded coordinate vectors of
// the target.
class GradedHom {
  public:
    GradedHom(ModulePtr src, ModulePtr tgt, int degree);

    static GradedHom zero(ModulePtr src, ModulePtr tgt, int degree);
    static GradedHom identity(const ModulePtr& M);
    static GradedHom from_values(ModulePtr src, ModulePtr tgt, int degree,
                                 std::map<std::pair<int, int>, RVector> values);

    const ModulePtr& source() const { return src_; }
    const ModulePtr& target() const { return tgt_; }
    int degree() const { return degree_; }
    const RVector& value(int d, int k) const;
    void set_value(int d, int k, RVector v);

    // component matrix source_e -> target_{e+degree}
    RMatrix matrix(int e) const;
    RVector apply_to(int e, const RVector& x) const;

    GradedHom operator+(const GradedHom& o) const;
    GradedHom operator-(const GradedHom& o) const;
    GradedHom scaled(const RingElement& c) const;
    GradedHom negated() const;
    bool is_zero() const;
    bool equal_values(const GradedHom& o) const;

  private:
    ModulePtr src_, tgt_;
    int degree_;
    std::map<std::pair<int, int>, RVector> values_;
};

// g after f
GradedHom compose(const GradedHom& g, const GradedHom& f);

// d(f) = d_N f - (-1)^{|f|} f d_M
GradedHom hom_differential(const GradedHom& f);
bool is_cycle(const GradedHom& f);

// Maps between modules over a block algebra split into coefficient maps on
// the inner carriers: f(b) = [v(b); z(b)] with z of carrier degree p and v of
// carrier degree p-1.
GradedHom z_part(const GradedHom& f);
GradedHom v_part(const GradedHom& f);
GradedHom join_parts(const ModulePtr& srcB, const ModulePtr& tgtB, const GradedHom& z,
                     const GradedHom& v);
// K(t) (x) f for an inner-linear f: values [0; f(b)]
GradedHom base_change_hom(const GradedHom& f, const ModulePtr& srcB, const ModulePtr& tgtB);

// Same values viewed between different modules with identical slot layout
// (e.g. a coefficient map moved from the free carriers onto the modules that
// carry the differential).
GradedHom transfer(const GradedHom& f, ModulePtr src, ModulePtr tgt);

bool is_chain_iso(const GradedHom& f);
GradedHom invert_iso(const GradedHom& f);  // NotAnIso unless degree-0 chain iso

}  // namespace dglift
