#pragma once

#include <map>
#include <memory>

#include "dg_algebra.hpp"

namespace dglift {

// Bounded complex of finite free R-modules; degrees lo..hi, zero outside.
struct RComplex {
    TruncatedRing ring;
    int lo = 0;
    std::vector<int> ranks;              // ranks[d-lo]
    std::vector<RMatrix> diffs;          // diffs[d-lo-1] : C_d -> C_{d-1}, d = lo+1..hi

    int hi() const { return lo + static_cast<int>(ranks.size()) - 1; }
    int rank(int d) const {
        return (d < lo || d > hi()) ? 0 : ranks[d - lo];
    }
    RMatrix diff(int d) const;           // zero matrix outside the stored range
    bool is_complex() const;             // d of d = 0
    // invariant factor exponents of H_d for each d in [wlo, whi]
    std::map<int, std::vector<int>> homology(int wlo, int whi) const;
};

// Mapping cone of a degree-0 chain map f : C -> D; H(cone) = 0 iff f is a
// quasi-isomorphism.
RComplex mapping_cone(const RComplex& C, const RComplex& D,
                      const std::map<int, RMatrix>& f);

// Position of one free generator of the expanded module: algebra basis
// element (gdeg, gidx) acting on semi-basis element (mdeg, midx).
struct Slot {
    int gdeg, gidx, mdeg, midx;
    bool operator==(const Slot& o) const {
        return gdeg == o.gdeg && gidx == o.gidx && mdeg == o.mdeg && midx == o.midx;
    }
    bool operator<(const Slot& o) const {
        if (gdeg != o.gdeg) return gdeg < o.gdeg;
        if (gidx != o.gidx) return gidx < o.gidx;
        if (mdeg != o.mdeg) return mdeg < o.mdeg;
        return midx < o.midx;
    }
};

class DGModule;
using ModulePtr = std::shared_ptr<const DGModule>;

// Semi-free DG module over a DG algebra X: finitely many semi-basis elements
// with degrees, and the value of the differential on each of them, written in
// the expanded coordinates of the next component down.  The differential
// extends by the Leibniz rule.
//
// When X carries a block structure B = K(t) (x) A, component N_i splits as
// M_{i-1} (+) M_i over the inner algebra and the expanded slot order follows
// that split recursively, so the wedge ("delta") part and the inner ("alpha")
// part of each value are contiguous subranges.
class DGModule : public std::enable_shared_from_this<DGModule> {
  public:
    const AlgebraPtr& algebra() const { return algebra_; }
    const TruncatedRing& ring() const { return algebra_->ring(); }
    const std::map<int, int>& semibasis() const { return semibasis_; }
    int generators() const;
    int semibasis_lo() const;  // 0 when empty
    int semibasis_hi() const;
    // semi-basis degrees are only represented up to this bound; INT_MAX when
    // the module is complete
    int truncation_top() const { return trunc_top_; }
    bool truncated() const;

    const RVector& value(int d, int k) const;

    // expanded picture (cached)
    const std::vector<Slot>& slots(int e) const;
    int dim(int e) const { return static_cast<int>(slots(e).size()); }
    int slot_position(int e, const Slot& s) const;
    int lo_component() const;
    int hi_component() const;
    const RMatrix& diff_matrix(int e) const;              // M_e -> M_{e-1}
    const RMatrix& action_matrix(int gdeg, int gidx, int e) const;  // M_e -> M_{e+gdeg}

    // block views; require algebra()->block()
    int inner_dim(int e) const;  // dim of the inner-algebra picture M_e
    RVector alpha_part(int d, int k) const;  // inner component of value(d,k)
    RVector delta_part(int d, int k) const;  // wedge component of value(d,k)
    // free module over the inner algebra on the same semi-basis (zero
    // differential); carrier for inner-linear coefficient maps
    ModulePtr inner_carrier() const;

    bool same_shape(const DGModule& o) const;  // algebra, semibasis equal

    friend ModulePtr make_semifree(AlgebraPtr X, std::map<int, int> semibasis,
                                   std::map<std::pair<int, int>, RVector> values, int trunc_top);

  private:
    DGModule(AlgebraPtr X) : algebra_(std::move(X)) {}
    void build_slots(int e) const;

    AlgebraPtr algebra_;
    std::map<int, int> semibasis_;
    std::map<std::pair<int, int>, RVector> values_;
    int trunc_top_;

    mutable std::map<int, std::vector<Slot>> slot_cache_;
    mutable std::map<int, std::map<Slot, int>> slot_pos_;
    mutable std::map<int, RMatrix> diff_cache_;
    mutable std::map<std::tuple<int, int, int>, RMatrix> action_cache_;
    mutable ModulePtr carrier_cache_;
};

inline constexpr int kComplete = INT32_MAX;

// Validates the Leibniz-compatibility of the values (d(d(b)) = 0 for every
// semi-basis element); throws ValidationError with equation ids
// "square_nonzero" resp. "square_plus_t_delta" / "delta_commute" for block
// algebras.
ModulePtr make_semifree(AlgebraPtr X, std::map<int, int> semibasis,
                        std::map<std::pair<int, int>, RVector> values,
                        int trunc_top = kComplete);

// Block form over B = K(t) (x) A: differential value [delta(b); alpha(b)].
// alpha values live in the inner picture at degree d-1, delta at d-2.
ModulePtr make_block_module(AlgebraPtr B, std::map<int, int> semibasis,
                            std::map<std::pair<int, int>, RVector> alpha,
                            std::map<std::pair<int, int>, RVector> delta,
                            int trunc_top = kComplete);

ModulePtr zero_module(AlgebraPtr X);
// semi-free with zero values (direct sum of shifted copies of X)
ModulePtr free_module(AlgebraPtr X, std::map<int, int> semibasis);

// B (x)_A M : same semi-basis, delta = 0.
ModulePtr base_change(const DGModule& M, const AlgebraPtr& B);
// Inverse on modules with vanishing wedge part: the inner-algebra module
// carrying the alpha data.  PreconditionError when some delta != 0.
ModulePtr restrict_to_inner(const DGModule& N);

// Regrade by adding `shift` to every semi-basis degree (no sign twist).
ModulePtr shift_degrees(const DGModule& M, int shift);

RComplex expand_to_r_linear(const DGModule& M);

// Homology window must keep one degree of honest margin on truncated
// modules; WindowTooWide otherwise.
std::map<int, std::vector<int>> homology(const DGModule& M, int wlo, int whi);

// True when the differential is minimal: every degree-0 algebra coefficient
// in every value lies in (t).
bool is_minimal(const DGModule& M);

// Components, differential and basis-action matrices given directly; the
// general (not necessarily semi-free) finite input for resolutions.
struct GenericDGModule {
    AlgebraPtr algebra;
    RComplex components;  // underlying complex over R
    // action[(gdeg, gidx)][d - components.lo] : C_d -> C_{d+gdeg}
    std::map<std::pair<int, int>, std::vector<RMatrix>> action;
    bool truncated_above = false;

    // missing (0,0) entries default to the identity, others to zero
    RMatrix action_matrix(int gdeg, int gidx, int d) const;
    ValidationReport validate() const;
};

GenericDGModule as_generic(const DGModule& M);

}  // namespace dglift
