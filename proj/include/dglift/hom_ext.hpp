#pragma once

#include <optional>

#include "hom.hpp"

namespace dglift {

// Hom(M, N)_p as a free R-module: one coordinate per entry of each value
// vector, blocks ordered by source generator (degree, index).
class HomSlice {
  public:
    HomSlice(ModulePtr src, ModulePtr tgt, int degree);

    const ModulePtr& source() const { return src_; }
    const ModulePtr& target() const { return tgt_; }
    int degree() const { return degree_; }
    int params() const { return total_; }

    GradedHom from_params(const RVector& x) const;
    RVector to_params(const GradedHom& f) const;

  private:
    ModulePtr src_, tgt_;
    int degree_;
    std::vector<std::array<int, 3>> blocks_;  // {generator degree, count, value length}
    int total_;
};

HomSlice hom_slice(ModulePtr src, ModulePtr tgt, int degree);

// Matrix of f -> hom_differential(f) in slice coordinates; `to` must be the
// slice one degree below `from`.
RMatrix hom_diff_matrix(const HomSlice& from, const HomSlice& to);

// S with hom_differential(S) = f, free parameters tie-broken to zero.
// Throws NotACycle when f is not a cycle, NotNullHomotopic when the system
// has no solution.
GradedHom null_homotopy(const GradedHom& f);
std::optional<GradedHom> try_null_homotopy(const GradedHom& f);

enum class ExtTriState { Zero, Nonzero, Inconclusive };

struct ExtStatus {
    ExtTriState state;
    std::string reason;                // set when Inconclusive
    std::optional<GradedHom> witness;  // set when Nonzero: a cycle that is no boundary
    int window_lo = 0, window_hi = 0;  // generator degrees the certificate covers
    bool is_zero() const { return state == ExtTriState::Zero; }
};

// Ext^i(M, N) = H_{-i} Hom(M, N).  Decisive when the represented generator
// data reaches far enough above the support of the target; otherwise
// Inconclusive rather than a fabricated Zero.
ExtStatus ext_is_zero(int i, const ModulePtr& M, const ModulePtr& N);

struct Resolution {
    ModulePtr module;                  // semi-free F
    std::map<int, RMatrix> to_target;  // expanded F_d -> D_d component coordinates
    bool complete;                     // quasi-isomorphism certified in every degree
};

// Killing-cycles construction of a semi-free F with a quasi-isomorphism
// F -> D, adding generators degree by degree through window_top.  The result
// is truncated when generators may still be needed above the window; with
// require_complete that case throws WindowExhausted instead.
Resolution semi_free_resolution(const GenericDGModule& D, int window_top,
                                bool require_complete = false);

enum class HomothetyTriState { Semidualizing, No, Inconclusive };

struct HomothetyStatus {
    HomothetyTriState state;
    std::string reason;                  // set when Inconclusive
    int witness_degree = 0;              // set when No
    std::vector<int> witness_invariants;
};

// Is left multiplication X -> Hom(M, M) a quasi-isomorphism?  Checked via
// the mapping cone; decisive for complete modules when the window (default:
// the cone's full support) is wide enough.
HomothetyStatus homothety_check(const ModulePtr& M,
                                std::optional<std::pair<int, int>> window = std::nullopt);

}  // namespace dglift
