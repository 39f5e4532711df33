#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "matrix.hpp"

namespace dglift {

class DGAlgebra;
using AlgebraPtr = std::shared_ptr<const DGAlgebra>;

// Marks an algebra B obtained as the Koszul complex on `t` tensored over an
// inner algebra A.  Degree i of B splits as A_{i-1} (+) A_i, in that order;
// the wedge generator spans the first summand.
struct BlockStructure {
    AlgebraPtr inner;
    RingElement t;
};

struct CheckResult {
    std::string name;
    bool pass;
    std::string witness;  // empty when pass
};

struct ValidationReport {
    std::vector<CheckResult> checks;
    bool ok() const {
        for (const auto& c : checks)
            if (!c.pass)
                return false;
        return true;
    }
    std::string first_failure() const {
        for (const auto& c : checks)
            if (!c.pass)
                return c.name + ": " + c.witness;
        return "";
    }
};

// A non-negatively graded DG R-algebra with finite free components, given by
// a basis per degree, differential matrices and a dense multiplication table.
// The first degree-0 basis element is the identity.
class DGAlgebra : public std::enable_shared_from_this<DGAlgebra> {
  public:
    const TruncatedRing& ring() const { return ring_; }
    int top_degree() const { return static_cast<int>(basis_.size()) - 1; }
    int rank(int d) const {
        return d < 0 || d > top_degree() ? 0 : static_cast<int>(basis_[d].size());
    }
    const std::string& basis_name(int d, int i) const { return basis_[d][i]; }
    // differential component A_d -> A_{d-1}; valid for 1 <= d <= top_degree
    const RMatrix& diff(int d) const;
    // coefficients of basis(d1,i1) * basis(d2,i2) over the basis of degree
    // d1+d2 (empty vector past the top degree)
    RVector product(int d1, int i1, int d2, int i2) const;

    // linear extension helpers; inputs are coefficient vectors over the bases
    RVector mul_elements(int d1, const RVector& x, int d2, const RVector& y) const;
    RVector diff_element(int d, const RVector& x) const;

    const std::optional<BlockStructure>& block() const { return block_; }
    // index split of degree-i basis when block() is set: the first
    // inner.rank(i-1) slots are the wedge part
    int wedge_rank(int i) const;

    bool structurally_equal(const DGAlgebra& o) const;
    std::string describe() const;

    // ---- constructors ----

    // R itself, concentrated in degree 0.
    static AlgebraPtr base_ring(const TruncatedRing& R);
    // Koszul complex on the given elements: an iterated tensor, first element
    // innermost.  Generator names e1, e2, ...
    static AlgebraPtr koszul(const TruncatedRing& R, const std::vector<RingElement>& elems);
    static AlgebraPtr tensor_with_koszul(const AlgebraPtr& inner, const RingElement& t,
                                         const std::string& gen_name = "");
    // fully explicit data; shapes are checked here, axioms via validate().
    // mult[d1][d2][i1*rank(d2)+i2] = product coefficients in degree d1+d2.
    static AlgebraPtr make_explicit(const TruncatedRing& R,
                                    std::vector<std::vector<std::string>> basis,
                                    std::vector<RMatrix> diffs,
                                    std::vector<std::vector<std::vector<RVector>>> mult);

    ValidationReport validate() const;

  private:
    DGAlgebra(TruncatedRing R) : ring_(std::move(R)) {}
    const RVector& table(int d1, int i1, int d2, int i2) const;

    TruncatedRing ring_;
    std::vector<std::vector<std::string>> basis_;
    std::vector<RMatrix> diffs_;  // diffs_[d-1] : A_d -> A_{d-1}
    // mult_[d1][d2][i1*rank(d2)+i2] = coefficients in degree d1+d2 (absent
    // entries when d1+d2 exceeds the top degree)
    std::vector<std::vector<std::vector<RVector>>> mult_;
    std::optional<BlockStructure> block_;
};

}  // namespace dglift
