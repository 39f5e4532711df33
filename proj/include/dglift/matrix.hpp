#pragma once

#include <optional>
#include <vector>

#include "ring.hpp"

namespace dglift {

using RVector = std::vector<RingElement>;

// Dense matrix over a truncated ring, row-major.
struct RMatrix {
    TruncatedRing ring;
    int rows = 0, cols = 0;
    std::vector<RingElement> a;

    RMatrix(TruncatedRing r, int m, int n)
        : ring(std::move(r)), rows(m), cols(n), a(static_cast<size_t>(m) * n, ring.zero()) {}

    RingElement& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const RingElement& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    static RMatrix identity(const TruncatedRing& r, int n);
    static RMatrix from_columns(const TruncatedRing& r, int rows, const std::vector<RVector>& cols);

    RMatrix operator+(const RMatrix& o) const;
    RMatrix operator-(const RMatrix& o) const;
    RMatrix operator*(const RMatrix& o) const;
    RMatrix scaled(const RingElement& c) const;
    RMatrix negated() const;
    bool operator==(const RMatrix& o) const;
    bool operator!=(const RMatrix& o) const { return !(*this == o); }
    bool is_zero() const;
    RVector column(int j) const;
};

RVector vec_zero(const TruncatedRing& r, int n);
RVector vec_add(const TruncatedRing& r, const RVector& a, const RVector& b);
RVector vec_sub(const TruncatedRing& r, const RVector& a, const RVector& b);
RVector vec_scale(const TruncatedRing& r, const RingElement& c, const RVector& a);
RVector vec_neg(const TruncatedRing& r, const RVector& a);
bool vec_is_zero(const TruncatedRing& r, const RVector& a);
RVector apply(const RMatrix& m, const RVector& x);

// Solves A x = b over the truncated ring via Smith normal form of the lift to
// the covering principal ideal domain (k[t] resp. Z) with the relation columns
// t^N I appended.  Free parameters are set to zero, so the result is a
// deterministic function of the input.  Returns nullopt when no solution
// exists.
std::optional<RVector> solve_linear(const RMatrix& A, const RVector& b);

// Generators of { x : A x = 0 }, in the column order produced by the Smith
// transform (deterministic).  The generators span the kernel but need not be
// independent.
std::vector<RVector> kernel_generators(const RMatrix& A);

// coker(A) = R^rows / colspan(A) decomposed as  (+) R/(t^{a_i}); returns the
// exponent multiset sorted descending, units dropped.  A free summand R shows
// up as exponent N = precision (t^N = 0).
std::vector<int> cokernel_invariants(const RMatrix& A);

// Invariant factor exponents of ker(d_in) / im(d_out); requires d_in*d_out=0.
std::vector<int> homology_invariants(const RMatrix& d_in, const RMatrix& d_out);

// A square matrix over a local ring is invertible iff its residue matrix mod
// the maximal ideal has full rank.
bool is_invertible(const RMatrix& A);
RMatrix invert(const RMatrix& A);  // throws NotAUnit when not invertible

}  // namespace dglift
