#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dglift/dg_algebra.hpp"
#include "dglift/errors.hpp"
#include "support/oracles.hpp"

using namespace dglift;

namespace {

// tower basis element -> (subset bitmask, sign) in the ascending wedge basis
struct SignedSubset {
    unsigned mask;
    int sign;
};

// The iterated tensor puts the newest generator in front of the wedge part;
// moving it to the back of an ascending monomial of length k costs (-1)^k.
std::vector<std::vector<SignedSubset>> tower_labels(int n) {
    std::vector<std::vector<SignedSubset>> cur(1);
    cur[0] = {SignedSubset{0u, 1}};
    for (int v = 0; v < n; ++v) {
        std::vector<std::vector<SignedSubset>> next(cur.size() + 1);
        for (int i = 0; i <= static_cast<int>(cur.size()); ++i) {
            // wedge part first: e_{v} * (degree i-1 of the inner algebra)
            if (i >= 1)
                for (const auto& s : cur[i - 1]) {
                    int k = __builtin_popcount(s.mask);
                    next[i].push_back(SignedSubset{s.mask | (1u << v), (k % 2 ? -s.sign : s.sign)});
                }
            if (i < static_cast<int>(cur.size()))
                for (const auto& s : cur[i])
                    next[i].push_back(s);
        }
        cur = std::move(next);
    }
    return cur;
}

}  // namespace

TEST_CASE("koszul complex on one element") {
    auto R = TruncatedRing::poly_over_fp(2, 2);
    auto B = DGAlgebra::koszul(R, {R.t()});
    CHECK(B->top_degree() == 1);
    CHECK(B->rank(0) == 1);
    CHECK(B->rank(1) == 1);
    CHECK(B->diff(1).at(0, 0) == R.t());
    CHECK(B->validate().ok());
    // e * e = 0
    CHECK(vec_is_zero(R, B->product(1, 0, 1, 0)));
    // H_0 = R/(t), H_1 = ann(t) = (t)
    CHECK(homology_invariants(RMatrix(R, 0, 1), B->diff(1)) == std::vector<int>{1});
    CHECK(homology_invariants(B->diff(1), RMatrix(R, 1, 0)) == std::vector<int>{1});
}

TEST_CASE("koszul axioms hold up to three generators") {
    auto R = TruncatedRing::poly_over_fp(3, 2);
    auto t = R.t();
    auto one = R.one();
    for (int n = 1; n <= 3; ++n) {
        std::vector<RingElement> elems;
        for (int i = 0; i < n; ++i)
            elems.push_back(i % 2 ? R.add(t, one) : t);
        auto B = DGAlgebra::koszul(R, elems);
        CHECK(B->top_degree() == n);
        auto rep = B->validate();
        INFO(rep.first_failure());
        CHECK(rep.ok());
        for (int d = 0; d <= n; ++d) {
            int binom = 1;
            for (int j = 0; j < d; ++j)
                binom = binom * (n - j) / (j + 1);
            CHECK(B->rank(d) == binom);
        }
    }
}

TEST_CASE("tensor with koszul is the two by two block formula") {
    auto R = TruncatedRing::poly_over_fp(3, 2);
    auto A = DGAlgebra::koszul(R, {R.t()});
    auto s = R.add(R.t(), R.one());
    auto B = DGAlgebra::tensor_with_koszul(A, s);
    REQUIRE(B->block().has_value());
    CHECK(B->block()->inner.get() == A.get());
    CHECK(B->block()->t == s);
    for (int i = 1; i <= B->top_degree(); ++i) {
        CHECK(B->rank(i) == A->rank(i - 1) + A->rank(i));
        CHECK(B->wedge_rank(i) == A->rank(i - 1));
        const RMatrix& D = B->diff(i);
        // [[-dA, 0], [s, dA]] entrywise
        int wr = A->rank(i - 2), wc = A->rank(i - 1);
        for (int r = 0; r < B->rank(i - 1); ++r)
            for (int c = 0; c < B->rank(i); ++c) {
                RingElement expect = R.zero();
                if (r < wr && c < wc && i >= 2)
                    expect = R.neg(A->diff(i - 1).at(r, c));
                else if (r >= wr && c < wc)
                    expect = (r - wr == c) ? s : R.zero();
                else if (r >= wr && c >= wc && i >= 1 && A->rank(i) > 0)
                    expect = A->diff(i).at(r - wr, c - wc);
                CHECK(D.at(r, c) == expect);
            }
    }
    // product formula [a; a'] [c; c'] = [a c' + (-1)^{|left|} a' c; a' c']
    for (int d1 = 0; d1 <= B->top_degree(); ++d1)
        for (int i1 = 0; i1 < B->rank(d1); ++i1)
            for (int d2 = 0; d2 + d1 <= B->top_degree(); ++d2)
                for (int i2 = 0; i2 < B->rank(d2); ++i2) {
                    int w1 = B->wedge_rank(d1), w2 = B->wedge_rank(d2);
                    RVector a(A->rank(d1 - 1), R.zero()), ap(A->rank(d1), R.zero());
                    RVector c(A->rank(d2 - 1), R.zero()), cp(A->rank(d2), R.zero());
                    if (i1 < w1)
                        a[i1] = R.one();
                    else
                        ap[i1 - w1] = R.one();
                    if (i2 < w2)
                        c[i2] = R.one();
                    else
                        cp[i2 - w2] = R.one();
                    int e = d1 + d2;
                    RVector wedge = vec_add(R, A->mul_elements(d1 - 1, a, d2, cp),
                                            [&] {
                                                auto v = A->mul_elements(d1, ap, d2 - 1, c);
                                                return d1 % 2 ? vec_neg(R, v) : v;
                                            }());
                    RVector inner = A->mul_elements(d1, ap, d2, cp);
                    RVector got = B->product(d1, i1, d2, i2);
                    RVector expect = wedge;
                    expect.insert(expect.end(), inner.begin(), inner.end());
                    CHECK(got == expect);
                }
}

TEST_CASE("tower agrees with the exterior algebra up to relabeling") {
    auto R = TruncatedRing::poly_over_q(2);
    std::vector<RingElement> elems = {R.t(), R.from_int(2), R.add(R.t(), R.one())};
    for (int n = 1; n <= 3; ++n) {
        std::vector<RingElement> sub(elems.begin(), elems.begin() + n);
        auto B = DGAlgebra::koszul(R, sub);
        oracle::WedgeKoszul W(R, sub);
        auto labels = tower_labels(n);

        auto to_wedge = [&](int d, const RVector& x) {
            RVector out(W.basis[d].size(), R.zero());
            for (size_t i = 0; i < x.size(); ++i) {
                const auto& lbl = labels[d][i];
                auto c = lbl.sign < 0 ? R.neg(x[i]) : x[i];
                out[W.index_of(lbl.mask)] = R.add(out[W.index_of(lbl.mask)], c);
            }
            return out;
        };

        for (int d = 1; d <= n; ++d) {
            // phi(d_tower(b)) == d_wedge(phi(b)) column by column
            for (int j = 0; j < B->rank(d); ++j) {
                RVector unit(B->rank(d), R.zero());
                unit[j] = R.one();
                RVector lhs = to_wedge(d - 1, B->diff_element(d, unit));
                RVector rhs = dglift::apply(W.diff(d), to_wedge(d, unit));
                CHECK(lhs == rhs);
            }
        }
        for (int d1 = 0; d1 <= n; ++d1)
            for (int d2 = 0; d1 + d2 <= n; ++d2)
                for (int i1 = 0; i1 < B->rank(d1); ++i1)
                    for (int i2 = 0; i2 < B->rank(d2); ++i2) {
                        RVector prod = to_wedge(d1 + d2, B->product(d1, i1, d2, i2));
                        // wedge side: signed product of the two labeled monomials
                        auto l1 = labels[d1][i1], l2 = labels[d2][i2];
                        RVector expect(W.basis[d1 + d2].size(), R.zero());
                        int sgn = W.product_sign(l1.mask, l2.mask) * l1.sign * l2.sign;
                        if (sgn != 0) {
                            auto c = R.one();
                            if (sgn < 0)
                                c = R.neg(c);
                            expect[W.index_of(l1.mask | l2.mask)] = c;
                        }
                        CHECK(prod == expect);
                    }
    }
}

TEST_CASE("explicit algebra validation catches bad data") {
    auto R = TruncatedRing::poly_over_fp(2, 2);
    auto B = DGAlgebra::koszul(R, {R.t()});
    // rebuild B explicitly and break the unit row: 1*e = 0
    std::vector<std::vector<std::string>> names = {{"1"}, {"e1"}};
    std::vector<RMatrix> diffs;
    RMatrix d1(R, 1, 1);
    d1.at(0, 0) = R.t();
    diffs.push_back(d1);
    std::vector<std::vector<std::vector<RVector>>> mult(2);
    mult[0] = {{B->product(0, 0, 0, 0)}, {RVector{R.zero()}}};
    mult[1] = {{B->product(1, 0, 0, 0)}, {B->product(1, 0, 1, 0)}};
    auto bad = DGAlgebra::make_explicit(R, names, diffs, mult);
    CHECK(!bad->validate().ok());

    mult[0][1] = {B->product(0, 0, 1, 0)};
    auto good = DGAlgebra::make_explicit(
        R, names, {B->diff(1)}, mult);
    CHECK(good->validate().ok());
    CHECK(good->structurally_equal(*B));
}

TEST_CASE("base ring algebra") {
    auto R = TruncatedRing::integers_mod_prime_power(5, 2);
    auto A = DGAlgebra::base_ring(R);
    CHECK(A->top_degree() == 0);
    CHECK(A->rank(0) == 1);
    CHECK(A->validate().ok());
    CHECK(!A->block().has_value());
}
