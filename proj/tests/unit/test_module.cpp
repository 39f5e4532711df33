#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dglift/dg_module.hpp"
#include "dglift/errors.hpp"
#include "support/oracles.hpp"

using namespace dglift;

namespace {

struct ThreeStep {
    TruncatedRing R;
    AlgebraPtr B;
    ModulePtr N;
};

// 0 -> R -> R -> R -> 0 with alpha = (t, t) and delta(b2) = t b0
ThreeStep three_step() {
    auto R = TruncatedRing::poly_over_fp(2, 2);
    auto B = DGAlgebra::koszul(R, {R.t()});
    std::map<int, int> sb = {{0, 1}, {1, 1}, {2, 1}};
    std::map<std::pair<int, int>, RVector> alpha = {{{1, 0}, {R.t()}}, {{2, 0}, {R.t()}}};
    std::map<std::pair<int, int>, RVector> delta = {{{2, 0}, {R.t()}}};
    return {R, B, make_block_module(B, sb, alpha, delta)};
}

}  // namespace

TEST_CASE("block module validation accepts the three step example") {
    auto [R, B, N] = three_step();
    CHECK(N->generators() == 3);
    CHECK(N->semibasis_lo() == 0);
    CHECK(N->semibasis_hi() == 2);
    CHECK(!N->truncated());
    // component dims follow the split N_i = M_{i-1} (+) M_i
    CHECK(N->dim(0) == 1);
    CHECK(N->dim(1) == 2);
    CHECK(N->dim(2) == 2);
    CHECK(N->dim(3) == 1);
    CHECK(N->dim(4) == 0);
    CHECK(N->lo_component() == 0);
    CHECK(N->hi_component() == 3);
}

TEST_CASE("block module validation rejects broken data") {
    auto R = TruncatedRing::poly_over_fp(2, 2);
    auto B = DGAlgebra::koszul(R, {R.t()});
    std::map<int, int> sb = {{0, 1}, {1, 1}, {2, 1}};
    std::map<std::pair<int, int>, RVector> alpha = {{{1, 0}, {R.t()}}, {{2, 0}, {R.t()}}};
    // alpha^2 = 0 but -t delta = t: square_plus_t_delta fails
    std::map<std::pair<int, int>, RVector> delta = {{{2, 0}, {R.one()}}};
    CHECK_THROWS_AS(make_block_module(B, sb, alpha, delta), ValidationError);

    // alpha alone must square against t delta = 0
    std::map<std::pair<int, int>, RVector> alpha2 = {{{1, 0}, {R.one()}}, {{2, 0}, {R.one()}}};
    CHECK_THROWS_AS(make_block_module(B, sb, alpha2, {}), ValidationError);
}

TEST_CASE("expanded differential has the block shape and squares to zero") {
    auto [R, B, N] = three_step();
    auto t = R.t();
    RComplex C = expand_to_r_linear(*N);
    CHECK(C.is_complex());
    CHECK(C.lo == 0);
    CHECK(C.hi() == 3);
    // d1 = [t, t], d2 = [[t, t], [t, t]], d3 = [t, t]^T over bases
    // (e b0, b1), (e b1, b2)
    CHECK(C.diff(1).at(0, 0) == t);
    CHECK(C.diff(1).at(0, 1) == t);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            CHECK(C.diff(2).at(r, c) == t);
    CHECK(C.diff(3).at(0, 0) == t);
    CHECK(C.diff(3).at(1, 0) == t);

    CHECK(N->alpha_part(2, 0) == RVector{t});
    CHECK(N->delta_part(2, 0) == RVector{t});
    CHECK(N->delta_part(1, 0).empty());  // lands in inner degree -1, which is empty
}

TEST_CASE("homology of the three step block module") {
    auto [R, B, N] = three_step();
    auto H = homology(*N, -1, 4);
    CHECK(H.at(-1).empty());
    CHECK(H.at(0) == std::vector<int>{1});
    CHECK(H.at(1) == std::vector<int>{1, 1});
    CHECK(H.at(2) == std::vector<int>{1, 1});
    CHECK(H.at(3) == std::vector<int>{1});
    CHECK(H.at(4).empty());
}

TEST_CASE("slot order nests the block split") {
    auto [R, B, N] = three_step();
    // degree 2 of the expanded module: wedge slot (e, b1) then inner (1, b2)
    const auto& s = N->slots(2);
    REQUIRE(s.size() == 2);
    CHECK(s[0] == Slot{1, 0, 1, 0});
    CHECK(s[1] == Slot{0, 0, 2, 0});
    CHECK(N->slot_position(2, s[0]) == 0);
    CHECK(N->slot_position(2, s[1]) == 1);
    CHECK(N->inner_dim(2) == 1);
}

TEST_CASE("base change and restriction invert each other") {
    auto R = TruncatedRing::poly_over_fp(2, 3);
    auto A = DGAlgebra::base_ring(R);
    auto B = DGAlgebra::tensor_with_koszul(A, R.t());
    std::map<int, int> sb = {{0, 2}, {1, 1}};
    std::map<std::pair<int, int>, RVector> vals = {{{1, 0}, {R.t(), R.mul(R.t(), R.t())}}};
    auto M = make_semifree(A, sb, vals);
    auto N = base_change(*M, B);
    CHECK(N->algebra()->block().has_value());
    CHECK(N->generators() == 3);
    for (auto [d, k] : std::vector<std::pair<int, int>>{{0, 0}, {0, 1}, {1, 0}})
        CHECK(vec_is_zero(R, N->delta_part(d, k)));
    auto M2 = restrict_to_inner(*N);
    CHECK(M2->same_shape(*M));
    CHECK(M2->value(1, 0) == M->value(1, 0));

    auto [R2, B2, N2] = three_step();
    CHECK_THROWS_AS(restrict_to_inner(*N2), PreconditionError);
}

TEST_CASE("homology windows respect truncation") {
    auto R = TruncatedRing::poly_over_fp(2, 2);
    auto B = DGAlgebra::koszul(R, {R.t()});
    std::map<int, int> sb = {{0, 1}, {1, 1}, {2, 1}};
    std::map<std::pair<int, int>, RVector> alpha = {{{1, 0}, {R.t()}}, {{2, 0}, {R.t()}}};
    auto N = make_block_module(B, sb, alpha, {}, 3);  // generators above 3 unknown
    CHECK(N->truncated());
    CHECK(N->truncation_top() == 3);
    CHECK_NOTHROW(homology(*N, 0, 2));
    CHECK_THROWS_AS(homology(*N, 0, 4), WindowTooWide);

    auto [R2, B2, N2] = three_step();
    CHECK_NOTHROW(homology(*N2, -5, 9));
}

TEST_CASE("minimality detects unit coefficients") {
    auto R = TruncatedRing::poly_over_fp(2, 2);
    auto A = DGAlgebra::base_ring(R);
    auto M = make_semifree(A, {{0, 1}, {1, 1}}, {{{1, 0}, {R.t()}}});
    CHECK(is_minimal(*M));
    auto M2 = make_semifree(A, {{0, 1}, {1, 1}}, {{{1, 0}, {R.one()}}});
    CHECK(!is_minimal(*M2));
    auto [R3, B3, N3] = three_step();
    CHECK(is_minimal(*N3));
}

TEST_CASE("degree shift moves homology") {
    auto [R, B, N] = three_step();
    auto S = shift_degrees(*N, 2);
    auto H = homology(*N, 0, 3);
    auto HS = homology(*S, 2, 5);
    for (int d = 0; d <= 3; ++d)
        CHECK(H.at(d) == HS.at(d + 2));
}

TEST_CASE("generic view validates and knows its action") {
    auto [R, B, N] = three_step();
    auto G = as_generic(*N);
    CHECK(G.validate().ok());
    CHECK(G.components.rank(1) == 2);
    // action of the wedge generator squares to zero
    auto e1 = G.action_matrix(1, 0, 0);
    auto e2 = G.action_matrix(1, 0, 1);
    CHECK((e2 * e1).is_zero());
    // default action of the identity basis element
    auto id0 = G.action_matrix(0, 0, 1);
    CHECK(id0 == RMatrix::identity(R, 2));
}

TEST_CASE("free and zero modules") {
    auto R = TruncatedRing::poly_over_fp(3, 2);
    auto B = DGAlgebra::koszul(R, {R.t()});
    auto Z = zero_module(B);
    CHECK(Z->generators() == 0);
    auto F = free_module(B, {{0, 1}, {2, 2}});
    CHECK(F->generators() == 3);
    for (auto [d, k] : std::vector<std::pair<int, int>>{{0, 0}, {2, 0}, {2, 1}})
        CHECK(vec_is_zero(R, F->value(d, k)));
    // free module over B expands to a complex with zero homology margin checks
    CHECK(expand_to_r_linear(*F).is_complex());
}

TEST_CASE("semifree over the base ring is a plain complex") {
    auto R = TruncatedRing::integers_mod_prime_power(2, 3);  // Z/8
    auto A = DGAlgebra::base_ring(R);
    std::map<int, int> sb = {{0, 1}, {1, 1}, {2, 1}};
    std::map<std::pair<int, int>, RVector> vals = {
        {{1, 0}, {R.from_int(2)}}, {{2, 0}, {R.from_int(4)}}};
    auto M = make_semifree(A, sb, vals);
    auto H = homology(*M, 0, 2);
    // 2*4 = 8 = 0: valid complex; H_0 = Z/2, H_1 = ker(2)/im(4) = (4)/(4) = 0
    CHECK(H.at(0) == std::vector<int>{1});
    CHECK(H.at(1).empty());
    CHECK(H.at(2) == std::vector<int>{2});  // ker(4) = (2) = Z/4

    std::map<std::pair<int, int>, RVector> bad = {
        {{1, 0}, {R.from_int(2)}}, {{2, 0}, {R.from_int(2)}}};
    CHECK_THROWS_AS(make_semifree(A, sb, bad), ValidationError);
}
