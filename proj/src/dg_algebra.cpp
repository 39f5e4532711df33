#include "dglift/dg_algebra.hpp"

#include <sstream>

namespace dglift {

namespace {

std::string elem_label(const TruncatedRing& R, const RVector& coeffs,
                       const std::vector<std::string>& names) {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < coeffs.size(); ++i) {
        if (R.is_zero(coeffs[i]))
            continue;
        if (!first)
            os << " + ";
        first = false;
        os << "(" << R.to_string(coeffs[i]) << ")*" << names[i];
    }
    return first ? "0" : os.str();
}

}  // namespace

const RMatrix& DGAlgebra::diff(int d) const {
    if (d < 1 || d > top_degree())
        throw PreconditionError("differential degree out of range");
    return diffs_[d - 1];
}

const RVector& DGAlgebra::table(int d1, int i1, int d2, int i2) const {
    return mult_[d1][d2][static_cast<size_t>(i1) * rank(d2) + i2];
}

RVector DGAlgebra::product(int d1, int i1, int d2, int i2) const {
    if (d1 + d2 > top_degree())
        return {};
    return table(d1, i1, d2, i2);
}

RVector DGAlgebra::mul_elements(int d1, const RVector& x, int d2, const RVector& y) const {
    if (static_cast<int>(x.size()) != rank(d1) || static_cast<int>(y.size()) != rank(d2))
        throw DimensionMismatch("element coefficient vector has wrong length");
    RVector out = vec_zero(ring_, rank(d1 + d2));
    if (d1 + d2 > top_degree())
        return out;
    for (int i = 0; i < rank(d1); ++i) {
        if (ring_.is_zero(x[i]))
            continue;
        for (int j = 0; j < rank(d2); ++j) {
            if (ring_.is_zero(y[j]))
                continue;
            RingElement c = ring_.mul(x[i], y[j]);
            const RVector& p = table(d1, i, d2, j);
            for (size_t w = 0; w < p.size(); ++w)
                out[w] = ring_.add(out[w], ring_.mul(c, p[w]));
        }
    }
    return out;
}

RVector DGAlgebra::diff_element(int d, const RVector& x) const {
    if (d == 0)
        return {};
    return dglift::apply(diff(d), x);
}

int DGAlgebra::wedge_rank(int i) const {
    if (!block_)
        throw PreconditionError("algebra has no block structure");
    return block_->inner->rank(i - 1);
}

bool DGAlgebra::structurally_equal(const DGAlgebra& o) const {
    if (ring_ != o.ring_ || top_degree() != o.top_degree())
        return false;
    for (int d = 0; d <= top_degree(); ++d) {
        if (rank(d) != o.rank(d))
            return false;
        if (d >= 1 && diff(d) != o.diff(d))
            return false;
    }
    for (int d1 = 0; d1 <= top_degree(); ++d1)
        for (int d2 = 0; d1 + d2 <= top_degree(); ++d2)
            for (int i = 0; i < rank(d1); ++i)
                for (int j = 0; j < rank(d2); ++j)
                    if (table(d1, i, d2, j) != o.table(d1, i, d2, j))
                        return false;
    return true;
}

std::string DGAlgebra::describe() const {
    std::ostringstream os;
    os << "DG algebra over " << ring_.description() << ", ranks";
    for (int d = 0; d <= top_degree(); ++d)
        os << " " << rank(d);
    return os.str();
}

AlgebraPtr DGAlgebra::base_ring(const TruncatedRing& R) {
    auto A = std::shared_ptr<DGAlgebra>(new DGAlgebra(R));
    A->basis_ = {{"1"}};
    A->mult_.assign(1, std::vector<std::vector<RVector>>(1));
    A->mult_[0][0] = {RVector{R.one()}};
    return A;
}

AlgebraPtr DGAlgebra::koszul(const TruncatedRing& R, const std::vector<RingElement>& elems) {
    AlgebraPtr A = base_ring(R);
    for (size_t i = 0; i < elems.size(); ++i)
        A = tensor_with_koszul(A, elems[i], "e" + std::to_string(i + 1));
    return A;
}

AlgebraPtr DGAlgebra::tensor_with_koszul(const AlgebraPtr& inner, const RingElement& t,
                                         const std::string& gen_name) {
    const TruncatedRing& R = inner->ring();
    auto B = std::shared_ptr<DGAlgebra>(new DGAlgebra(R));
    const DGAlgebra& A = *inner;
    int topA = A.top_degree();
    int topB = topA + 1;
    std::string e = gen_name.empty() ? "e" : gen_name;
    auto wedge_name = [&](int, int s, const std::string& g) {
        return g == "1" ? e : e + "*" + g;
    };

    // basis: degree i of B is  e^A_{i-1}  then  A_i
    B->basis_.resize(topB + 1);
    for (int i = 0; i <= topB; ++i) {
        for (int s = 0; s < A.rank(i - 1); ++s)
            B->basis_[i].push_back(wedge_name(i - 1, s, A.basis_name(i - 1, s)));
        for (int s = 0; s < A.rank(i); ++s)
            B->basis_[i].push_back(A.basis_name(i, s));
    }

    // differential: [a; a'] in A_{i-1} (+) A_i goes to [-dA a; t a + dA a']
    for (int i = 1; i <= topB; ++i) {
        int re = A.rank(i - 1), r1 = A.rank(i);
        RMatrix m(R, A.rank(i - 2) + A.rank(i - 1), re + r1);
        for (int c = 0; c < re; ++c) {
            if (i - 1 >= 1) {
                const RMatrix& dA = A.diff(i - 1);
                for (int r = 0; r < dA.rows; ++r)
                    m.at(r, c) = R.neg(dA.at(r, c));
            }
            m.at(A.rank(i - 2) + c, c) = t;
        }
        if (i <= topA && i >= 1) {
            const RMatrix& dA = A.diff(i);
            for (int c = 0; c < r1; ++c)
                for (int r = 0; r < dA.rows; ++r)
                    m.at(A.rank(i - 2) + r, re + c) = dA.at(r, c);
        }
        B->diffs_.push_back(std::move(m));
    }

    // products: [a;a'][c;c'] = [a c' + (-1)^j a' c ; a' c'] for a' in A_j
    B->mult_.assign(topB + 1, std::vector<std::vector<RVector>>(topB + 1));
    for (int d1 = 0; d1 <= topB; ++d1)
        for (int d2 = 0; d1 + d2 <= topB; ++d2) {
            auto& cell = B->mult_[d1][d2];
            cell.resize(static_cast<size_t>(B->rank(d1)) * B->rank(d2));
            int e1 = A.rank(d1 - 1);  // wedge slots of degree d1
            int e2 = A.rank(d2 - 1);
            int dd = d1 + d2;
            int eo = A.rank(dd - 1);  // wedge slots of the output degree
            for (int i = 0; i < B->rank(d1); ++i)
                for (int j = 0; j < B->rank(d2); ++j) {
                    RVector out = vec_zero(R, B->rank(dd));
                    bool iw = i < e1, jw = j < e2;
                    if (iw && jw) {
                        // e a * e c = 0
                    } else if (iw && !jw) {
                        // (e a) * c' = e (a c')
                        RVector a = vec_zero(R, A.rank(d1 - 1));
                        a[i] = R.one();
                        RVector c = vec_zero(R, A.rank(d2));
                        c[j - e2] = R.one();
                        RVector p = A.mul_elements(d1 - 1, a, d2, c);
                        for (size_t w = 0; w < p.size(); ++w)
                            out[w] = p[w];
                    } else if (!iw && jw) {
                        // a' * (e c) = (-1)^{d1} e (a' c)
                        RVector a = vec_zero(R, A.rank(d1));
                        a[i - e1] = R.one();
                        RVector c = vec_zero(R, A.rank(d2 - 1));
                        c[j] = R.one();
                        RVector p = A.mul_elements(d1, a, d2 - 1, c);
                        for (size_t w = 0; w < p.size(); ++w)
                            out[w] = (d1 % 2 == 0) ? p[w] : R.neg(p[w]);
                    } else {
                        // a' * c' in the inner algebra
                        RVector a = vec_zero(R, A.rank(d1));
                        a[i - e1] = R.one();
                        RVector c = vec_zero(R, A.rank(d2));
                        c[j - e2] = R.one();
                        RVector p = A.mul_elements(d1, a, d2, c);
                        for (size_t w = 0; w < p.size(); ++w)
                            out[eo + w] = p[w];
                    }
                    cell[static_cast<size_t>(i) * B->rank(d2) + j] = std::move(out);
                }
        }
    B->block_ = BlockStructure{inner, t};
    return B;
}

AlgebraPtr DGAlgebra::make_explicit(const TruncatedRing& R,
                                    std::vector<std::vector<std::string>> basis,
                                    std::vector<RMatrix> diffs,
                                    std::vector<std::vector<std::vector<RVector>>> mult) {
    auto A = std::shared_ptr<DGAlgebra>(new DGAlgebra(R));
    if (basis.empty() || basis[0].empty())
        throw SchemaError("algebra needs at least the identity in degree 0");
    A->basis_ = std::move(basis);
    int top = A->top_degree();
    if (static_cast<int>(diffs.size()) != top)
        throw SchemaError("need one differential matrix per degree 1..top");
    for (int d = 1; d <= top; ++d) {
        const RMatrix& m = diffs[d - 1];
        if (m.ring != R)
            throw RingMismatch("differential matrix over wrong ring");
        if (m.rows != A->rank(d - 1) || m.cols != A->rank(d))
            throw DimensionMismatch("differential matrix shape at degree " + std::to_string(d));
    }
    A->diffs_ = std::move(diffs);
    if (static_cast<int>(mult.size()) != top + 1)
        throw SchemaError("multiplication table must cover all degrees");
    for (int d1 = 0; d1 <= top; ++d1) {
        if (static_cast<int>(mult[d1].size()) != top + 1)
            throw SchemaError("multiplication table must cover all degrees");
        for (int d2 = 0; d1 + d2 <= top; ++d2) {
            auto& cell = mult[d1][d2];
            if (cell.size() != static_cast<size_t>(A->rank(d1)) * A->rank(d2))
                throw DimensionMismatch("multiplication table cell size");
            for (auto& v : cell)
                if (static_cast<int>(v.size()) != A->rank(d1 + d2))
                    throw DimensionMismatch("product coefficient vector length");
        }
    }
    A->mult_ = std::move(mult);
    return A;
}

ValidationReport DGAlgebra::validate() const {
    ValidationReport rep;
    const TruncatedRing& R = ring_;
    int top = top_degree();
    auto add = [&](const std::string& name, bool pass, const std::string& wit) {
        rep.checks.push_back({name, pass, pass ? "" : wit});
    };

    {  // d a d = 0
        bool ok = true;
        std::string wit;
        for (int d = 2; d <= top && ok; ++d)
            if (!(diff(d - 1) * diff(d)).is_zero()) {
                ok = false;
                wit = "d(d(-)) != 0 on degree " + std::to_string(d);
            }
        add("dsquare_zero", ok, wit);
    }
    {  // Leibniz on all basis pairs
        bool ok = true;
        std::string wit;
        for (int d1 = 0; d1 <= top && ok; ++d1)
            for (int d2 = 0; d1 + d2 <= top && ok; ++d2)
                for (int i = 0; i < rank(d1) && ok; ++i)
                    for (int j = 0; j < rank(d2) && ok; ++j) {
                        if (d1 + d2 == 0)
                            continue;
                        RVector prod = table(d1, i, d2, j);
                        RVector lhs = diff_element(d1 + d2, prod);
                        RVector rhs = vec_zero(R, rank(d1 + d2 - 1));
                        if (d1 >= 1) {
                            RVector gi = vec_zero(R, rank(d1));
                            gi[i] = R.one();
                            RVector dg = diff_element(d1, gi);
                            RVector gj = vec_zero(R, rank(d2));
                            gj[j] = R.one();
                            rhs = vec_add(R, rhs, mul_elements(d1 - 1, dg, d2, gj));
                        }
                        if (d2 >= 1) {
                            RVector gi = vec_zero(R, rank(d1));
                            gi[i] = R.one();
                            RVector gj = vec_zero(R, rank(d2));
                            gj[j] = R.one();
                            RVector dh = diff_element(d2, gj);
                            RVector term = mul_elements(d1, gi, d2 - 1, dh);
                            if (d1 % 2 == 1)
                                term = vec_neg(R, term);
                            rhs = vec_add(R, rhs, term);
                        }
                        if (!vec_is_zero(R, vec_sub(R, lhs, rhs))) {
                            ok = false;
                            wit = "d(" + basis_name(d1, i) + " * " + basis_name(d2, j) +
                                  ") violates the Leibniz rule";
                        }
                    }
        add("leibniz", ok, wit);
    }
    {  // associativity on basis triples
        bool ok = true;
        std::string wit;
        for (int d1 = 0; d1 <= top && ok; ++d1)
            for (int d2 = 0; d1 + d2 <= top && ok; ++d2)
                for (int d3 = 0; d1 + d2 + d3 <= top && ok; ++d3)
                    for (int i = 0; i < rank(d1) && ok; ++i)
                        for (int j = 0; j < rank(d2) && ok; ++j)
                            for (int k = 0; k < rank(d3) && ok; ++k) {
                                RVector gk = vec_zero(R, rank(d3));
                                gk[k] = R.one();
                                RVector gi = vec_zero(R, rank(d1));
                                gi[i] = R.one();
                                RVector lhs =
                                    mul_elements(d1 + d2, table(d1, i, d2, j), d3, gk);
                                RVector rhs =
                                    mul_elements(d1, gi, d2 + d3, table(d2, j, d3, k));
                                if (!vec_is_zero(R, vec_sub(R, lhs, rhs))) {
                                    ok = false;
                                    wit = "(" + basis_name(d1, i) + " " + basis_name(d2, j) +
                                          ") " + basis_name(d3, k) + " != " + basis_name(d1, i) +
                                          " (" + basis_name(d2, j) + " " + basis_name(d3, k) + ")";
                                }
                            }
        add("associativity", ok, wit);
    }
    {  // the first degree-0 basis element is a two-sided identity
        bool ok = true;
        std::string wit;
        for (int d = 0; d <= top && ok; ++d)
            for (int i = 0; i < rank(d) && ok; ++i) {
                RVector unit = vec_zero(R, rank(d));
                unit[i] = R.one();
                if (table(0, 0, d, i) != unit || table(d, i, 0, 0) != unit) {
                    ok = false;
                    wit = "1 * " + basis_name(d, i) + " != " + basis_name(d, i);
                }
            }
        add("unitality", ok, wit);
    }
    {  // graded commutativity
        bool ok = true;
        std::string wit;
        for (int d1 = 0; d1 <= top && ok; ++d1)
            for (int d2 = 0; d1 + d2 <= top && ok; ++d2)
                for (int i = 0; i < rank(d1) && ok; ++i)
                    for (int j = 0; j < rank(d2) && ok; ++j) {
                        RVector lhs = table(d1, i, d2, j);
                        RVector rhs = table(d2, j, d1, i);
                        if ((d1 % 2) && (d2 % 2))
                            rhs = vec_neg(R, rhs);
                        if (lhs != rhs) {
                            ok = false;
                            wit = basis_name(d1, i) + " * " + basis_name(d2, j) +
                                  " is not graded-commutative (product " +
                                  elem_label(R, lhs, basis_[d1 + d2]) + ")";
                        }
                    }
        add("graded_commutativity", ok, wit);
    }
    {  // odd squares vanish (not implied by commutativity in characteristic 2)
        bool ok = true;
        std::string wit;
        for (int d = 1; d <= top && ok; d += 2)
            for (int i = 0; i < rank(d) && ok; ++i)
                if (2 * d <= top && !vec_is_zero(R, table(d, i, d, i))) {
                    ok = false;
                    wit = basis_name(d, i) + "^2 != 0";
                }
        add("odd_square_zero", ok, wit);
    }
    return rep;
}

}  // namespace dglift
