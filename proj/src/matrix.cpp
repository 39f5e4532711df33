#include "dglift/matrix.hpp"

#include <algorithm>

#include "smith.hpp"

namespace dglift {

namespace {

void check_same_ring(const RMatrix& a, const RMatrix& b) {
    if (a.ring != b.ring)
        throw RingMismatch("matrices over different rings");
}

// ---- Euclidean domains covering the truncated rings ----

// dense polynomials over F_p, trimmed
struct FpPolyDom {
    std::uint64_t p;
    using V = std::vector<std::uint64_t>;

    static void trim(V& a) {
        while (!a.empty() && a.back() == 0)
            a.pop_back();
    }
    V zero() const { return {}; }
    V one() const { return {1}; }
    bool is_zero(const V& a) const { return a.empty(); }
    bool is_one(const V& a) const { return a.size() == 1 && a[0] == 1; }
    V add(const V& a, const V& b) const {
        V r(std::max(a.size(), b.size()), 0);
        for (size_t i = 0; i < a.size(); ++i)
            r[i] = a[i];
        for (size_t i = 0; i < b.size(); ++i)
            r[i] = (r[i] + b[i]) % p;
        trim(r);
        return r;
    }
    V neg(const V& a) const {
        V r = a;
        for (auto& c : r)
            c = c == 0 ? 0 : p - c;
        return r;
    }
    V sub(const V& a, const V& b) const { return add(a, neg(b)); }
    V mul(const V& a, const V& b) const {
        if (a.empty() || b.empty())
            return {};
        V r(a.size() + b.size() - 1, 0);
        for (size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0)
                continue;
            for (size_t j = 0; j < b.size(); ++j)
                r[i + j] = (r[i + j] + a[i] * b[j]) % p;
        }
        trim(r);
        return r;
    }
    std::uint64_t inv_mod(std::uint64_t x) const {
        long long t0 = 0, t1 = 1, r0 = static_cast<long long>(p), r1 = static_cast<long long>(x);
        while (r1) {
            long long q = r0 / r1;
            long long t = t0 - q * t1;
            t0 = t1;
            t1 = t;
            t = r0 - q * r1;
            r0 = r1;
            r1 = t;
        }
        return static_cast<std::uint64_t>(t0 < 0 ? t0 + static_cast<long long>(p) : t0);
    }
    void divmod(const V& a, const V& b, V& q, V& r) const {
        r = a;
        q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
        std::uint64_t lead_inv = inv_mod(b.back());
        while (r.size() >= b.size() && !r.empty()) {
            size_t shift = r.size() - b.size();
            std::uint64_t c = (r.back() * lead_inv) % p;
            if (c != 0) {
                q[shift] = c;
                for (size_t i = 0; i < b.size(); ++i) {
                    std::uint64_t sub_ = (c * b[i]) % p;
                    r[shift + i] = (r[shift + i] + p - sub_) % p;
                }
            }
            // leading coefficient is zero now
            while (!r.empty() && r.back() == 0)
                r.pop_back();
            if (r.size() < b.size())
                break;
        }
        trim(q);
    }
    bool norm_less(const V& a, const V& b) const { return a.size() < b.size(); }
    V canonical_unit(const V& a) const { return {inv_mod(a.back())}; }  // makes a monic
};

// dense polynomials over Q
struct QPolyDom {
    using V = std::vector<BigRat>;

    static void trim(V& a) {
        while (!a.empty() && a.back() == 0)
            a.pop_back();
    }
    V zero() const { return {}; }
    V one() const { return {BigRat(1)}; }
    bool is_zero(const V& a) const { return a.empty(); }
    bool is_one(const V& a) const { return a.size() == 1 && a[0] == 1; }
    V add(const V& a, const V& b) const {
        V r(std::max(a.size(), b.size()), BigRat(0));
        for (size_t i = 0; i < a.size(); ++i)
            r[i] = a[i];
        for (size_t i = 0; i < b.size(); ++i)
            r[i] += b[i];
        trim(r);
        return r;
    }
    V neg(const V& a) const {
        V r = a;
        for (auto& c : r)
            c = -c;
        return r;
    }
    V sub(const V& a, const V& b) const { return add(a, neg(b)); }
    V mul(const V& a, const V& b) const {
        if (a.empty() || b.empty())
            return {};
        V r(a.size() + b.size() - 1, BigRat(0));
        for (size_t i = 0; i < a.size(); ++i)
            for (size_t j = 0; j < b.size(); ++j)
                r[i + j] += a[i] * b[j];
        trim(r);
        return r;
    }
    void divmod(const V& a, const V& b, V& q, V& r) const {
        r = a;
        q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, BigRat(0));
        while (r.size() >= b.size() && !r.empty()) {
            size_t shift = r.size() - b.size();
            BigRat c = r.back() / b.back();
            q[shift] = c;
            for (size_t i = 0; i < b.size(); ++i)
                r[shift + i] -= c * b[i];
            while (!r.empty() && r.back() == 0)
                r.pop_back();
            if (r.size() < b.size())
                break;
        }
        trim(q);
    }
    bool norm_less(const V& a, const V& b) const { return a.size() < b.size(); }
    V canonical_unit(const V& a) const { return {1 / a.back()}; }
};

// rational integers with symmetric remainder
struct IntDom {
    using V = BigInt;

    V zero() const { return 0; }
    V one() const { return 1; }
    bool is_zero(const V& a) const { return a == 0; }
    bool is_one(const V& a) const { return a == 1; }
    V add(const V& a, const V& b) const { return a + b; }
    V sub(const V& a, const V& b) const { return a - b; }
    V mul(const V& a, const V& b) const { return a * b; }
    V neg(const V& a) const { return -a; }
    void divmod(const V& a, const V& b, V& q, V& r) const {
        q = a / b;
        r = a - q * b;
        if (2 * abs(r) > abs(b)) {
            q += ((r < 0) == (b < 0)) ? 1 : -1;
            r = a - q * b;
        }
    }
    bool norm_less(const V& a, const V& b) const { return abs(a) < abs(b); }
    V canonical_unit(const V& a) const { return a < 0 ? V(-1) : V(1); }
};

// ---- lifting ring elements into the Euclidean domain and back ----

template <class Dom>
struct Bridge;

template <>
struct Bridge<FpPolyDom> {
    static FpPolyDom dom(const TruncatedRing& r) { return FpPolyDom{r.prime()}; }
    static FpPolyDom::V lift(const TruncatedRing& r, const RingElement& x) {
        FpPolyDom::V v(r.precision(), 0);
        for (int j = 0; j < r.precision(); ++j)
            v[j] = std::get<std::uint64_t>(r.digit(x, j).v);
        FpPolyDom::trim(v);
        return v;
    }
    static RingElement reduce(const TruncatedRing& r, const FpPolyDom::V& v) {
        std::vector<Scalar> d;
        for (int j = 0; j < r.precision() && j < static_cast<int>(v.size()); ++j)
            d.push_back(Scalar(v[j]));
        return r.from_digits(d);
    }
    static FpPolyDom::V relation(const TruncatedRing& r) {
        FpPolyDom::V v(r.precision() + 1, 0);
        v[r.precision()] = 1;
        return v;  // t^N
    }
    // exponent a when v = unit * t^a, or -1
    static int t_exponent(const FpPolyDom& d, const FpPolyDom::V& v) {
        if (d.is_zero(v))
            return -1;
        for (size_t i = 0; i + 1 < v.size(); ++i)
            if (v[i] != 0)
                return -1;
        return static_cast<int>(v.size()) - 1;
    }
};

template <>
struct Bridge<QPolyDom> {
    static QPolyDom dom(const TruncatedRing&) { return QPolyDom{}; }
    static QPolyDom::V lift(const TruncatedRing& r, const RingElement& x) {
        QPolyDom::V v(r.precision(), BigRat(0));
        for (int j = 0; j < r.precision(); ++j)
            v[j] = std::get<BigRat>(r.digit(x, j).v);
        QPolyDom::trim(v);
        return v;
    }
    static RingElement reduce(const TruncatedRing& r, const QPolyDom::V& v) {
        std::vector<Scalar> d;
        for (int j = 0; j < r.precision() && j < static_cast<int>(v.size()); ++j)
            d.push_back(Scalar(v[j]));
        return r.from_digits(d);
    }
    static QPolyDom::V relation(const TruncatedRing& r) {
        QPolyDom::V v(r.precision() + 1, BigRat(0));
        v[r.precision()] = 1;
        return v;
    }
    static int t_exponent(const QPolyDom& d, const QPolyDom::V& v) {
        if (d.is_zero(v))
            return -1;
        for (size_t i = 0; i + 1 < v.size(); ++i)
            if (v[i] != 0)
                return -1;
        return static_cast<int>(v.size()) - 1;
    }
};

template <>
struct Bridge<IntDom> {
    static IntDom dom(const TruncatedRing&) { return IntDom{}; }
    static BigInt modulus(const TruncatedRing& r) {
        BigInt m = 1;
        for (int i = 0; i < r.precision(); ++i)
            m *= r.prime();
        return m;
    }
    static IntDom::V lift(const TruncatedRing&, const RingElement& x) { return std::get<BigInt>(x.v); }
    static RingElement reduce(const TruncatedRing& r, const IntDom::V& v) {
        BigInt m = modulus(r);
        BigInt x = v % m;
        if (x < 0)
            x += m;
        RingElement e;
        e.v = x;
        return e;
    }
    static IntDom::V relation(const TruncatedRing& r) { return modulus(r); }
};

// ---- generic drivers ----

template <class Dom>
std::optional<RVector> solve_impl(const RMatrix& A, const RVector& b) {
    const TruncatedRing& R = A.ring;
    Dom dom = Bridge<Dom>::dom(R);
    using V = typename Dom::V;
    const int m = A.rows, n = A.cols;
    std::vector<std::vector<V>> G(m, std::vector<V>(n + m, dom.zero()));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j)
            G[i][j] = Bridge<Dom>::lift(R, A.at(i, j));
        G[i][n + i] = Bridge<Dom>::relation(R);
    }
    auto d = smith::diagonalize(dom, std::move(G));
    std::vector<V> blift(m);
    for (int i = 0; i < m; ++i)
        blift[i] = Bridge<Dom>::lift(R, b[i]);
    std::vector<V> c(m, dom.zero());
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (!dom.is_zero(d.U[i][j]))
                c[i] = dom.add(c[i], dom.mul(d.U[i][j], blift[j]));
    std::vector<V> y(n + m, dom.zero());
    for (int i = 0; i < m; ++i) {
        if (i < d.rank) {
            V q, r;
            dom.divmod(c[i], d.diag[i], q, r);
            if (!dom.is_zero(r))
                return std::nullopt;
            y[i] = q;
        } else if (!dom.is_zero(c[i])) {
            return std::nullopt;
        }
    }
    RVector x(n, R.zero());
    for (int i = 0; i < n; ++i) {
        V acc = dom.zero();
        for (int j = 0; j < d.rank; ++j)
            if (!dom.is_zero(d.W[i][j]) && !dom.is_zero(y[j]))
                acc = dom.add(acc, dom.mul(d.W[i][j], y[j]));
        x[i] = Bridge<Dom>::reduce(R, acc);
    }
    return x;
}

template <class Dom>
std::vector<RVector> kernel_impl(const RMatrix& A) {
    const TruncatedRing& R = A.ring;
    Dom dom = Bridge<Dom>::dom(R);
    using V = typename Dom::V;
    const int m = A.rows, n = A.cols;
    if (m == 0) {
        std::vector<RVector> gens;
        for (int j = 0; j < n; ++j) {
            RVector x(n, R.zero());
            x[j] = R.one();
            gens.push_back(std::move(x));
        }
        return gens;
    }
    std::vector<std::vector<V>> G(m, std::vector<V>(n + m, dom.zero()));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j)
            G[i][j] = Bridge<Dom>::lift(R, A.at(i, j));
        G[i][n + i] = Bridge<Dom>::relation(R);
    }
    auto d = smith::diagonalize(dom, std::move(G));
    std::vector<RVector> gens;
    for (int j = d.rank; j < n + m; ++j) {
        RVector x(n, R.zero());
        bool nz = false;
        for (int i = 0; i < n; ++i) {
            x[i] = Bridge<Dom>::reduce(R, d.W[i][j]);
            if (!R.is_zero(x[i]))
                nz = true;
        }
        if (nz)
            gens.push_back(std::move(x));
    }
    return gens;
}

template <class Dom>
std::vector<int> coker_impl(const RMatrix& A) {
    const TruncatedRing& R = A.ring;
    Dom dom = Bridge<Dom>::dom(R);
    using V = typename Dom::V;
    const int m = A.rows, n = A.cols;
    if (m == 0)
        return {};
    std::vector<std::vector<V>> G(m, std::vector<V>(n + m, dom.zero()));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j)
            G[i][j] = Bridge<Dom>::lift(R, A.at(i, j));
        G[i][n + i] = Bridge<Dom>::relation(R);
    }
    auto d = smith::diagonalize(dom, std::move(G));
    if (d.rank != m)
        throw Error("internal: cokernel rank defect despite relation columns");
    std::vector<int> exps;
    for (int i = 0; i < m; ++i) {
        int e;
        if constexpr (std::is_same_v<Dom, IntDom>) {
            BigInt q = abs(d.diag[i]);
            e = 0;
            while (q % R.prime() == 0) {
                q /= R.prime();
                ++e;
            }
            if (q != 1)
                throw Error("internal: cokernel invariant not a power of p");
        } else {
            e = Bridge<Dom>::t_exponent(dom, d.diag[i]);
            if (e < 0)
                throw Error("internal: cokernel invariant not a power of t");
        }
        if (e > 0)
            exps.push_back(e);
    }
    std::sort(exps.rbegin(), exps.rend());
    return exps;
}

template <class F>
auto dispatch(const TruncatedRing& r, F&& f) {
    switch (r.kind()) {
        case TruncatedRing::Kind::PolyOverFp:
            return f(static_cast<FpPolyDom*>(nullptr));
        case TruncatedRing::Kind::PolyOverQ:
            return f(static_cast<QPolyDom*>(nullptr));
        default:
            return f(static_cast<IntDom*>(nullptr));
    }
}

}  // namespace

RMatrix RMatrix::identity(const TruncatedRing& r, int n) {
    RMatrix m(r, n, n);
    for (int i = 0; i < n; ++i)
        m.at(i, i) = r.one();
    return m;
}

RMatrix RMatrix::from_columns(const TruncatedRing& r, int rows, const std::vector<RVector>& cols) {
    RMatrix m(r, rows, static_cast<int>(cols.size()));
    for (size_t j = 0; j < cols.size(); ++j) {
        if (static_cast<int>(cols[j].size()) != rows)
            throw DimensionMismatch("column length mismatch");
        for (int i = 0; i < rows; ++i)
            m.at(i, static_cast<int>(j)) = cols[j][i];
    }
    return m;
}

RMatrix RMatrix::operator+(const RMatrix& o) const {
    check_same_ring(*this, o);
    if (rows != o.rows || cols != o.cols)
        throw DimensionMismatch("matrix addition shape mismatch");
    RMatrix r(ring, rows, cols);
    for (size_t i = 0; i < a.size(); ++i)
        r.a[i] = ring.add(a[i], o.a[i]);
    return r;
}

RMatrix RMatrix::operator-(const RMatrix& o) const { return *this + o.negated(); }

RMatrix RMatrix::operator*(const RMatrix& o) const {
    check_same_ring(*this, o);
    if (cols != o.rows)
        throw DimensionMismatch("matrix product shape mismatch");
    RMatrix r(ring, rows, o.cols);
    for (int i = 0; i < rows; ++i)
        for (int k = 0; k < cols; ++k) {
            const RingElement& x = at(i, k);
            if (ring.is_zero(x))
                continue;
            for (int j = 0; j < o.cols; ++j)
                r.at(i, j) = ring.add(r.at(i, j), ring.mul(x, o.at(k, j)));
        }
    return r;
}

RMatrix RMatrix::scaled(const RingElement& c) const {
    RMatrix r(ring, rows, cols);
    for (size_t i = 0; i < a.size(); ++i)
        r.a[i] = ring.mul(c, a[i]);
    return r;
}

RMatrix RMatrix::negated() const {
    RMatrix r(ring, rows, cols);
    for (size_t i = 0; i < a.size(); ++i)
        r.a[i] = ring.neg(a[i]);
    return r;
}

bool RMatrix::operator==(const RMatrix& o) const {
    return ring == o.ring && rows == o.rows && cols == o.cols && a == o.a;
}

bool RMatrix::is_zero() const {
    for (const auto& x : a)
        if (!ring.is_zero(x))
            return false;
    return true;
}

RVector RMatrix::column(int j) const {
    RVector c(rows, ring.zero());
    for (int i = 0; i < rows; ++i)
        c[i] = at(i, j);
    return c;
}

RVector vec_zero(const TruncatedRing& r, int n) { return RVector(n, r.zero()); }

RVector vec_add(const TruncatedRing& r, const RVector& a, const RVector& b) {
    if (a.size() != b.size())
        throw DimensionMismatch("vector addition length mismatch");
    RVector c(a.size(), r.zero());
    for (size_t i = 0; i < a.size(); ++i)
        c[i] = r.add(a[i], b[i]);
    return c;
}

RVector vec_sub(const TruncatedRing& r, const RVector& a, const RVector& b) {
    return vec_add(r, a, vec_neg(r, b));
}

RVector vec_scale(const TruncatedRing& r, const RingElement& c, const RVector& a) {
    RVector x(a.size(), r.zero());
    for (size_t i = 0; i < a.size(); ++i)
        x[i] = r.mul(c, a[i]);
    return x;
}

RVector vec_neg(const TruncatedRing& r, const RVector& a) {
    RVector x(a.size(), r.zero());
    for (size_t i = 0; i < a.size(); ++i)
        x[i] = r.neg(a[i]);
    return x;
}

bool vec_is_zero(const TruncatedRing& r, const RVector& a) {
    for (const auto& x : a)
        if (!r.is_zero(x))
            return false;
    return true;
}

RVector apply(const RMatrix& m, const RVector& x) {
    if (static_cast<int>(x.size()) != m.cols)
        throw DimensionMismatch("matrix-vector shape mismatch");
    RVector y(m.rows, m.ring.zero());
    for (int j = 0; j < m.cols; ++j) {
        if (m.ring.is_zero(x[j]))
            continue;
        for (int i = 0; i < m.rows; ++i)
            y[i] = m.ring.add(y[i], m.ring.mul(m.at(i, j), x[j]));
    }
    return y;
}

std::optional<RVector> solve_linear(const RMatrix& A, const RVector& b) {
    if (static_cast<int>(b.size()) != A.rows)
        throw DimensionMismatch("right-hand side length mismatch");
    return dispatch(A.ring, [&](auto* tag) -> std::optional<RVector> {
        using Dom = std::remove_pointer_t<decltype(tag)>;
        return solve_impl<Dom>(A, b);
    });
}

std::vector<RVector> kernel_generators(const RMatrix& A) {
    return dispatch(A.ring, [&](auto* tag) -> std::vector<RVector> {
        using Dom = std::remove_pointer_t<decltype(tag)>;
        return kernel_impl<Dom>(A);
    });
}

std::vector<int> cokernel_invariants(const RMatrix& A) {
    return dispatch(A.ring, [&](auto* tag) -> std::vector<int> {
        using Dom = std::remove_pointer_t<decltype(tag)>;
        return coker_impl<Dom>(A);
    });
}

std::vector<int> homology_invariants(const RMatrix& d_in, const RMatrix& d_out) {
    check_same_ring(d_in, d_out);
    if (d_in.cols != d_out.rows)
        throw DimensionMismatch("differentials not composable");
    if (!(d_in * d_out).is_zero())
        throw PreconditionError("not a complex: d*d != 0");
    const TruncatedRing& R = d_in.ring;
    auto K = kernel_generators(d_in);
    if (K.empty())
        return {};
    RMatrix KM = RMatrix::from_columns(R, d_in.cols, K);
    std::vector<RVector> pres;
    for (int j = 0; j < d_out.cols; ++j) {
        auto x = solve_linear(KM, d_out.column(j));
        if (!x)
            throw Error("internal: boundary not in cycle span");
        pres.push_back(*x);
    }
    for (auto& s : kernel_generators(KM))
        pres.push_back(std::move(s));
    RMatrix P = RMatrix::from_columns(R, static_cast<int>(K.size()), pres);
    return cokernel_invariants(P);
}

bool is_invertible(const RMatrix& A) {
    if (A.rows != A.cols)
        return false;
    const Field& F = A.ring.residue_field();
    int n = A.rows;
    std::vector<std::vector<Scalar>> m(n, std::vector<Scalar>(n, F.zero()));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m[i][j] = A.ring.digit(A.at(i, j), 0);
    // Gaussian elimination over the residue field
    for (int k = 0; k < n; ++k) {
        int piv = -1;
        for (int i = k; i < n; ++i)
            if (!F.is_zero(m[i][k])) {
                piv = i;
                break;
            }
        if (piv < 0)
            return false;
        std::swap(m[piv], m[k]);
        Scalar inv = F.inv(m[k][k]);
        for (int i = k + 1; i < n; ++i) {
            if (F.is_zero(m[i][k]))
                continue;
            Scalar c = F.mul(m[i][k], inv);
            for (int j = k; j < n; ++j)
                m[i][j] = F.sub(m[i][j], F.mul(c, m[k][j]));
        }
    }
    return true;
}

RMatrix invert(const RMatrix& A) {
    if (A.rows != A.cols)
        throw NotAUnit("cannot invert a non-square matrix");
    const TruncatedRing& R = A.ring;
    int n = A.rows;
    RMatrix work = A;
    RMatrix inv = RMatrix::identity(R, n);
    for (int k = 0; k < n; ++k) {
        int piv = -1;
        for (int i = k; i < n; ++i)
            if (R.is_unit(work.at(i, k))) {
                piv = i;
                break;
            }
        if (piv < 0)
            throw NotAUnit("matrix is not invertible over the local ring");
        for (int j = 0; j < n; ++j) {
            std::swap(work.at(piv, j), work.at(k, j));
            std::swap(inv.at(piv, j), inv.at(k, j));
        }
        RingElement u = R.invert(work.at(k, k));
        for (int j = 0; j < n; ++j) {
            work.at(k, j) = R.mul(u, work.at(k, j));
            inv.at(k, j) = R.mul(u, inv.at(k, j));
        }
        for (int i = 0; i < n; ++i) {
            if (i == k || R.is_zero(work.at(i, k)))
                continue;
            RingElement c = work.at(i, k);
            for (int j = 0; j < n; ++j) {
                work.at(i, j) = R.sub(work.at(i, j), R.mul(c, work.at(k, j)));
                inv.at(i, j) = R.sub(inv.at(i, j), R.mul(c, inv.at(k, j)));
            }
        }
    }
    return inv;
}

}  // namespace dglift
