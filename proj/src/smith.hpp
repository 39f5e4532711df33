// Smith-style diagonalization over a Euclidean domain, with the unimodular
// transforms kept so systems can be solved and kernels read off.  Pivot
// choice (minimal norm, then lowest position) is deterministic.
#pragma once

#include <utility>
#include <vector>

namespace dglift::smith {

template <class Dom>
struct Diagonalization {
    using V = typename Dom::V;
    std::vector<std::vector<V>> U;  // rows x rows
    std::vector<std::vector<V>> W;  // cols x cols,  U * A * W = D
    std::vector<V> diag;            // min(rows, cols) entries, zeros at the end
    int rank = 0;
};

template <class Dom>
Diagonalization<Dom> diagonalize(const Dom& dom, std::vector<std::vector<typename Dom::V>> A) {
    using V = typename Dom::V;
    const int rows = static_cast<int>(A.size());
    const int cols = rows ? static_cast<int>(A[0].size()) : 0;
    Diagonalization<Dom> res;
    auto ident = [&](int n) {
        std::vector<std::vector<V>> m(n, std::vector<V>(n, dom.zero()));
        for (int i = 0; i < n; ++i)
            m[i][i] = dom.one();
        return m;
    };
    res.U = ident(rows);
    res.W = ident(cols);
    const int K = rows < cols ? rows : cols;

    auto row_sub = [&](int i, int k, const V& q) {  // row_i -= q * row_k
        for (int j = 0; j < cols; ++j)
            A[i][j] = dom.sub(A[i][j], dom.mul(q, A[k][j]));
        for (int j = 0; j < rows; ++j)
            res.U[i][j] = dom.sub(res.U[i][j], dom.mul(q, res.U[k][j]));
    };
    auto col_sub = [&](int j, int k, const V& q) {  // col_j -= q * col_k
        for (int i = 0; i < rows; ++i)
            A[i][j] = dom.sub(A[i][j], dom.mul(q, A[i][k]));
        for (int i = 0; i < cols; ++i)
            res.W[i][j] = dom.sub(res.W[i][j], dom.mul(q, res.W[i][k]));
    };

    for (int k = 0; k < K; ++k) {
        // pivot: minimal norm among nonzero entries of the trailing block
        int pi = -1, pj = -1;
        for (int i = k; i < rows; ++i)
            for (int j = k; j < cols; ++j)
                if (!dom.is_zero(A[i][j]) && (pi < 0 || dom.norm_less(A[i][j], A[pi][pj]))) {
                    pi = i;
                    pj = j;
                }
        if (pi < 0)
            break;
        if (pi != k) {
            std::swap(A[pi], A[k]);
            std::swap(res.U[pi], res.U[k]);
        }
        if (pj != k) {
            for (int i = 0; i < rows; ++i)
                std::swap(A[i][pj], A[i][k]);
            for (int i = 0; i < cols; ++i)
                std::swap(res.W[i][pj], res.W[i][k]);
        }
        for (;;) {
            for (int i = 0; i < rows; ++i) {
                if (i == k)
                    continue;
                while (!dom.is_zero(A[i][k])) {
                    V q, r;
                    dom.divmod(A[i][k], A[k][k], q, r);
                    row_sub(i, k, q);
                    if (!dom.is_zero(A[i][k])) {  // remainder became the smaller pivot
                        std::swap(A[i], A[k]);
                        std::swap(res.U[i], res.U[k]);
                    }
                }
            }
            for (int j = 0; j < cols; ++j) {
                if (j == k)
                    continue;
                while (!dom.is_zero(A[k][j])) {
                    V q, r;
                    dom.divmod(A[k][j], A[k][k], q, r);
                    col_sub(j, k, q);
                    if (!dom.is_zero(A[k][j])) {
                        for (int i = 0; i < rows; ++i)
                            std::swap(A[i][j], A[i][k]);
                        for (int i = 0; i < cols; ++i)
                            std::swap(res.W[i][j], res.W[i][k]);
                    }
                }
            }
            bool clean = true;
            for (int i = 0; i < rows && clean; ++i)
                if (i != k && !dom.is_zero(A[i][k]))
                    clean = false;
            if (clean)
                break;
        }
        V u = dom.canonical_unit(A[k][k]);  // multiply row by u to normalize pivot
        if (!dom.is_one(u)) {
            for (int j = 0; j < cols; ++j)
                A[k][j] = dom.mul(u, A[k][j]);
            for (int j = 0; j < rows; ++j)
                res.U[k][j] = dom.mul(u, res.U[k][j]);
        }
    }
    res.diag.assign(K, dom.zero());
    for (int k = 0; k < K; ++k) {
        res.diag[k] = A[k][k];
        if (!dom.is_zero(A[k][k]))
            ++res.rank;
    }
    return res;
}

}  // namespace dglift::smith
