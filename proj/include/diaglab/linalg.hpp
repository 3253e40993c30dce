#ifndef DIAGLAB_LINALG_HPP
#define DIAGLAB_LINALG_HPP

#include <optional>
#include <vector>

#include "diaglab/field.hpp"

namespace diaglab {

// Dense row-major matrix over a field.
template <class F>
struct Matrix {
    int rows = 0, cols = 0;
    std::vector<typename F::Elt> a;

    Matrix() = default;
    Matrix(const F& K, int r, int c) : rows(r), cols(c), a((size_t)r * c, K.zero()) {}
    typename F::Elt& at(int r, int c) { return a[(size_t)r * cols + c]; }
    const typename F::Elt& at(int r, int c) const { return a[(size_t)r * cols + c]; }
};

// Row echelon elimination in place. Returns pivot column per pivot row.
// Elimination over Q uses plain field ops; small systems only (the rational
// path for larger ones goes through primes + CRT, see reconstruct.hpp).
template <class F>
std::vector<int> row_echelon(const F& K, Matrix<F>& m) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; c++) {
        int sel = -1;
        for (int i = r; i < m.rows; i++)
            if (!K.is_zero(m.at(i, c))) { sel = i; break; }
        if (sel < 0) continue;
        if (sel != r)
            for (int j = c; j < m.cols; j++) std::swap(m.at(sel, j), m.at(r, j));
        auto piv_inv = K.inv(m.at(r, c));
        for (int j = c; j < m.cols; j++) m.at(r, j) = K.mul(m.at(r, j), piv_inv);
        for (int i = 0; i < m.rows; i++) {
            if (i == r || K.is_zero(m.at(i, c))) continue;
            auto f = m.at(i, c);
            for (int j = c; j < m.cols; j++)
                m.at(i, j) = K.sub(m.at(i, j), K.mul(f, m.at(r, j)));
        }
        pivots.push_back(c);
        r++;
    }
    return pivots;
}

template <class F>
int matrix_rank(const F& K, Matrix<F> m) {
    return (int)row_echelon(K, m).size();
}

// Basis of the right kernel {v : M v = 0}. Vectors are independent; their
// count is cols - rank. Free variables are set to 1 one at a time.
template <class F>
std::vector<std::vector<typename F::Elt>> nullspace(const F& K, Matrix<F> m) {
    std::vector<int> pivots = row_echelon(K, m);
    std::vector<bool> is_pivot(m.cols, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<std::vector<typename F::Elt>> basis;
    for (int fc = 0; fc < m.cols; fc++) {
        if (is_pivot[fc]) continue;
        std::vector<typename F::Elt> v(m.cols, K.zero());
        v[fc] = K.one();
        for (size_t pr = 0; pr < pivots.size(); pr++)
            v[pivots[pr]] = K.neg(m.at((int)pr, fc));
        basis.push_back(std::move(v));
    }
    return basis;
}

// Solve M x = b; returns one solution (free vars = 0) or nullopt.
template <class F>
std::optional<std::vector<typename F::Elt>> solve(const F& K, Matrix<F> m,
                                                  const std::vector<typename F::Elt>& b) {
    Matrix<F> aug(K, m.rows, m.cols + 1);
    for (int i = 0; i < m.rows; i++) {
        for (int j = 0; j < m.cols; j++) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols) = b[i];
    }
    std::vector<int> pivots = row_echelon(K, aug);
    for (int c : pivots)
        if (c == m.cols) return std::nullopt; // inconsistent
    std::vector<typename F::Elt> x(m.cols, K.zero());
    for (size_t pr = 0; pr < pivots.size(); pr++) x[pivots[pr]] = aug.at((int)pr, m.cols);
    return x;
}

// Fast in-place kernel computation over Fp on a raw row-major array,
// tuned for the Hermite-Pade systems (rows >= cols). Returns kernel basis.
std::vector<std::vector<u64>> nullspace_fp(const Fp& K, std::vector<u64>& mat, int rows, int cols);

} // namespace diaglab

#endif
