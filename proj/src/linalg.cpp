#include "diaglab/linalg.hpp"

namespace diaglab {

namespace {

// Montgomery arithmetic mod p (odd, < 2^63). Used only inside the dense
// elimination kernel; entries are converted on the way in and out.
struct Mont {
    u64 p;
    u64 pinv; // -p^{-1} mod 2^64
    u64 r2;   // 2^128 mod p

    explicit Mont(u64 prime) : p(prime) {
        u64 x = prime;
        for (int i = 0; i < 6; i++) x *= 2 - prime * x; // p^{-1} mod 2^64
        pinv = ~x + 1;
        u128 r = (u128(1) << 64) % prime;
        r2 = (u64)((u128)r * r % prime);
    }
    u64 reduce(u128 t) const {
        u64 m = (u64)t * pinv;
        u128 s = t + (u128)m * p;
        u64 r = (u64)(s >> 64);
        return r >= p ? r - p : r;
    }
    u64 mul(u64 a, u64 b) const { return reduce((u128)a * b); }
    u64 to(u64 a) const { return mul(a, r2); }
    u64 from(u64 a) const { return reduce((u128)a); }
};

} // namespace

std::vector<std::vector<u64>> nullspace_fp(const Fp& K, std::vector<u64>& mat, int rows, int cols) {
    Mont M(K.p);
    const u64 p = K.p;
    for (auto& v : mat) v = M.to(v);
    auto row = [&](int i) { return mat.data() + (size_t)i * cols; };

    std::vector<int> pivots;
    pivots.reserve(cols);
    int r = 0;
    for (int c = 0; c < cols && r < rows; c++) {
        int sel = -1;
        for (int i = r; i < rows; i++)
            if (row(i)[c] != 0) { sel = i; break; }
        if (sel < 0) continue;
        if (sel != r) {
            u64* a = row(sel);
            u64* b = row(r);
            for (int j = c; j < cols; j++) std::swap(a[j], b[j]);
        }
        // normalize the pivot row
        u64 piv = M.from(row(r)[c]);
        u64 inv = M.to(K.inv(piv));
        u64* pr = row(r);
        for (int j = c; j < cols; j++) pr[j] = M.mul(pr[j], inv);
        for (int i = r + 1; i < rows; i++) {
            u64* ri = row(i);
            u64 f = ri[c];
            if (f == 0) continue;
            ri[c] = 0;
            for (int j = c + 1; j < cols; j++) {
                u64 t = M.mul(f, pr[j]);
                u64 v = ri[j];
                v = v >= t ? v - t : v + p - t;
                ri[j] = v;
            }
        }
        pivots.push_back(c);
        r++;
    }
    // back-substitution to reduced echelon over the pivot rows
    for (int pr_i = (int)pivots.size() - 1; pr_i >= 0; pr_i--) {
        int c = pivots[pr_i];
        u64* prow = row(pr_i);
        for (int i = 0; i < pr_i; i++) {
            u64* ri = row(i);
            u64 f = ri[c];
            if (f == 0) continue;
            ri[c] = 0;
            for (int j = c + 1; j < cols; j++) {
                u64 t = M.mul(f, prow[j]);
                u64 v = ri[j];
                v = v >= t ? v - t : v + p - t;
                ri[j] = v;
            }
        }
    }

    std::vector<bool> is_pivot(cols, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<std::vector<u64>> basis;
    for (int fc = 0; fc < cols; fc++) {
        if (is_pivot[fc]) continue;
        std::vector<u64> v(cols, 0);
        v[fc] = 1;
        for (size_t i = 0; i < pivots.size(); i++) {
            u64 e = M.from(row((int)i)[fc]);
            v[pivots[i]] = e == 0 ? 0 : p - e;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace diaglab
