#include "diaglab/coefftable.hpp"

namespace diaglab {

namespace {

struct FastTerm {
    int e[4];
    u64 c; // coefficient mod p
    enum Kind { ADD, SUB, MUL } kind;
};

struct NumTerm {
    int e[4];
    u64 v;
};

struct Src {
    const u64* ptr;
    u64 c;
    int kind;
    int elast;
};

inline u64 addmod(u64 a, u64 b, u64 p) {
    u64 s = a + b;
    return s >= p ? s - p : s;
}

// Accumulate one row (innermost variable) given the valid source pointers.
inline void row_accumulate(u64* dst, int N, const std::vector<Src>& srcs, int maxe,
                           const NumTerm* rnum, u64 p) {
    int l = 0;
    for (; l < maxe && l <= N; l++) {
        u64 acc = (rnum && rnum->e[3] == l) ? rnum->v : 0;
        for (auto& s : srcs) {
            if (l < s.elast) continue;
            u64 v = s.ptr[l];
            if (s.kind == FastTerm::ADD) acc = addmod(acc, v, p);
            else if (s.kind == FastTerm::SUB) acc = addmod(acc, v ? p - v : 0, p);
            else acc = addmod(acc, (u64)((u128)s.c * v % p), p);
        }
        dst[l] = acc;
    }
    const size_t ns = srcs.size();
    if (rnum && rnum->e[3] >= maxe) {
        for (; l <= N; l++) {
            u64 acc = (rnum->e[3] == l) ? rnum->v : 0;
            for (auto& s : srcs) {
                u64 v = s.ptr[l];
                if (s.kind == FastTerm::ADD) acc = addmod(acc, v, p);
                else if (s.kind == FastTerm::SUB) acc = addmod(acc, v ? p - v : 0, p);
                else acc = addmod(acc, (u64)((u128)s.c * v % p), p);
            }
            dst[l] = acc;
        }
        return;
    }
    for (; l <= N; l++) {
        u64 acc = 0;
        size_t t = 0;
        while (t < ns) {
            u64 raw = acc;
            size_t stop = std::min(ns, t + 7); // 8 summands below p keep the raw sum < 2^64
            for (; t < stop; t++) {
                const Src& s = srcs[t];
                u64 v = s.ptr[l];
                if (s.kind == FastTerm::ADD) raw += v;
                else if (s.kind == FastTerm::SUB) raw += v ? p - v : 0;
                else raw += (u64)((u128)s.c * v % p);
            }
            raw -= (raw >= (p << 2)) ? (p << 2) : 0;
            raw -= (raw >= (p << 1)) ? (p << 1) : 0;
            raw -= (raw >= p) ? p : 0;
            acc = raw;
        }
        dst[l] = acc;
    }
}

} // namespace

Series<Fp> diagonal_series_fp(const Fp& K, const PolynomialSpec& spec, int N,
                              long long* ops_counter, long long ops_budget) {
    const int n = spec.nvars;
    if (spec.den_at_origin() == 0)
        throw std::domain_error("diagonal_series_fp: denominator vanishes at the origin");
    if (spec.den_at_origin() != 1 || n > 4 || n < 3) {
        auto t = expand_rational(K, spec, N);
        if (ops_counter) *ops_counter += (long long)t.a.size();
        return diagonal(K, t);
    }
    const u64 p = K.p;

    std::vector<FastTerm> terms;
    {
        std::vector<int> zero(n, 0);
        for (auto& [e, c] : spec.p) {
            if (e == zero) continue;
            FastTerm t{};
            for (int k = 0; k < n; k++) t.e[k + (4 - n)] = e[k]; // right-align
            t.c = K.from_mpz(c);
            t.kind = t.c == 1 ? FastTerm::ADD : (t.c == p - 1 ? FastTerm::SUB : FastTerm::MUL);
            terms.push_back(t);
        }
    }
    std::vector<NumTerm> nums;
    {
        MPoly numer = spec.numerator();
        for (auto& [e, c] : numer) {
            NumTerm t{};
            for (int k = 0; k < n; k++) t.e[k + (4 - n)] = e[k];
            t.v = K.from_mpz(c);
            nums.push_back(t);
        }
    }

    int E0 = 0; // exponent range of the slice variable (index 0 after alignment... index (4-n))
    for (auto& t : terms) E0 = std::max(E0, t.e[4 - n]);
    const int ring_n = E0 + 1;
    const size_t s_mid = n == 4 ? (size_t)(N + 1) * (N + 1) : (size_t)(N + 1);
    const size_t S = s_mid * (size_t)(N + 1);

    long long cost_per_slice = (long long)S * (long long)std::max<size_t>(terms.size(), 1);
    long long total_cost = cost_per_slice * (N + 1);
    if (ops_budget >= 0 && total_cost > ops_budget)
        throw resource_error("diagonal_series_fp: estimated " + std::to_string(total_cost) +
                             " coefficient ops exceed the budget");

    std::vector<std::vector<u64>> ring((size_t)ring_n);
    for (auto& v : ring) v.assign(S, 0);
    Series<Fp> out = series_zero(K, N);
    std::vector<Src> srcs;
    srcs.reserve(terms.size());

    if (n == 4) {
        const size_t s2 = (size_t)(N + 1);
        for (int i = 0; i <= N; i++) {
            std::vector<u64>& cur = ring[i % ring_n];
            std::fill(cur.begin(), cur.end(), 0);
            if (ops_counter) *ops_counter += cost_per_slice;
            for (int j = 0; j <= N; j++) {
                for (int k = 0; k <= N; k++) {
                    srcs.clear();
                    int maxe = 0;
                    for (auto& t : terms) {
                        if (i < t.e[0] || j < t.e[1] || k < t.e[2]) continue;
                        const std::vector<u64>& sl = ring[(i - t.e[0]) % ring_n];
                        srcs.push_back({sl.data() + (size_t)(j - t.e[1]) * s_mid +
                                            (size_t)(k - t.e[2]) * s2 - t.e[3],
                                        t.c, (int)t.kind, t.e[3]});
                        maxe = std::max(maxe, t.e[3]);
                    }
                    const NumTerm* rnum = nullptr;
                    for (auto& sn : nums)
                        if (sn.e[0] == i && sn.e[1] == j && sn.e[2] == k) { rnum = &sn; break; }
                    row_accumulate(cur.data() + (size_t)j * s_mid + (size_t)k * s2, N, srcs,
                                   maxe, rnum, p);
                }
            }
            out.a[i] = cur[(size_t)i * s_mid + (size_t)i * s2 + i];
        }
    } else { // n == 3
        for (int i = 0; i <= N; i++) {
            std::vector<u64>& cur = ring[i % ring_n];
            std::fill(cur.begin(), cur.end(), 0);
            if (ops_counter) *ops_counter += cost_per_slice;
            for (int j = 0; j <= N; j++) {
                srcs.clear();
                int maxe = 0;
                for (auto& t : terms) {
                    if (i < t.e[1] || j < t.e[2]) continue;
                    const std::vector<u64>& sl = ring[(i - t.e[1]) % ring_n];
                    srcs.push_back({sl.data() + (size_t)(j - t.e[2]) * s_mid - t.e[3],
                                    t.c, (int)t.kind, t.e[3]});
                    maxe = std::max(maxe, t.e[3]);
                }
                const NumTerm* rnum = nullptr;
                for (auto& sn : nums)
                    if (sn.e[1] == i && sn.e[2] == j) { rnum = &sn; break; }
                row_accumulate(cur.data() + (size_t)j * s_mid, N, srcs, maxe, rnum, p);
            }
            out.a[i] = cur[(size_t)i * s_mid + i];
        }
    }
    return out;
}

} // namespace diaglab
