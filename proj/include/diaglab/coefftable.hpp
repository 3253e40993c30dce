#ifndef DIAGLAB_COEFFTABLE_HPP
#define DIAGLAB_COEFFTABLE_HPP

#include <cstring>

#include "diaglab/errors.hpp"
#include "diaglab/polyspec.hpp"
#include "diaglab/series.hpp"

namespace diaglab {

// Dense multi-Taylor coefficient lattice of num/(1-P): entry at multi-index
// (m_1,...,m_n), each m_i <= N, row-major with the first variable slowest.
template <class F>
struct CoeffTable {
    int nvars = 0;
    int N = 0;
    std::vector<typename F::Elt> a;

    size_t stride(int var) const {
        size_t s = 1;
        for (int k = nvars - 1; k > var; k--) s *= (size_t)(N + 1);
        return s;
    }
    const typename F::Elt& at(const std::vector<int>& idx) const {
        size_t off = 0;
        for (int k = 0; k < nvars; k++) off = off * (N + 1) + idx[k];
        return a[off];
    }
};

inline constexpr size_t kDefaultTableMemCap = (size_t)8 << 30; // 8 GiB

// Multi-Taylor expansion by the linear recurrence den * R = num evaluated in
// graded (row-major) order; each entry costs O(#monomials).
template <class F>
CoeffTable<F> expand_rational(const F& K, const PolynomialSpec& spec, int N,
                              size_t mem_cap_bytes = kDefaultTableMemCap) {
    if (spec.den_at_origin() == 0)
        throw std::domain_error("expand_rational: denominator vanishes at the origin");
    int n = spec.nvars;
    size_t total = 1;
    for (int k = 0; k < n; k++) {
        total *= (size_t)(N + 1);
        if (total > mem_cap_bytes / sizeof(typename F::Elt))
            throw resource_error("expand_rational: table of " + std::to_string(n) +
                                 " variables at N=" + std::to_string(N) +
                                 " exceeds the memory cap");
    }

    CoeffTable<F> t;
    t.nvars = n;
    t.N = N;
    t.a.assign(total, K.zero());

    // den = den0 - (nonconstant terms); R[v] = (num[v] + sum c_e R[v-e]) / den0
    // where c_e are the P-coefficients adjusted for a possible constant in P.
    typename F::Elt den0 = K.from_mpz(spec.den_at_origin());
    auto den0_inv = K.inv(den0);
    bool den0_is_one = K.eq(den0, K.one());

    struct Term {
        std::vector<int> e;
        size_t off;
        typename F::Elt c;
    };
    std::vector<Term> terms;
    std::vector<int> zero(n, 0);
    for (auto& [e, c] : spec.p) {
        if (e == zero) continue; // folded into den0
        Term tm;
        tm.e = e;
        tm.off = 0;
        for (int k = 0; k < n; k++) tm.off = tm.off * (N + 1) + e[k];
        tm.c = K.from_mpz(c);
        terms.push_back(std::move(tm));
    }
    MPoly numer = spec.numerator();

    std::vector<int> idx(n, 0);
    size_t lin = 0;
    while (true) {
        typename F::Elt acc = K.zero();
        auto nit = numer.find(idx);
        if (nit != numer.end()) acc = K.from_mpz(nit->second);
        for (auto& tm : terms) {
            bool ok = true;
            for (int k = 0; k < n; k++)
                if (idx[k] < tm.e[k]) { ok = false; break; }
            if (!ok) continue;
            acc = K.add(acc, K.mul(tm.c, t.a[lin - tm.off]));
        }
        t.a[lin] = den0_is_one ? acc : K.mul(acc, den0_inv);

        // odometer
        int k = n - 1;
        while (k >= 0 && idx[k] == N) { idx[k] = 0; k--; }
        if (k < 0) break;
        idx[k]++;
        lin++;
        // recompute lin when odometer wrapped (row-major order is contiguous,
        // so lin just increments; wraps are consistent with that)
    }
    return t;
}

// Diagonal extraction: a_m = R_{m,...,m}.
template <class F>
Series<F> diagonal(const F& K, const CoeffTable<F>& t) {
    Series<F> s = series_zero(K, t.N);
    size_t step = 0;
    for (int k = 0; k < t.nvars; k++) step = step * (t.N + 1) + 1;
    for (int m = 0; m <= t.N; m++) s.a[m] = t.a[(size_t)m * step];
    return s;
}

// Memory-lean diagonal: same recurrence but keeping only the slices of the
// first variable that remain reachable. This is the path the survey uses for
// long mod-p series; ops_counter (if given) accumulates coefficient ops.
Series<Fp> diagonal_series_fp(const Fp& K, const PolynomialSpec& spec, int N,
                              long long* ops_counter = nullptr,
                              long long ops_budget = -1);

// Convenience: diagonal of the full table (exact fields).
template <class F>
Series<F> diagonal_of(const F& K, const PolynomialSpec& spec, int N,
                      size_t mem_cap_bytes = kDefaultTableMemCap) {
    return diagonal(K, expand_rational(K, spec, N, mem_cap_bytes));
}

} // namespace diaglab

#endif
