#ifndef DIAGLAB_SERIES_BUILD_HPP
#define DIAGLAB_SERIES_BUILD_HPP

#include "diaglab/coefftable.hpp"
#include "diaglab/ore.hpp"

namespace diaglab {

// q(x)^e with q(0) = 1 and rational exponent e.
struct AlgebraicFactor {
    Poly<QQ> q;
    mpq_class e;
};

// Product of q_i^{e_i}, expanded through the first-order equation
// q y' = e q' y each factor satisfies (seed 1, q(0) = 1 required).
Series<QQ> algebraic_series(const std::vector<AlgebraicFactor>& factors, int n);

// Generalized hypergeometric series sum (prod (u)_m / prod (l)_m) scale^m x^m / m!.
Series<QQ> pFq_series(const std::vector<mpq_class>& upper, const std::vector<mpq_class>& lower,
                      const mpq_class& scale, int n);

// The annihilator theta prod(theta + l - 1) - scale x prod(theta + u) of the
// same series, theta = xD, primitive-normalized.
OreOp<QQ> hypergeometric_operator(const std::vector<mpq_class>& upper,
                                  const std::vector<mpq_class>& lower, const mpq_class& scale);

// f(p(x)) for a pullback p with p(0) = 0.
Series<QQ> compose_pullback(const Series<QQ>& f, const RatFunc<QQ>& p, int n);

// Diagonal of simplex * factor2 where simplex = 1/(1 - sum of all variables)
// and factor2 involves at most 3 of the same variables. Throws
// std::invalid_argument ("fall back to full expansion") on unsupported shapes.
template <class F>
Series<F> product_diagonal(const F& K, const PolynomialSpec& simplex,
                           const PolynomialSpec& factor2, int n);

struct IntegralityReport {
    bool integral = false;
    mpz_class rescale = 1;   // smallest c with a_m c^m integral, when integral
    long failure_index = -1; // first obstruction otherwise
};

// Globally-bounded probe: smallest integer c <= bound with a_m c^m integral.
IntegralityReport integrality_scan(const Series<QQ>& s, const mpz_class& bound = mpz_class(1) << 64,
                                   long factor_limit = 1000000);

// --- implementation of the templated product diagonal ---

namespace detail {
template <class F>
struct Factorials {
    std::vector<typename F::Elt> fact, inv_fact;
    Factorials(const F& K, long n) {
        fact.resize(n + 1);
        inv_fact.resize(n + 1);
        fact[0] = K.one();
        for (long i = 1; i <= n; i++) fact[i] = K.mul(fact[i - 1], K.from_int(i));
        inv_fact[n] = K.inv(fact[n]);
        for (long i = n; i > 0; i--) inv_fact[i - 1] = K.mul(inv_fact[i], K.from_int(i));
    }
};
} // namespace detail

template <class F>
Series<F> product_diagonal(const F& K, const PolynomialSpec& simplex,
                           const PolynomialSpec& factor2, int n) {
    const int nv = simplex.nvars;
    if (factor2.nvars != nv)
        throw std::invalid_argument("product_diagonal: factors must share a variable space");
    // simplex shape check: P = sum of all variables, numerator 1
    {
        if (!simplex.num_is_one())
            throw std::invalid_argument("product_diagonal: fall back to full expansion "
                                        "(simplex factor has a numerator)");
        MPoly expect;
        for (int i = 0; i < nv; i++) {
            std::vector<int> e(nv, 0);
            e[i] = 1;
            expect[e] = 1;
        }
        if (simplex.p != expect)
            throw std::invalid_argument("product_diagonal: fall back to full expansion "
                                        "(first factor is not 1/(1 - sum of variables))");
    }
    // variables used by factor2
    std::vector<int> used;
    for (int v = 0; v < nv; v++) {
        bool u = false;
        for (auto& [e, c] : factor2.p)
            if (e[v]) u = true;
        for (auto& [e, c] : factor2.num)
            if (e[v]) u = true;
        if (u) used.push_back(v);
    }
    if ((int)used.size() > 3)
        throw std::invalid_argument("product_diagonal: fall back to full expansion "
                                    "(second factor involves more than 3 variables)");
    // compact factor2 to its own small variable space and expand
    PolynomialSpec compact;
    compact.nvars = std::max<int>(1, (int)used.size());
    auto compact_poly = [&](const MPoly& m) {
        MPoly out;
        for (auto& [e, c] : m) {
            std::vector<int> e2(compact.nvars, 0);
            for (size_t k = 0; k < used.size(); k++) e2[k] = e[used[k]];
            out[e2] += c;
        }
        return out;
    };
    compact.p = compact_poly(factor2.p);
    compact.num = compact_poly(factor2.num);
    CoeffTable<F> t2 = expand_rational(K, compact, n);

    detail::Factorials<F> f(K, (long)nv * n + 1);
    Series<F> out = series_zero(K, n);
    const int k2 = compact.nvars;
    std::vector<int> idx(k2, 0);
    for (int m = 0; m <= n; m++) {
        typename F::Elt acc = K.zero();
        // iterate factor2's box [0..m]^k2
        std::fill(idx.begin(), idx.end(), 0);
        while (true) {
            // simplex coefficient at (m,...,m) - embedded idx
            long tot = (long)nv * m;
            typename F::Elt mult = K.one();
            bool used_vars_ok = true;
            long sub = 0;
            for (int k = 0; k < (int)used.size(); k++) sub += idx[k];
            tot -= sub;
            mult = f.fact[tot];
            for (int v = 0; v < nv; v++) {
                bool in_used = false;
                int e = 0;
                for (size_t k = 0; k < used.size(); k++)
                    if (used[k] == v) { in_used = true; e = idx[k]; }
                int rem = m - (in_used ? e : 0);
                if (rem < 0) { used_vars_ok = false; break; }
                mult = K.mul(mult, f.inv_fact[rem]);
            }
            if (used_vars_ok) {
                const auto& c2 = ((int)used.size() == 0) ? t2.a[0] : t2.at(idx);
                if (!K.is_zero(c2)) acc = K.add(acc, K.mul(c2, mult));
            }
            int k = k2 - 1;
            while (k >= 0 && idx[k] == m) { idx[k] = 0; k--; }
            if (k < 0 || (int)used.size() == 0) break;
            idx[k]++;
        }
        out.a[m] = acc;
    }
    return out;
}

} // namespace diaglab

#endif
