#ifndef DIAGLAB_ORE_HPP
#define DIAGLAB_ORE_HPP

#include <climits>
#include <optional>
#include <string>

#include "diaglab/ratfunc.hpp"
#include "diaglab/series.hpp"

namespace diaglab {

// Linear differential operator sum c[i] * D^i with rational-function
// coefficients over F(x); D*a = a*D + a'. The zero operator has empty c.
// Operators coming out of guessing / normalization have polynomial
// coefficients (den == 1 throughout); the algebra below is field-level.
template <class F>
struct OreOp {
    std::vector<RatFunc<F>> c;

    int order() const { return (int)c.size() - 1; }
    bool is_zero() const { return c.empty(); }
};

template <class F>
void ore_trim(const F& K, OreOp<F>& L) {
    while (!L.c.empty() && L.c.back().is_zero()) L.c.pop_back();
    (void)K;
}

template <class F>
OreOp<F> ore_zero(const F&) { return OreOp<F>{}; }

// multiplication operator by a rational function
template <class F>
OreOp<F> ore_mult(const F& K, const RatFunc<F>& f) {
    if (f.is_zero()) return OreOp<F>{};
    (void)K;
    return OreOp<F>{{f}};
}

template <class F>
OreOp<F> ore_one(const F& K) { return ore_mult(K, rf_one(K)); }

// the derivation D
template <class F>
OreOp<F> ore_D(const F& K) { return OreOp<F>{{rf_zero(K), rf_one(K)}}; }

template <class F>
OreOp<F> ore_from_polys(const F& K, const std::vector<Poly<F>>& coeffs) {
    OreOp<F> L;
    for (auto& p : coeffs) L.c.push_back(rf_from_poly(K, p));
    ore_trim(K, L);
    return L;
}

template <class F>
bool ore_eq(const F& K, const OreOp<F>& a, const OreOp<F>& b) {
    if (a.c.size() != b.c.size()) return false;
    for (size_t i = 0; i < a.c.size(); i++)
        if (!rf_eq(K, a.c[i], b.c[i])) return false;
    return true;
}

template <class F>
OreOp<F> ore_add(const F& K, const OreOp<F>& a, const OreOp<F>& b) {
    OreOp<F> r;
    r.c.resize(std::max(a.c.size(), b.c.size()), rf_zero(K));
    for (size_t i = 0; i < a.c.size(); i++) r.c[i] = a.c[i];
    for (size_t i = 0; i < b.c.size(); i++) r.c[i] = rf_add(K, r.c[i], b.c[i]);
    ore_trim(K, r);
    return r;
}

template <class F>
OreOp<F> ore_sub(const F& K, const OreOp<F>& a, const OreOp<F>& b) {
    OreOp<F> r;
    r.c.resize(std::max(a.c.size(), b.c.size()), rf_zero(K));
    for (size_t i = 0; i < a.c.size(); i++) r.c[i] = a.c[i];
    for (size_t i = 0; i < b.c.size(); i++) r.c[i] = rf_sub(K, r.c[i], b.c[i]);
    ore_trim(K, r);
    return r;
}

template <class F>
OreOp<F> ore_scale(const F& K, const OreOp<F>& a, const RatFunc<F>& f) {
    OreOp<F> r = a;
    for (auto& v : r.c) v = rf_mul(K, v, f);
    ore_trim(K, r);
    return r;
}

template <class F>
OreOp<F> ore_neg(const F& K, const OreOp<F>& a) {
    OreOp<F> r = a;
    for (auto& v : r.c) v = rf_neg(K, v);
    return r;
}

// D composed with M: coefficients b_j D^{j+1} + b_j' D^j.
template <class F>
OreOp<F> ore_D_compose(const F& K, const OreOp<F>& m) {
    OreOp<F> r;
    r.c.resize(m.c.size() + 1, rf_zero(K));
    for (size_t j = 0; j < m.c.size(); j++) {
        r.c[j + 1] = rf_add(K, r.c[j + 1], m.c[j]);
        r.c[j] = rf_add(K, r.c[j], rf_derivative(K, m.c[j]));
    }
    ore_trim(K, r);
    return r;
}

// Operator product: (L*M)(y) = L(M(y)); ord = ord L + ord M.
template <class F>
OreOp<F> op_mul(const F& K, const OreOp<F>& l, const OreOp<F>& m) {
    if (l.is_zero() || m.is_zero()) return ore_zero(K);
    OreOp<F> r;
    OreOp<F> dim = m; // D^i compose M
    for (size_t i = 0; i < l.c.size(); i++) {
        if (!l.c[i].is_zero()) r = ore_add(K, r, ore_scale(K, dim, l.c[i]));
        if (i + 1 < l.c.size()) dim = ore_D_compose(K, dim);
    }
    return r;
}

// Formal adjoint: sum a_i D^i -> sum (-1)^i D^i a_i.
template <class F>
OreOp<F> adjoint(const F& K, const OreOp<F>& l) {
    OreOp<F> r;
    for (size_t i = 0; i < l.c.size(); i++) {
        OreOp<F> t = ore_mult(K, l.c[i]);
        for (size_t k = 0; k < i; k++) t = ore_D_compose(K, t);
        if (i & 1) t = ore_neg(K, t);
        r = ore_add(K, r, t);
    }
    return r;
}

// Right division: L = Q*M + R with ord R < ord M. Exact over F(x).
template <class F>
std::pair<OreOp<F>, OreOp<F>> right_divide(const F& K, OreOp<F> l, const OreOp<F>& m) {
    if (m.is_zero()) throw std::domain_error("right_divide: zero divisor");
    OreOp<F> q;
    q.c.resize(l.order() >= m.order() ? l.order() - m.order() + 1 : 0, rf_zero(K));
    while (!l.is_zero() && l.order() >= m.order()) {
        int k = l.order() - m.order();
        RatFunc<F> f = rf_div(K, l.c.back(), m.c.back());
        // l -= (f D^k) * m
        OreOp<F> fk;
        fk.c.assign(k + 1, rf_zero(K));
        fk.c[k] = f;
        q.c[k] = rf_add(K, q.c[k], f);
        l = ore_sub(K, l, op_mul(K, fk, m));
        if (l.order() == k + m.order()) {
            // leading term must cancel; numeric fields guarantee it
            throw std::logic_error("right_divide: leading term failed to cancel");
        }
    }
    ore_trim(K, q);
    return {q, l};
}

// Greatest common right divisor (monic-normalized leading coefficient 1).
template <class F>
OreOp<F> gcrd(const F& K, OreOp<F> a, OreOp<F> b) {
    if (a.is_zero()) return b;
    while (!b.is_zero()) {
        OreOp<F> r = right_divide(K, a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.is_zero()) a = ore_scale(K, a, rf_inv(K, a.c.back()));
    return a;
}

// Least common left multiple via the extended Euclidean remainder chain:
// each remainder is a left combination of a and b; the first zero remainder
// gives u*a = -v*b = lclm.
template <class F>
OreOp<F> lclm(const F& K, const OreOp<F>& a, const OreOp<F>& b) {
    if (a.is_zero() || b.is_zero()) return ore_zero(K);
    OreOp<F> r0 = a, r1 = b;
    OreOp<F> u0 = ore_one(K), u1 = ore_zero(K); // coefficients of a
    while (true) {
        auto [q, r2] = right_divide(K, r0, r1);
        OreOp<F> u2 = ore_sub(K, u0, op_mul(K, q, u1));
        if (r2.is_zero()) {
            OreOp<F> l = op_mul(K, u2, a);
            if (!l.is_zero()) l = ore_scale(K, l, rf_inv(K, l.c.back()));
            return l;
        }
        r0 = std::move(r1); r1 = std::move(r2);
        u0 = std::move(u1); u1 = std::move(u2);
    }
}

// --- normalization ---

template <class F>
bool ore_is_poly(const OreOp<F>& l) {
    for (auto& v : l.c)
        if (!v.is_poly()) return false;
    return true;
}

template <class F>
std::vector<Poly<F>> ore_poly_coeffs(const F& K, const OreOp<F>& l) {
    std::vector<Poly<F>> out;
    for (auto& v : l.c) {
        if (!v.is_poly()) throw std::domain_error("operator has non-polynomial coefficients");
        out.push_back(poly_scale(K, v.num, K.inv(poly_lc(K, v.den))));
    }
    return out;
}

// Left-multiply by the lcm of coefficient denominators: polynomial
// coefficients, same solution space.
template <class F>
OreOp<F> ore_clear_denominators(const F& K, const OreOp<F>& l) {
    Poly<F> lcm = poly_one(K);
    for (auto& v : l.c) {
        Poly<F> g = poly_gcd(K, lcm, v.den);
        lcm = poly_mul(K, lcm, poly_divmod(K, v.den, g).first);
    }
    OreOp<F> r = l;
    for (auto& v : r.c) {
        Poly<F> extra = poly_divmod(K, lcm, v.den).first;
        v = rf_from_poly(K, poly_mul(K, v.num, extra));
    }
    return r;
}

// Rational case: polynomial coefficients, integer entries, overall content 1,
// leading coefficient of the leading polynomial positive.
OreOp<QQ> ore_normalize_primitive(const QQ& K, const OreOp<QQ>& l);

OreOp<Fp> ore_reduce(const Fp& K, const OreOp<QQ>& l);

// --- action on series ---

// Apply an operator with polynomial coefficients to a truncated series;
// the truncation shrinks by ord L.
template <class F>
Series<F> apply(const F& K, const OreOp<F>& l, const Series<F>& s) {
    if (l.is_zero()) return series_zero(K, s.trunc());
    if ((int)s.a.size() < (int)l.c.size())
        throw std::domain_error("apply: series shorter than operator order");
    auto polys = ore_poly_coeffs(K, l);
    int n_out = s.trunc() - l.order();
    Series<F> r = series_zero(K, n_out);
    Series<F> der = s;
    for (size_t i = 0; i < polys.size(); i++) {
        if (!polys[i].is_zero()) {
            Series<F> t = series_mul_poly(K, der, polys[i]);
            for (int m = 0; m <= n_out; m++) r.a[m] = K.add(r.a[m], t.a[m]);
        }
        if (i + 1 < polys.size()) der = series_derivative(K, der);
    }
    return r;
}

// Apply to a rational function (exact).
template <class F>
RatFunc<F> apply_rf(const F& K, const OreOp<F>& l, const RatFunc<F>& f) {
    RatFunc<F> r = rf_zero(K);
    RatFunc<F> der = f;
    for (size_t i = 0; i < l.c.size(); i++) {
        if (!l.c[i].is_zero()) r = rf_add(K, r, rf_mul(K, l.c[i], der));
        if (i + 1 < l.c.size()) der = rf_derivative(K, der);
    }
    return r;
}

// --- coefficient recurrence / series extension ---

// L(y) = 0 reads sum a_{ij} ff(m+i-j, i) y_{m+i-j} = 0 at each x^m.
// extend_by_operator continues a seed under that recurrence up to index n.
struct SingularIndex {
    long index;
};

template <class F>
struct ExtendResult {
    Series<F> s;
    std::optional<long> singular_index; // set when extension stopped early
};

template <class F>
ExtendResult<F> extend_by_operator_checked(const F& K, const OreOp<F>& l,
                                           const Series<F>& seed, int n) {
    auto polys = ore_poly_coeffs(K, l);
    int r = (int)polys.size() - 1;
    if (l.is_zero()) throw std::domain_error("extend_by_operator: zero operator");

    int dmax_off = INT_MIN;
    for (int i = 0; i <= r; i++)
        for (int j = 0; j <= polys[i].degree(); j++)
            if (!K.is_zero(poly_coeff(K, polys[i], j))) dmax_off = std::max(dmax_off, i - j);

    Series<F> out = series_zero(K, n);
    for (size_t i = 0; i < seed.a.size() && (int)i <= n; i++) out.a[i] = seed.a[i];
    long start = (long)seed.a.size();
    if (start < dmax_off)
        throw std::domain_error("extend_by_operator: seed shorter than the recurrence window (need " +
                                std::to_string(dmax_off) + " terms)");

    auto ff = [&](long t, int i) {
        typename F::Elt v = K.one();
        for (int k = 0; k < i; k++) v = K.mul(v, K.from_int(t - k));
        return v;
    };

    for (long t = start; t <= n; t++) {
        long m = t - dmax_off;
        // lambda(m) multiplies y_t
        typename F::Elt lam = K.zero();
        typename F::Elt rest = K.zero();
        for (int i = 0; i <= r; i++) {
            for (int j = 0; j <= polys[i].degree(); j++) {
                auto a = poly_coeff(K, polys[i], j);
                if (K.is_zero(a)) continue;
                long idx = m + i - j;
                if (idx < 0 || idx > t) continue;
                auto f = K.mul(a, ff(m + i - j, i));
                if (idx == t) lam = K.add(lam, f);
                else rest = K.add(rest, K.mul(f, out.a[idx]));
            }
        }
        if (K.is_zero(lam)) {
            ExtendResult<F> res{series_truncate(K, out, (int)t - 1), t};
            return res;
        }
        out.a[t] = K.neg(K.div(rest, lam));
    }
    return ExtendResult<F>{out, std::nullopt};
}

template <class F>
Series<F> extend_by_operator(const F& K, const OreOp<F>& l, const Series<F>& seed, int n) {
    auto res = extend_by_operator_checked(K, l, seed, n);
    if (res.singular_index)
        throw std::domain_error("extend_by_operator: singular recurrence index at position " +
                                std::to_string(*res.singular_index));
    return res.s;
}

// Order bound for the annihilator of the diagonal of an n-variable rational
// function with denominator degree d; always an integer, < d^n.
inline mpz_class order_bound(int n, int d) {
    if (n < 1 || d < 1) throw std::invalid_argument("order_bound: need n, d >= 1");
    mpz_class dm1 = d - 1, t;
    mpz_pow_ui(t.get_mpz_t(), dm1.get_mpz_t(), n + 1);
    mpz_class s = (n % 2 == 0) ? mpz_class(t - dm1) : mpz_class(t + dm1);
    mpz_class q = s / d;
    return q;
}

// --- text format ---
// order=2; a0 = 3+x; a1 = -1+22*x; a2 = x*(1-11*x-x^2)
std::string ore_to_text(const QQ& K, const OreOp<QQ>& l);
OreOp<QQ> ore_from_text(const std::string& text);

} // namespace diaglab

#endif
